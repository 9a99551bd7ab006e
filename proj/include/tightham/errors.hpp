#pragma once

#include <stdexcept>
#include <string>

namespace tightham {

// bad arguments to a library call
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// malformed files
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a search ran out of its configured budget
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a pipeline stage could not produce its object
class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace tightham
