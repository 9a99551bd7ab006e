#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "tightham/connect.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

struct ReservoirValidation {
  int attempted = 0;
  int succeeded = 0;
  double fraction = 0;
  std::string diagnosis;
};

struct Reservoir {
  VertexSet members;
  VertexSet used;
  double theta_star = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
  ReservoirValidation validation;

  VertexSet available() const { return members - used; }
};

// size window [theta*^2 n / 2, theta*^2 n]; min_size raises the lower end
Reservoir sample_reservoir(const Hypergraph3& h, double theta_star, int ell, std::uint64_t seed, int retries = 200,
                           std::optional<int> min_size = {});

ReservoirValidation validate_reservoir(const Hypergraph3& h, const RobustFamily& fam, const Reservoir& res,
                                       double zeta2, int ell, int sample, std::uint64_t seed,
                                       const ConnectOptions& search = {});

struct ReservoirUse {
  double zeta2 = 0.15;
  double theta_2star = 0.1;
  int ell = 3;
  std::optional<int> used_cap;  // default 2 theta**^2 n
  ConnectOptions search;
};

enum class ReservoirFailure { cap_exceeded, exhausted, depleted };

class ReservoirError : public std::runtime_error {
 public:
  ReservoirError(ReservoirFailure kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ReservoirFailure kind() const { return kind_; }

 private:
  ReservoirFailure kind_;
};

// connection whose internal vertices lie in members \ used; marks them used
TightPath connect_through_reservoir(const Hypergraph3& h, const RobustFamily& fam, Reservoir& res, OrderedPair start,
                                    OrderedPair end, const ReservoirUse& use);

}  // namespace tightham
