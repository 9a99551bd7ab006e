#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tightham/hypergraph.hpp"
#include "tightham/longpath.hpp"

namespace tightham {

// what a candidate observer needs to re-check a candidate on its own
struct ObservedCandidate {
  const Candidate& candidate;
  const VertexSet& reservoir;
  const CandidateRules& rules;
};

struct PipelineConfig {
  LongPathMode mode = LongPathMode::desk;
  double alpha = 0.2;
  double beta = 0.01;  // reported only
  int ell = 3;
  double zeta_star = 0.25;
  double zeta_2star = 0.15;
  double theta_star = 0.6;
  double theta_2star = 0.1;
  int M = 2;
  int m = 3;
  int min_n = 40;
  std::optional<int> max_tuples;     // default: largest k with |P_A| <= theta* n
  std::optional<int> reservoir_keep; // desk: members kept after sampling, default 2(3l+1) + k
  int attempts = 3;
  int close_retries = 6;
  std::uint64_t connect_budget = 200'000;
  std::uint64_t longpath_budget = 2'000'000;
  std::uint64_t absorber_budget = 200'000;
  std::uint64_t society_budget = 2'000;
  std::uint64_t seed = 1;
  std::function<void(const ObservedCandidate&)> candidate_observer;
};

// throws PreconditionError naming the first violated rule
void validate_config(const PipelineConfig& cfg, int n);

struct StageReport {
  std::string stage;
  double elapsed_ms = 0;
  std::map<std::string, double> counters;
  std::string note;
};

struct Certificate {
  bool checked = false;
  bool accepted = false;
  std::string detail;
};

// shares nothing with the construction: sorted edge list and binary search only
Certificate certify_cycle(const Hypergraph3& h, const std::vector<Vertex>& cycle);

struct HamResult {
  enum class Outcome { cycle, stage_failure };
  Outcome outcome = Outcome::stage_failure;
  std::vector<Vertex> cycle;
  std::string failed_stage;
  std::string diagnosis;
  std::vector<StageReport> stages;
  Certificate certificate;
  int attempts = 0;

  bool ok() const { return outcome == Outcome::cycle && certificate.accepted; }
};

HamResult run_pipeline(const Hypergraph3& h, const PipelineConfig& cfg);

// stable JSON schema; timings are left out when with_timing is false
std::string to_json(const HamResult& r, bool with_timing = true);

}  // namespace tightham
