#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tightham/graph.hpp"

namespace tightham {

struct RobustCandidate {
  Graph base;
  VertexSet U;
  Graph R;
  std::vector<VertexSet> partition;  // sorted by (size desc, smallest vertex asc)
  std::vector<Vertex> peeled;        // W, in peel order
  std::vector<Vertex> split_peeled;  // vertices carried off by W' splits
  double mu = 0;
  double eta = 0;
  std::vector<std::string> trace;

  bool empty() const { return U.empty(); }
  // e_L(U, V \ U) recomputed from base
  long crossing_edges() const;
};

RobustCandidate extract_robust_subgraph(const Graph& L, double alpha);

enum class InseparableMode { exhaustive, sampled };

struct InseparableVerdict {
  enum class Status { proved, refuted, sampled_ok };
  Status status = Status::proved;
  bool degree_failure = false;
  Vertex low_vertex = -1;    // degree witness
  VertexSet cut;             // X side of a violating cut
  long cut_edges = 0;
  std::uint64_t cuts_checked = 0;
};

const char* to_string(InseparableVerdict::Status s);

// sampled mode tests `samples` random cuts plus greedy cuts grown from every vertex
InseparableVerdict check_inseparable(const Graph& g, double mu, InseparableMode mode, int samples = 64,
                                     std::uint64_t seed = 1);

struct RobustnessReport {
  double beta_observed = 0;
  int ell = 3;
  bool robust = false;
  bool partial = false;  // pair budget hit, sampled subset only
  std::uint64_t pairs_checked = 0;
  InseparableVerdict inseparable;
  long crossing_edges = 0;
  std::uint64_t intersection_pairs_checked = 0;
};

// min over ordered distinct pairs of count_paths(G,x,y,ell) / |V|^(ell-1)
RobustnessReport check_robust(const Graph& g, double beta, int ell, std::uint64_t pair_budget = 1'000'000,
                              std::uint64_t seed = 1);

struct IntersectionResult {
  enum class Verdict { pass, fail, hypotheses_unmet };
  long count = 0;
  Verdict verdict = Verdict::hypotheses_unmet;
};

const char* to_string(IntersectionResult::Verdict v);

// size and edge hypotheses of the intersection property
bool intersection_hypotheses(const RobustCandidate& r, double alpha, int n);

IntersectionResult intersection_check(const RobustCandidate& r1, const RobustCandidate& r2, double alpha, int n);

}  // namespace tightham
