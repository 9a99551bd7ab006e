#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tightham/connect.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/reservoir.hpp"

namespace tightham {

struct Candidate {
  std::vector<std::vector<Vertex>> pieces;  // in order along Q
  TightPath Q;
  int reservoir_usage = 0;
};

struct CandidateRules {
  int M = 2;
  double alpha = 0.2;
  int ell = 3;
  double zeta2 = 0.15;
  VertexSet hat;  // vertices of H - V(P_A); empty universe means all
};

struct CandidateCheck {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

// piece library membership: M vertices, tight, outside the reservoir, connectable end pairs
bool is_piece(const Hypergraph3& h, const RobustFamily& fam, const std::vector<Vertex>& piece, const VertexSet& reservoir,
              const CandidateRules& rules);

// conditions (a)-(d) plus piece membership and disjointness
CandidateCheck check_candidate(const Hypergraph3& h, const RobustFamily& fam, const Candidate& c,
                               const VertexSet& reservoir, const CandidateRules& rules);

struct FilteredLinks {
  std::vector<Graph> filtered;  // R_u without non-connectable edges
  VertexSet bad;                // e(filtered) <= e(R_u) - alpha n^2 / 8
  std::vector<long> removed;
};

FilteredLinks filter_connectable_links(const RobustFamily& fam, double zeta2, double alpha);

struct SocietyContext {
  std::vector<VertexSet> blocks;
  int piece_blocks = 0;  // the first blocks are the pieces of the candidate
  int M = 0;
  int m = 0;
  int n = 0;
  VertexSet U;
  VertexSet U_bad;
  std::vector<Graph> filtered;
  std::vector<double> eta;
};

// blocks are the candidate's pieces followed by U in vertex-id order cut into M-sets
SocietyContext build_society_context(const Candidate& cand, const VertexSet& hat, const VertexSet& reservoir,
                                     const FilteredLinks& links, const RobustFamily& fam, int M, int m);

bool useful_for(const VertexSet& S, Vertex u, const SocietyContext& ctx, double alpha);

struct SocietyChoice {
  std::vector<int> block_ids;
  VertexSet S;
  VertexSet useful;  // U'
};

// density: required |U'| / |U \ U_bad|
std::optional<SocietyChoice> find_useful_society(const SocietyContext& ctx, double alpha, std::uint64_t sample_budget,
                                                 std::uint64_t seed, std::optional<double> density = {});

// simple path on needed_len vertices in the intersection of filtered graphs of U2, induced on S
std::optional<std::vector<Vertex>> common_connectable_path(const VertexSet& U2, const VertexSet& S,
                                                           const SocietyContext& ctx, int needed_len,
                                                           std::uint64_t budget = 200'000, std::uint64_t seed = 1);

struct SharedPath {
  std::vector<Vertex> W;
  VertexSet sharing;  // U''
};

// grows U'' inside candidates while a common path of needed_len survives
std::optional<SharedPath> select_sharing_group(const VertexSet& candidates, const VertexSet& S,
                                               const SocietyContext& ctx, int needed_len, int want,
                                               std::uint64_t budget, std::uint64_t seed);

// T = w1 w2 u1 w3 w4 u2 ...
std::vector<Vertex> interleave_path(const std::vector<Vertex>& W, const std::vector<Vertex>& U2);

enum class LongPathMode { desk, faithful };

struct LongPathConfig {
  LongPathMode mode = LongPathMode::desk;
  int M = 2;
  int m = 3;
  double alpha = 0.2;
  int ell = 3;
  double zeta2 = 0.15;
  double theta_star = 0.6;
  double theta_2star = 0.1;
  std::optional<int> leftover_cap;        // default max(theta*^2 n, 6)
  std::optional<int> reservoir_use_cap;   // |V(Q) cap R|; default theta**^2 n
  int reserve_for_closing = 0;            // reservoir vertices Q must leave untouched
  std::uint64_t budget = 2'000'000;
  std::uint64_t society_budget = 2'000;
  std::optional<double> society_density;
  std::uint64_t seed = 1;
  ConnectOptions search;
  std::function<void(const Candidate&)> observer;
};

struct AugmentResult {
  Candidate candidate;
  bool changed = false;
  std::string failure;
};

AugmentResult augment_candidate(const Candidate& cand, const SocietyContext& ctx, const Hypergraph3& h,
                                const RobustFamily& fam, Reservoir& res, const LongPathConfig& cfg,
                                const VertexSet& hat);

struct LongPathResult {
  bool ok = false;
  Candidate candidate;
  int uncovered = 0;
  int leftover_cap = 0;
  int reservoir_use_cap = 0;
  bool cond_uncovered = false;   // |hat \ (R u Q)| <= cap
  bool cond_reservoir = false;   // |V(Q) cap R| <= cap
  bool cond_ends = false;        // end pairs connectable
  int augmentations = 0;
  std::string failure;
};

LongPathResult build_long_path(const Hypergraph3& h, const VertexSet& hat, const RobustFamily& fam, Reservoir& res,
                               const LongPathConfig& cfg);

}  // namespace tightham
