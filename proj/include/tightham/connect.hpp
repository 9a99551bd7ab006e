#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tightham/graph.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/robust.hpp"

namespace tightham {

// the robust graphs R_v of all vertices plus the pair index U_xy = {v : xy in R_v}
class RobustFamily {
 public:
  RobustFamily() = default;
  explicit RobustFamily(std::vector<Graph> graphs);

  // extracts R_v from every link graph; candidates are kept if requested
  static RobustFamily from_hypergraph(const Hypergraph3& h, double alpha,
                                      std::vector<RobustCandidate>* candidates = nullptr);

  int n() const { return n_; }
  const Graph& robust_graph(Vertex v) const { return graphs_.at(v); }
  const VertexSet& holders(Vertex x, Vertex y) const { return holders_[pair_id(x, y)]; }
  int holder_count(Vertex x, Vertex y) const { return holders(x, y).count(); }
  // |U_xy| >= zeta * n
  bool connectable(Vertex x, Vertex y, double zeta) const;

  // holders rebuilt from the graphs match
  bool consistent() const;

 private:
  int n_ = 0;
  std::vector<Graph> graphs_;
  std::vector<VertexSet> holders_;
};

std::vector<std::pair<Vertex, Vertex>> connectable_pairs(const RobustFamily& fam, double zeta);

// ordered (x,y,z) with xy in R_z and xy not zeta-connectable
std::uint64_t count_bad_triples(const RobustFamily& fam, double zeta);

struct ConnectRequest {
  OrderedPair start;
  OrderedPair end;
  double zeta = 0;
  VertexSet avoid;  // empty universe means nothing avoided
  int ell = 3;
};

struct ConnectOptions {
  std::uint64_t budget = 200'000;  // search nodes
  std::uint64_t seed = 1;
  int middle_pairs_per_round = 48;
};

enum class ConnectStatus { found, not_connectable, exhausted, avoid_too_large };

const char* to_string(ConnectStatus s);

struct ConnectResult {
  ConnectStatus status = ConnectStatus::exhausted;
  std::optional<TightPath> path;
  std::uint64_t nodes = 0;
  int rounds = 0;
};

inline int connecting_internal_vertices(int ell) { return 3 * ell + 1; }

// tight (x,y)-(z,w) path with 3(ell+1) edges and internal vertices outside avoid
ConnectResult find_connecting_path(const Hypergraph3& h, const RobustFamily& fam, const ConnectRequest& req,
                                   const ConnectOptions& opts = {});

}  // namespace tightham
