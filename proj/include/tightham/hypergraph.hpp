#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tightham/graph.hpp"
#include "tightham/vertex_set.hpp"

namespace tightham {

struct Triple {
  Vertex a, b, c;  // a < b < c once normalized
  auto operator<=>(const Triple&) const = default;
};

Triple make_triple(Vertex x, Vertex y, Vertex z);

using OrderedPair = std::pair<Vertex, Vertex>;

inline std::size_t pair_id(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(v) * (v - 1) / 2 + u;
}

class Hypergraph3 {
 public:
  Hypergraph3() = default;
  // triples may be given in any vertex order; duplicates and bad vertices throw
  Hypergraph3(int n, std::vector<Triple> edges);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Triple>& edges() const { return edges_; }

  bool has_edge(Vertex x, Vertex y, Vertex z) const;
  // N_H(u,v)
  const VertexSet& pair_neighbors(Vertex u, Vertex v) const { return pair_index_[pair_id(u, v)]; }

  int degree(Vertex v) const;
  int pair_degree(Vertex u, Vertex v) const;
  Graph link_graph(Vertex v) const;

  // pair index rebuilt from the edge list matches
  bool consistent() const;

 private:
  int n_ = 0;
  std::vector<Triple> edges_;
  std::vector<VertexSet> pair_index_;
  std::vector<int> degree_;
};

Hypergraph3 complete_hypergraph(int n);

struct TightVerdict {
  enum class Failure { none, out_of_range, repeated_vertex, too_short, missing_edge };
  Failure failure = Failure::none;
  std::size_t position = 0;  // first offending window start / repeated index
  std::string detail;
  bool ok() const { return failure == Failure::none; }
  explicit operator bool() const { return ok(); }
};

TightVerdict validate_tight(const Hypergraph3& h, std::span<const Vertex> seq, bool as_cycle);

class TightPath {
 public:
  TightPath() = default;
  // throws PreconditionError when seq is not tight in h
  TightPath(const Hypergraph3& h, std::vector<Vertex> seq, bool is_cycle = false);

  const std::vector<Vertex>& seq() const { return seq_; }
  bool is_cycle() const { return is_cycle_; }
  bool empty() const { return seq_.empty(); }
  std::size_t size() const { return seq_.size(); }
  std::size_t length() const;
  OrderedPair start_pair() const { return {seq_.at(0), seq_.at(1)}; }
  OrderedPair end_pair() const { return {seq_.at(seq_.size() - 2), seq_.at(seq_.size() - 1)}; }
  VertexSet vertex_set(int n) const { return VertexSet::from(n, seq_); }

  bool operator==(const TightPath&) const = default;

 private:
  std::vector<Vertex> seq_;
  bool is_cycle_ = false;
};

}  // namespace tightham
