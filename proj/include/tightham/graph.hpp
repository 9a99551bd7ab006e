#pragma once

#include <utility>
#include <vector>

#include "tightham/vertex_set.hpp"

namespace tightham {

// simple graph on a subset of 0..n-1
class Graph {
 public:
  Graph() = default;
  // all of 0..n-1 as vertices, no edges
  explicit Graph(int n);
  Graph(int n, VertexSet vertices);

  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);
  static Graph complete(int n);

  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  int universe() const { return n_; }
  int order() const { return vertices_.count(); }
  const VertexSet& vertices() const { return vertices_; }
  bool has_vertex(Vertex v) const { return vertices_.contains(v); }
  bool has_edge(Vertex u, Vertex v) const;
  const VertexSet& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return adj_[v].count(); }
  long edge_count() const { return edges_; }
  int min_degree() const;

  Graph induced(const VertexSet& keep) const;
  // e(A) and e(A,B) for disjoint A, B
  long edges_within(const VertexSet& a) const;
  long edges_between(const VertexSet& a, const VertexSet& b) const;

  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

  bool operator==(const Graph& o) const = default;

 private:
  int n_ = 0;
  VertexSet vertices_;
  std::vector<VertexSet> adj_;
  long edges_ = 0;
};

}  // namespace tightham
