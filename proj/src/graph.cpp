#include "tightham/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tightham/errors.hpp"

namespace tightham {

Graph::Graph(int n) : Graph(n, VertexSet::full(n)) {}

Graph::Graph(int n, VertexSet vertices) : n_(n), vertices_(std::move(vertices)), adj_(n, VertexSet(n)) {
  if (n < 0) throw PreconditionError("negative universe");
  if (vertices_.universe() != n) throw PreconditionError("vertex set universe mismatch");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(Vertex u, Vertex v) {
  if (u == v) throw PreconditionError("self-loop at " + std::to_string(u));
  if (!has_vertex(u) || !has_vertex(v))
    throw PreconditionError("edge " + std::to_string(u) + "-" + std::to_string(v) + " outside vertex set");
  if (adj_[u].test(v)) return;
  adj_[u].set(v);
  adj_[v].set(u);
  ++edges_;
}

void Graph::remove_edge(Vertex u, Vertex v) {
  if (!has_edge(u, v)) return;
  adj_[u].reset(v);
  adj_[v].reset(u);
  --edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return adj_[u].test(v);
}

int Graph::min_degree() const {
  int best = std::numeric_limits<int>::max();
  vertices_.for_each([&](Vertex v) { best = std::min(best, degree(v)); });
  return vertices_.empty() ? 0 : best;
}

Graph Graph::induced(const VertexSet& keep) const {
  Graph g(n_, vertices_ & keep);
  g.vertices_.for_each([&](Vertex v) {
    g.adj_[v] = adj_[v] & g.vertices_;
    g.edges_ += g.adj_[v].count();
  });
  g.edges_ /= 2;
  return g;
}

long Graph::edges_within(const VertexSet& a) const {
  long twice = 0;
  a.for_each([&](Vertex v) { twice += adj_[v].intersect_count(a); });
  return twice / 2;
}

long Graph::edges_between(const VertexSet& a, const VertexSet& b) const {
  long total = 0;
  a.for_each([&](Vertex v) { total += adj_[v].intersect_count(b); });
  return total;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  vertices_.for_each([&](Vertex u) {
    adj_[u].for_each([&](Vertex v) {
      if (u < v) out.emplace_back(u, v);
    });
  });
  return out;
}

}  // namespace tightham
