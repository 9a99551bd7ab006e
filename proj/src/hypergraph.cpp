#include "tightham/hypergraph.hpp"

#include <algorithm>

#include "tightham/errors.hpp"

namespace tightham {

namespace {

std::string vstr(Vertex v) { return std::to_string(v); }

void check_vertex(int n, Vertex v) {
  if (v < 0 || v >= n) throw PreconditionError("vertex " + vstr(v) + " out of range for n=" + vstr(n));
}

}  // namespace

Triple make_triple(Vertex x, Vertex y, Vertex z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return {x, y, z};
}

Hypergraph3::Hypergraph3(int n, std::vector<Triple> edges)
    : n_(n), edges_(std::move(edges)), degree_(n, 0) {
  if (n < 0) throw PreconditionError("negative vertex count");
  for (auto& e : edges_) {
    e = make_triple(e.a, e.b, e.c);
    check_vertex(n, e.a);
    check_vertex(n, e.c);
    if (e.a == e.b || e.b == e.c)
      throw PreconditionError("triple with repeated vertex {" + vstr(e.a) + "," + vstr(e.b) + "," + vstr(e.c) + "}");
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw PreconditionError("duplicate triple {" + vstr(dup->a) + "," + vstr(dup->b) + "," + vstr(dup->c) + "}");

  std::size_t pairs = n >= 2 ? static_cast<std::size_t>(n) * (n - 1) / 2 : 0;
  pair_index_.assign(pairs, VertexSet(n));
  for (const auto& e : edges_) {
    pair_index_[pair_id(e.a, e.b)].set(e.c);
    pair_index_[pair_id(e.a, e.c)].set(e.b);
    pair_index_[pair_id(e.b, e.c)].set(e.a);
    ++degree_[e.a];
    ++degree_[e.b];
    ++degree_[e.c];
  }
}

bool Hypergraph3::has_edge(Vertex x, Vertex y, Vertex z) const {
  if (x < 0 || y < 0 || z < 0 || x >= n_ || y >= n_ || z >= n_) return false;
  if (x == y || y == z || x == z) return false;
  return pair_index_[pair_id(x, y)].test(z);
}

int Hypergraph3::degree(Vertex v) const {
  check_vertex(n_, v);
  return degree_[v];
}

int Hypergraph3::pair_degree(Vertex u, Vertex v) const {
  check_vertex(n_, u);
  check_vertex(n_, v);
  if (u == v) throw PreconditionError("pair degree of identical vertices " + vstr(u));
  return pair_index_[pair_id(u, v)].count();
}

Graph Hypergraph3::link_graph(Vertex v) const {
  check_vertex(n_, v);
  Graph g(n_);
  for (Vertex u = 0; u < n_; ++u) {
    if (u == v) continue;
    pair_neighbors(u, v).for_each([&](Vertex w) {
      if (u < w) g.add_edge(u, w);
    });
  }
  return g;
}

bool Hypergraph3::consistent() const {
  std::size_t pairs = n_ >= 2 ? static_cast<std::size_t>(n_) * (n_ - 1) / 2 : 0;
  std::vector<VertexSet> rebuilt(pairs, VertexSet(n_));
  std::vector<int> deg(n_, 0);
  for (const auto& e : edges_) {
    rebuilt[pair_id(e.a, e.b)].set(e.c);
    rebuilt[pair_id(e.a, e.c)].set(e.b);
    rebuilt[pair_id(e.b, e.c)].set(e.a);
    ++deg[e.a];
    ++deg[e.b];
    ++deg[e.c];
  }
  return rebuilt == pair_index_ && deg == degree_;
}

Hypergraph3 complete_hypergraph(int n) {
  std::vector<Triple> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c) e.push_back({a, b, c});
  return Hypergraph3(n, std::move(e));
}

TightVerdict validate_tight(const Hypergraph3& h, std::span<const Vertex> seq, bool as_cycle) {
  TightVerdict out;
  const int n = h.n();
  VertexSet seen(n);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 0 || seq[i] >= n) {
      out.failure = TightVerdict::Failure::out_of_range;
      out.position = i;
      out.detail = "vertex " + vstr(seq[i]) + " at index " + std::to_string(i) + " out of range";
      return out;
    }
    if (seen.test(seq[i])) {
      out.failure = TightVerdict::Failure::repeated_vertex;
      out.position = i;
      out.detail = "vertex " + vstr(seq[i]) + " repeated at index " + std::to_string(i);
      return out;
    }
    seen.set(seq[i]);
  }
  const std::size_t k = seq.size();
  if (as_cycle && k < 4) {
    out.failure = TightVerdict::Failure::too_short;
    out.detail = "cycle needs at least 4 vertices, got " + std::to_string(k);
    return out;
  }
  std::size_t windows = as_cycle ? k : (k >= 3 ? k - 2 : 0);
  for (std::size_t i = 0; i < windows; ++i) {
    Vertex x = seq[i], y = seq[(i + 1) % k], z = seq[(i + 2) % k];
    if (!h.has_edge(x, y, z)) {
      out.failure = TightVerdict::Failure::missing_edge;
      out.position = i;
      out.detail = "window " + std::to_string(i) + " (" + vstr(x) + "," + vstr(y) + "," + vstr(z) + ") is not an edge";
      return out;
    }
  }
  return out;
}

TightPath::TightPath(const Hypergraph3& h, std::vector<Vertex> seq, bool is_cycle)
    : seq_(std::move(seq)), is_cycle_(is_cycle) {
  auto verdict = validate_tight(h, seq_, is_cycle_);
  if (!verdict) throw PreconditionError("not a tight " + std::string(is_cycle ? "cycle" : "path") + ": " + verdict.detail);
}

std::size_t TightPath::length() const {
  if (is_cycle_) return seq_.size();
  return seq_.size() >= 2 ? seq_.size() - 2 : 0;
}

}  // namespace tightham
