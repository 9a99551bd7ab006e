#include "tightham/constructions.hpp"

#include <algorithm>
#include <limits>

#include "tightham/errors.hpp"
#include "tightham/rng.hpp"

namespace tightham {

ExtremalKind parse_kind(const std::string& s) {
  if (s == "i") return ExtremalKind::i;
  if (s == "ii") return ExtremalKind::ii;
  if (s == "iii") return ExtremalKind::iii;
  throw PreconditionError("unknown extremal kind '" + s + "'");
}

std::string to_string(ExtremalKind k) {
  switch (k) {
    case ExtremalKind::i: return "i";
    case ExtremalKind::ii: return "ii";
    case ExtremalKind::iii: return "iii";
  }
  return "?";
}

ExtremalSpec extremal_spec(ExtremalKind kind, int n) {
  if (n < 7) throw PreconditionError("extremal examples need n >= 7, got " + std::to_string(n));
  int x = 0;
  switch (kind) {
    case ExtremalKind::i: x = (n + 1 + 2) / 3; break;   // ceil((n+1)/3)
    case ExtremalKind::ii: x = (2 * n + 2) / 3; break;  // ceil(2n/3)
    case ExtremalKind::iii: x = n / 3 - 1; break;
  }
  if (x < 1 || x >= n) throw PreconditionError("n too small for a proper part X");
  return {kind, n, x};
}

Hypergraph3 extremal_example(ExtremalKind kind, int n) {
  auto spec = extremal_spec(kind, n);
  const int x = spec.x_size;
  std::vector<Triple> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c) {
        int in_x = (a < x) + (b < x) + (c < x);
        bool keep = kind == ExtremalKind::iii ? in_x >= 1 : in_x != 2;
        if (keep) edges.push_back({a, b, c});
      }
  return Hypergraph3(n, std::move(edges));
}

Hypergraph3 random_hypergraph(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p must lie in [0,1]");
  if (n < 0) throw PreconditionError("negative vertex count");
  Rng rng(seed);
  std::vector<Triple> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (rng.bernoulli(p)) edges.push_back({a, b, c});
  return Hypergraph3(n, std::move(edges));
}

DegreeStats min_degrees(const Hypergraph3& h) {
  if (h.n() < 2) throw PreconditionError("min_degrees needs n >= 2");
  int d1 = std::numeric_limits<int>::max();
  int d2 = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < h.n(); ++v) {
    d1 = std::min(d1, h.degree(v));
    for (Vertex u = v + 1; u < h.n(); ++u) d2 = std::min(d2, h.pair_degree(u, v));
  }
  return {d1, d2};
}

}  // namespace tightham
