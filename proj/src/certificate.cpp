#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "tightham/pipeline.hpp"

namespace tightham {

Certificate certify_cycle(const Hypergraph3& h, const std::vector<Vertex>& cycle) {
  Certificate c;
  c.checked = true;
  const int n = h.n();
  auto reject = [&](std::string why) {
    c.accepted = false;
    c.detail = std::move(why);
    return c;
  };
  if (static_cast<int>(cycle.size()) != n) return reject("cycle has " + std::to_string(cycle.size()) + " vertices, n = " + std::to_string(n));
  if (n < 4) return reject("fewer than four vertices");
  std::vector<char> seen(n, 0);
  for (Vertex v : cycle) {
    if (v < 0 || v >= n) return reject("vertex " + std::to_string(v) + " out of range");
    if (seen[v]) return reject("vertex " + std::to_string(v) + " repeated");
    seen[v] = 1;
  }
  std::vector<std::array<int, 3>> edges;
  edges.reserve(h.edges().size());
  for (const auto& e : h.edges()) {
    std::array<int, 3> t{e.a, e.b, e.c};
    std::sort(t.begin(), t.end());
    edges.push_back(t);
  }
  std::sort(edges.begin(), edges.end());
  for (int i = 0; i < n; ++i) {
    std::array<int, 3> w{cycle[i], cycle[(i + 1) % n], cycle[(i + 2) % n]};
    std::sort(w.begin(), w.end());
    if (!std::binary_search(edges.begin(), edges.end(), w))
      return reject("window at " + std::to_string(i) + " is not an edge");
  }
  c.accepted = true;
  c.detail = "ok";
  return c;
}

}  // namespace tightham
