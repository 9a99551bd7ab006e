#include "tightham/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <string>

#include "tightham/errors.hpp"

namespace tightham {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget: return "budget";
  }
  return "?";
}

std::size_t ham_dp_table_bytes(int n) {
  if (n < 4) return 0;
  if (n > 40) return ~std::size_t{0};
  std::size_t words = (static_cast<std::size_t>(n) * n + 63) / 64;
  return (std::size_t{1} << (n - 1)) * words * sizeof(std::uint64_t);
}

// The cycle is anchored at vertex 0: every Hamiltonian cycle passes through it,
// so fixing 0 first and its successor s loses nothing.  States are
// (visited set without 0, last ordered pair).
HamSearchResult find_tight_ham_cycle(const Hypergraph3& h, const ExactOptions& opts) {
  HamSearchResult res;
  const int n = h.n();
  if (n < 4) return res;
  std::size_t bytes = ham_dp_table_bytes(n);
  if (n > 40 || bytes > opts.memory_budget_bytes) {
    res.status = SearchStatus::budget;
    return res;
  }
  const std::size_t words = (static_cast<std::size_t>(n) * n + 63) / 64;
  const std::uint32_t full = (std::uint32_t{1} << (n - 1)) - 1;
  auto bit = [](Vertex v) { return std::uint32_t{1} << (v - 1); };

  std::vector<std::uint64_t> nb(static_cast<std::size_t>(n) * n, 0);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      if (a != b) nb[a * n + b] = h.pair_neighbors(a, b).words()[0];

  std::vector<std::uint64_t> table((static_cast<std::size_t>(full) + 1) * words);
  auto row = [&](std::uint32_t mask) { return table.data() + static_cast<std::size_t>(mask) * words; };
  auto get = [&](std::uint32_t mask, int idx) { return (row(mask)[idx >> 6] >> (idx & 63)) & 1u; };
  auto put = [&](std::uint32_t mask, int idx) { row(mask)[idx >> 6] |= std::uint64_t{1} << (idx & 63); };

  for (Vertex s = 1; s < n; ++s) {
    if (h.pair_degree(0, s) == 0) continue;
    std::fill(table.begin(), table.end(), 0);
    put(bit(s), s);
    for (std::uint32_t mask = bit(s); mask <= full; ++mask) {
      if (!(mask & bit(s))) continue;
      if (mask == full) break;
      std::uint64_t visited = (static_cast<std::uint64_t>(mask) << 1) | 1u;
      auto* r = row(mask);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
          int idx = static_cast<int>(w * 64) + std::countr_zero(bits);
          bits &= bits - 1;
          ++res.states;
          int a = idx / n, b = idx % n;
          std::uint64_t cand = nb[a * n + b] & ~visited;
          while (cand) {
            int c = std::countr_zero(cand);
            cand &= cand - 1;
            put(mask | bit(c), b * n + c);
          }
        }
      }
    }
    // close: (p, q, 0) and (q, 0, s)
    auto* r = row(full);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        int idx = static_cast<int>(w * 64) + std::countr_zero(bits);
        bits &= bits - 1;
        int p = idx / n, q = idx % n;
        if (!h.has_edge(p, q, 0) || !h.has_edge(q, 0, s)) continue;
        std::vector<Vertex> back{q};
        std::uint32_t mask = full;
        int a = p, b = q;
        while (!(mask == bit(s) && a == 0 && b == s)) {
          std::uint32_t prev = mask & ~bit(b);
          std::uint64_t options = (static_cast<std::uint64_t>(prev) << 1) | 1u;
          int found = -1;
          while (options) {
            int o = std::countr_zero(options);
            options &= options - 1;
            if (o != a && get(prev, o * n + a) && h.has_edge(o, a, b)) {
              found = o;
              break;
            }
          }
          if (found < 0) throw std::logic_error("tight DP reconstruction lost its trail");
          mask = prev;
          b = a;
          a = found;
          back.push_back(b);
        }
        back.push_back(0);
        std::reverse(back.begin(), back.end());
        res.status = SearchStatus::found;
        res.cycle = TightPath(h, std::move(back), true);
        return res;
      }
    }
  }
  return res;
}

namespace {

struct Accumulator {
  BigCount total = 0;
  std::uint64_t part = 0;
  void add(std::uint64_t x) {
    if (part > (std::uint64_t{1} << 62)) {
      total += part;
      part = 0;
    }
    part += x;
  }
  BigCount value() const { return total + part; }
};

void check_in_range(int n, Vertex v) {
  if (v < 0 || v >= n) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
}

struct TightCounter {
  const Hypergraph3& h;
  int total_len;                  // number of positions = length + 2
  std::vector<Vertex> seq;        // -1 for free slots
  std::vector<char> fixed;
  VertexSet used;
  Accumulator acc;

  // all windows ending at p whose entries are assigned
  bool windows_ok(int p) const {
    for (int end = p; end <= std::min(p + 2, total_len - 1); ++end) {
      if (end < 2) continue;
      Vertex x = seq[end - 2], y = seq[end - 1], z = seq[end];
      if (x < 0 || y < 0 || z < 0) continue;
      if (!h.has_edge(x, y, z)) return false;
    }
    return true;
  }

  void dfs(int p) {
    while (p < total_len && fixed[p]) ++p;
    if (p == total_len) {
      acc.add(1);
      return;
    }
    // next free slot: candidates extend the window ending here
    VertexSet cand = h.pair_neighbors(seq[p - 2], seq[p - 1]) - used;
    int next_free = p + 1;
    while (next_free < total_len && fixed[next_free]) ++next_free;
    if (next_free == total_len && p + 2 < total_len && p + 1 < total_len) {
      // last free slot with both following slots fixed
      Vertex z = seq[p + 1], w = seq[p + 2];
      cand &= h.pair_neighbors(seq[p - 1], z);
      cand &= h.pair_neighbors(z, w);
      acc.add(static_cast<std::uint64_t>(cand.count()));
      return;
    }
    cand.for_each([&](Vertex c) {
      seq[p] = c;
      if (windows_ok(p)) {
        used.set(c);
        dfs(p + 1);
        used.reset(c);
      }
      seq[p] = -1;
    });
  }
};

}  // namespace

BigCount count_tight_paths(const Hypergraph3& h, OrderedPair start, OrderedPair end, int length, int cap) {
  if (length > cap) throw BudgetError("tight path length " + std::to_string(length) + " exceeds cap " + std::to_string(cap));
  if (length < 0) throw PreconditionError("negative length");
  const int n = h.n();
  for (Vertex v : {start.first, start.second, end.first, end.second}) check_in_range(n, v);
  if (start.first == start.second || end.first == end.second) throw PreconditionError("degenerate pair");
  const int total = length + 2;
  std::vector<Vertex> seq(total, -1);
  std::vector<char> fixed(total, 0);
  auto assign = [&](int p, Vertex v) {
    if (seq[p] >= 0 && seq[p] != v) return false;
    seq[p] = v;
    fixed[p] = 1;
    return true;
  };
  if (!assign(0, start.first) || !assign(1, start.second) || !assign(total - 2, end.first) ||
      !assign(total - 1, end.second))
    return 0;
  VertexSet used(n);
  for (int p = 0; p < total; ++p) {
    if (!fixed[p]) continue;
    // a vertex may only occupy one slot
    for (int q = 0; q < p; ++q)
      if (fixed[q] && seq[q] == seq[p] && q != p) return 0;
    used.set(seq[p]);
  }
  TightCounter tc{h, total, seq, fixed, used, {}};
  for (int p = 2; p < total; ++p)
    if (fixed[p] && fixed[p - 1] && fixed[p - 2] && !h.has_edge(seq[p - 2], seq[p - 1], seq[p])) return 0;
  tc.dfs(2);
  return tc.acc.value();
}

BigCount count_walks(const Graph& g, Vertex x, Vertex y, int len) {
  if (!g.has_vertex(x) || !g.has_vertex(y)) throw PreconditionError("walk endpoints outside vertex set");
  if (len < 0) throw PreconditionError("negative length");
  const int n = g.universe();
  std::vector<BigCount> cur(n, 0), next(n, 0);
  cur[x] = 1;
  for (int step = 0; step < len; ++step) {
    g.vertices().for_each([&](Vertex j) {
      BigCount s = 0;
      g.neighbors(j).for_each([&](Vertex i) { s += cur[i]; });
      next[j] = std::move(s);
    });
    std::swap(cur, next);
  }
  return cur[y];
}

namespace {

struct PathCounter {
  const Graph& g;
  Vertex target;
  int len;
  VertexSet used;
  Accumulator acc;

  void dfs(Vertex at, int depth) {
    // depth = edges placed so far; at is the current end
    if (depth == len - 1) {
      if (g.has_edge(at, target)) acc.add(1);
      return;
    }
    if (depth == len - 2) {
      acc.add(static_cast<std::uint64_t>((g.neighbors(at) & g.neighbors(target)).count() -
                                         (g.neighbors(at) & g.neighbors(target)).intersect_count(used)));
      return;
    }
    VertexSet cand = g.neighbors(at) - used;
    cand.for_each([&](Vertex c) {
      used.set(c);
      dfs(c, depth + 1);
      used.reset(c);
    });
  }
};

}  // namespace

BigCount count_paths(const Graph& g, Vertex x, Vertex y, int len, int cap) {
  if (len > cap) throw BudgetError("path length " + std::to_string(len) + " exceeds cap " + std::to_string(cap));
  if (len < 0) throw PreconditionError("negative length");
  if (!g.has_vertex(x) || !g.has_vertex(y)) throw PreconditionError("path endpoints outside vertex set");
  if (len == 0) return x == y ? 1 : 0;
  if (x == y) return 0;
  PathCounter pc{g, y, len, VertexSet(g.universe()), {}};
  pc.used.set(x);
  pc.used.set(y);
  pc.dfs(x, 0);
  return pc.acc.value();
}

namespace {

struct MatchingSearch {
  int n;
  std::vector<std::vector<std::uint32_t>> by_min;  // edges keyed by smallest vertex
  int best = 0;

  void run(std::uint32_t avail, int cur) {
    if (cur > best) best = cur;
    if (cur + std::popcount(avail) / 3 <= best) return;
    if (!avail) return;
    int v = std::countr_zero(avail);
    for (auto e : by_min[v])
      if ((e & avail) == e) run(avail & ~e, cur + 1);
    run(avail & ~(std::uint32_t{1} << v), cur);
  }
};

}  // namespace

MatchingResult max_matching_size(const Hypergraph3& h, int exact_cap) {
  MatchingResult res;
  const int n = h.n();
  // greedy lower bound
  VertexSet taken(n);
  for (const auto& e : h.edges()) {
    if (taken.test(e.a) || taken.test(e.b) || taken.test(e.c)) continue;
    taken.set(e.a);
    taken.set(e.b);
    taken.set(e.c);
    ++res.size;
  }
  if (n > exact_cap || n > 32) {
    res.exact = false;
    return res;
  }
  MatchingSearch ms{n, std::vector<std::vector<std::uint32_t>>(n), res.size};
  for (const auto& e : h.edges())
    ms.by_min[e.a].push_back((1u << e.a) | (1u << e.b) | (1u << e.c));
  std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
  ms.run(all, 0);
  res.size = ms.best;
  return res;
}

int longest_path(const Graph& g, int exact_cap) {
  auto verts = g.vertices().to_vector();
  const int k = static_cast<int>(verts.size());
  if (k > exact_cap || k > 30) throw BudgetError("longest_path exact cap exceeded (" + std::to_string(k) + " vertices)");
  if (k <= 1) return 0;
  std::vector<int> index(g.universe(), -1);
  for (int i = 0; i < k; ++i) index[verts[i]] = i;
  std::vector<std::uint32_t> adj(k, 0);
  for (int i = 0; i < k; ++i)
    g.neighbors(verts[i]).for_each([&](Vertex v) {
      if (index[v] >= 0) adj[i] |= 1u << index[v];
    });
  std::vector<std::uint32_t> reach(std::size_t{1} << k, 0);
  for (int i = 0; i < k; ++i) reach[std::size_t{1} << i] = 1u << i;
  int best = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    best = std::max(best, std::popcount(mask) - 1);
    if (best == k - 1) break;
    while (ends) {
      int last = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t nxt = adj[last] & ~mask;
      while (nxt) {
        int c = std::countr_zero(nxt);
        nxt &= nxt - 1;
        reach[mask | (1u << c)] |= 1u << c;
      }
    }
  }
  return best;
}

double fs_bound(double lambda, int n_vertices) {
  if (!(lambda > 0.5 && lambda <= 1.0)) throw PreconditionError("fs_bound needs 1/2 < lambda <= 1");
  double nn = static_cast<double>(n_vertices);
  return (lambda * lambda + (1 - lambda) * (1 - lambda)) * nn * nn / 2.0;
}

}  // namespace tightham
