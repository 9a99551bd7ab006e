#include "tightham/connect.hpp"

#include <algorithm>
#include <numeric>

#include "tightham/errors.hpp"
#include "tightham/numeric.hpp"
#include "tightham/parallel.hpp"
#include "tightham/rng.hpp"

namespace tightham {

RobustFamily::RobustFamily(std::vector<Graph> graphs) : n_(static_cast<int>(graphs.size())), graphs_(std::move(graphs)) {
  const std::size_t pairs = n_ >= 2 ? static_cast<std::size_t>(n_) * (n_ - 1) / 2 : 0;
  holders_.assign(pairs, VertexSet(n_));
  for (Vertex v = 0; v < n_; ++v) {
    const Graph& r = graphs_[v];
    if (r.universe() != n_) throw PreconditionError("robust graph universe mismatch at vertex " + std::to_string(v));
    if (r.degree(v) != 0) throw PreconditionError("vertex " + std::to_string(v) + " has edges in its own robust graph");
    for (auto [x, y] : r.edge_list()) holders_[pair_id(x, y)].set(v);
  }
}

RobustFamily RobustFamily::from_hypergraph(const Hypergraph3& h, double alpha, std::vector<RobustCandidate>* candidates) {
  const int n = h.n();
  std::vector<RobustCandidate> all(n);
  parallel_for(n, [&](int v) { all[v] = extract_robust_subgraph(h.link_graph(v), alpha); });
  std::vector<Graph> graphs;
  graphs.reserve(n);
  for (auto& c : all) graphs.push_back(c.R);
  if (candidates) *candidates = std::move(all);
  return RobustFamily(std::move(graphs));
}

bool RobustFamily::connectable(Vertex x, Vertex y, double zeta) const {
  if (x == y) return false;
  return holder_count(x, y) >= ceil_count(zeta * n_);
}

bool RobustFamily::consistent() const {
  for (Vertex x = 0; x < n_; ++x)
    for (Vertex y = x + 1; y < n_; ++y) {
      VertexSet expect(n_);
      for (Vertex v = 0; v < n_; ++v)
        if (graphs_[v].has_edge(x, y)) expect.set(v);
      if (expect != holders(x, y) || expect.test(x) || expect.test(y)) return false;
    }
  return true;
}

std::vector<std::pair<Vertex, Vertex>> connectable_pairs(const RobustFamily& fam, double zeta) {
  if (!(zeta >= 0 && zeta <= 1)) throw PreconditionError("zeta must lie in [0,1]");
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex x = 0; x < fam.n(); ++x)
    for (Vertex y = x + 1; y < fam.n(); ++y)
      if (fam.connectable(x, y, zeta)) out.emplace_back(x, y);
  return out;
}

std::uint64_t count_bad_triples(const RobustFamily& fam, double zeta) {
  std::uint64_t total = 0;
  for (Vertex x = 0; x < fam.n(); ++x)
    for (Vertex y = x + 1; y < fam.n(); ++y)
      if (!fam.connectable(x, y, zeta)) total += 2 * static_cast<std::uint64_t>(fam.holder_count(x, y));
  return total;
}

const char* to_string(ConnectStatus s) {
  switch (s) {
    case ConnectStatus::found: return "found";
    case ConnectStatus::not_connectable: return "not-connectable";
    case ConnectStatus::exhausted: return "exhausted";
    case ConnectStatus::avoid_too_large: return "avoid-too-large";
  }
  return "?";
}

namespace {

struct Search {
  const Hypergraph3& h;
  const RobustFamily& fam;
  const int n;
  const int ell;
  const int need;  // (ell+1)/2 holders per side
  VertexSet allowed;
  Rng rng;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  bool spent() const { return nodes >= budget; }

  // R-path from `from` through ell-1 fresh vertices to `to`, all edges held by >= need
  // members of `pool` outside `used`; on success fills inner and survivors
  bool rpath(Vertex from, Vertex to, const VertexSet& pool, VertexSet& used, std::vector<Vertex>& inner,
             VertexSet& survivors) {
    ++nodes;
    if (spent()) return false;
    if (static_cast<int>(inner.size()) == ell - 1) {
      VertexSet last = pool & fam.holders(from, to);
      last -= used;
      if (last.count() < need) return false;
      survivors = std::move(last);
      return true;
    }
    VertexSet options = allowed - used;
    options.reset(to);
    std::vector<Vertex> order;
    options.for_each([&](Vertex r) {
      if ((pool & fam.holders(from, r)).count() - (pool & fam.holders(from, r)).intersect_count(used) >= need)
        order.push_back(r);
    });
    rng.shuffle(order);
    for (Vertex r : order) {
      VertexSet next = pool & fam.holders(from, r);
      used.set(r);
      inner.push_back(r);
      if (rpath(r, to, next, used, inner, survivors)) return true;
      inner.pop_back();
      used.reset(r);
      if (spent()) return false;
    }
    return false;
  }
};

}  // namespace

ConnectResult find_connecting_path(const Hypergraph3& h, const RobustFamily& fam, const ConnectRequest& req,
                                   const ConnectOptions& opts) {
  const int n = h.n();
  if (fam.n() != n) throw PreconditionError("robust family built for a different vertex count");
  if (req.ell < 3 || req.ell % 2 == 0) throw PreconditionError("ell must be odd and >= 3");
  auto [x, y] = req.start;
  auto [z, w] = req.end;
  for (Vertex v : {x, y, z, w})
    if (v < 0 || v >= n) throw PreconditionError("pair vertex out of range");
  if (x == y || z == w) throw PreconditionError("degenerate pair");
  if (x == z || x == w || y == z || y == w) throw PreconditionError("start and end pairs overlap");

  ConnectResult res;
  if (!fam.connectable(x, y, req.zeta) || !fam.connectable(z, w, req.zeta)) {
    res.status = ConnectStatus::not_connectable;
    return res;
  }
  const int ell = req.ell;
  const int need = (ell + 1) / 2;
  VertexSet allowed = VertexSet::full(n);
  if (req.avoid.universe() == n) allowed -= req.avoid;
  else if (req.avoid.universe() != 0) throw PreconditionError("avoid set universe mismatch");
  for (Vertex v : {x, y, z, w}) allowed.reset(v);
  if (allowed.count() < connecting_internal_vertices(ell)) {
    res.status = ConnectStatus::avoid_too_large;
    return res;
  }

  Search s{h, fam, n, ell, need, allowed, Rng(opts.seed), opts.budget};
  const VertexSet uxy = fam.holders(x, y) & allowed;
  const VertexSet uzw = fam.holders(z, w) & allowed;
  const int t = std::max<int>(static_cast<int>(ceil_count(req.zeta * n)), need);
  std::vector<int> cnt(static_cast<std::size_t>(n) * n, 0);

  while (!s.spent()) {
    ++res.rounds;
    ++s.nodes;
    auto ulist = s.rng.sample(uxy, t);
    auto vlist = s.rng.sample(uzw, t);
    const int lists = static_cast<int>(std::min(ulist.size(), vlist.size()));
    if (lists < need) break;
    std::fill(cnt.begin(), cnt.end(), 0);
    for (int i = 0; i < lists; ++i) {
      const Graph& ru = fam.robust_graph(ulist[i]);
      const Graph& rv = fam.robust_graph(vlist[i]);
      allowed.for_each([&](Vertex a) {
        ((ru.neighbors(a) & rv.neighbors(a)) & allowed).for_each([&](Vertex b) { ++cnt[a * n + b]; });
      });
      s.nodes += static_cast<std::uint64_t>(allowed.count());
    }
    std::vector<int> middles;
    for (int id = 0; id < n * n; ++id)
      if (cnt[id] > 0) middles.push_back(id);
    std::stable_sort(middles.begin(), middles.end(), [&](int p, int q) { return cnt[p] > cnt[q]; });
    if (static_cast<int>(middles.size()) > opts.middle_pairs_per_round) middles.resize(opts.middle_pairs_per_round);

    for (int id : middles) {
      if (s.spent()) break;
      const Vertex a = id / n, b = id % n;
      VertexSet ucand(n), vcand(n);
      for (int i = 0; i < lists; ++i) {
        if (fam.robust_graph(ulist[i]).has_edge(a, b) && fam.robust_graph(vlist[i]).has_edge(a, b)) {
          ucand.set(ulist[i]);
          vcand.set(vlist[i]);
        }
      }
      for (Vertex v : {a, b}) {
        ucand.reset(v);
        vcand.reset(v);
      }
      if (ucand.count() < need || vcand.count() < need) continue;

      VertexSet used(n);
      used.set(a);
      used.set(b);
      std::vector<Vertex> left, right;
      VertexSet left_surv(n), right_surv(n);
      if (!s.rpath(y, a, ucand, used, left, left_surv)) continue;
      // prefer u's the right side cannot use anyway
      std::vector<Vertex> upick;
      for (int pass = 0; pass < 2 && static_cast<int>(upick.size()) < need; ++pass) {
        auto pool = s.rng.sample(pass == 0 ? (left_surv - vcand) : left_surv, need);
        for (Vertex u : pool)
          if (static_cast<int>(upick.size()) < need &&
              std::find(upick.begin(), upick.end(), u) == upick.end())
            upick.push_back(u);
      }
      for (Vertex u : upick) used.set(u);
      if (!s.rpath(b, z, vcand - used, used, right, right_surv)) continue;
      auto vpick = s.rng.sample(right_surv - used, need);
      if (static_cast<int>(vpick.size()) < need) continue;

      // x y u1 r1 r2 u2 ... a b v1 s1 s2 v2 ... z w
      std::vector<Vertex> seq{x, y};
      for (int k = 0; k < need; ++k) {
        seq.push_back(upick[k]);
        if (2 * k < ell - 1) {
          seq.push_back(left[2 * k]);
          seq.push_back(left[2 * k + 1]);
        }
      }
      seq.push_back(a);
      seq.push_back(b);
      for (int k = 0; k < need; ++k) {
        seq.push_back(vpick[k]);
        if (2 * k < ell - 1) {
          seq.push_back(right[2 * k]);
          seq.push_back(right[2 * k + 1]);
        }
      }
      seq.push_back(z);
      seq.push_back(w);
      res.path = TightPath(h, std::move(seq));
      res.status = ConnectStatus::found;
      res.nodes = s.nodes;
      return res;
    }
  }
  res.nodes = s.nodes;
  res.status = ConnectStatus::exhausted;
  return res;
}

}  // namespace tightham
