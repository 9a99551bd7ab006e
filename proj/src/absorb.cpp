#include "tightham/absorb.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "tightham/errors.hpp"
#include "tightham/numeric.hpp"
#include "tightham/rng.hpp"

namespace tightham {

namespace {

constexpr double central_limit = 28.0 / 5.0;

std::vector<VertexSet> connectable_neighbors(const RobustFamily& fam, double zeta) {
  const int n = fam.n();
  std::vector<VertexSet> out(n, VertexSet(n));
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      if (fam.connectable(x, y, zeta)) {
        out[x].set(y);
        out[y].set(x);
      }
  return out;
}

bool all_distinct(const std::vector<Vertex>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i] == vs[j]) return false;
  return true;
}

std::vector<Vertex> shuffled(const VertexSet& s, Rng& rng) {
  auto v = s.to_vector();
  rng.shuffle(v);
  return v;
}

}  // namespace

bool is_v_absorber(const Hypergraph3& h, const RobustFamily& fam, const AbsorberTuple& t, Vertex v, double zeta_star) {
  const int n = h.n();
  auto arr = t.as_array();
  std::vector<Vertex> all(arr.begin(), arr.end());
  all.push_back(v);
  for (Vertex u : all)
    if (u < 0 || u >= n) return false;
  if (!all_distinct(all)) return false;
  const Vertex a = t.a, b = t.b, c = t.c, d = t.d, z = t.z, x = t.x, y = t.y, y2 = t.y2, x2 = t.x2;
  const Triple need[] = {make_triple(z, a, b),  make_triple(z, b, c),  make_triple(z, c, d),
                         make_triple(z, x, y),  make_triple(z, y, y2), make_triple(z, y2, x2),
                         make_triple(x, y, y2), make_triple(y, y2, x2), make_triple(v, a, b),
                         make_triple(v, b, c),  make_triple(v, c, d)};
  // binary search in the sorted edge list rather than the pair index
  const auto& edges = h.edges();
  for (const auto& e : need)
    if (!std::binary_search(edges.begin(), edges.end(), e)) return false;
  const long threshold = ceil_count(zeta_star * n);
  for (auto [p, q] : {std::pair{a, b}, std::pair{c, d}, std::pair{x, y}, std::pair{y2, x2}}) {
    int holders = 0;
    for (Vertex u = 0; u < n; ++u)
      if (fam.robust_graph(u).has_edge(p, q)) ++holders;
    if (holders < threshold) return false;
  }
  return true;
}

bool satisfies_family_conditions(const Hypergraph3& h, const RobustFamily& fam, const AbsorberTuple& t,
                                 double zeta_star) {
  auto arr = t.as_array();
  std::vector<Vertex> all(arr.begin(), arr.end());
  for (Vertex u : all)
    if (u < 0 || u >= h.n()) return false;
  if (!all_distinct(all)) return false;
  if (!h.has_edge(t.a, t.b, t.z) || !h.has_edge(t.b, t.z, t.c) || !h.has_edge(t.z, t.c, t.d) ||
      !h.has_edge(t.x, t.y, t.y2) || !h.has_edge(t.y, t.y2, t.x2))
    return false;
  return fam.connectable(t.a, t.b, zeta_star) && fam.connectable(t.c, t.d, zeta_star) &&
         fam.connectable(t.x, t.y, zeta_star) && fam.connectable(t.y2, t.x2, zeta_star);
}

double f_value(const Hypergraph3& h, const Triple& e) {
  if (!h.has_edge(e.a, e.b, e.c)) throw PreconditionError("f_value of a non-edge");
  const double n = h.n();
  return n / h.pair_degree(e.a, e.b) + n / h.pair_degree(e.a, e.c) + n / h.pair_degree(e.b, e.c);
}

bool is_central(const Hypergraph3& h, const Triple& e) { return f_value(h, e) <= central_limit + 1e-12; }

std::vector<Triple> central_edges(const Hypergraph3& h) {
  std::vector<Triple> out;
  for (const auto& e : h.edges())
    if (is_central(h, e)) out.push_back(e);
  return out;
}

QuintupleSearch find_central_quintuples(const Hypergraph3& h, std::size_t limit) {
  QuintupleSearch res;
  const int n = h.n();
  if (n < 5) return res;
  int delta = n;
  delta = h.degree(0);
  for (Vertex v = 1; v < n; ++v) delta = std::min(delta, h.degree(v));
  res.degree_hypothesis_met = delta >= (6.0 / 11.0) * n * n / 2.0;
  for (const auto& e : h.edges()) {
    if (res.quintuples.size() >= limit) break;
    if (!is_central(h, e)) continue;
    // label so that d(y,y') >= d(y,z) >= d(y',z), ties by vertex id
    const Vertex vs[3] = {e.a, e.b, e.c};
    int best = -1;
    Vertex y = -1, y2 = -1, z = -1;
    for (int k = 0; k < 3; ++k) {
      Vertex p = vs[(k + 1) % 3], q = vs[(k + 2) % 3];
      int d = h.pair_degree(p, q);
      if (d > best) {
        best = d;
        z = vs[k];
        y = std::min(p, q);
        y2 = std::max(p, q);
      }
    }
    if (h.pair_degree(y2, z) > h.pair_degree(y, z)) std::swap(y, y2);
    if (!(h.pair_degree(y, z) > 5.0 * n / 12.0)) continue;
    VertexSet xs = h.pair_neighbors(y, z) & h.pair_neighbors(y, y2);
    VertexSet x2s = h.pair_neighbors(y2, z) & h.pair_neighbors(y, y2);
    xs.for_each([&](Vertex x) {
      x2s.for_each([&](Vertex x2) {
        if (res.quintuples.size() >= limit || x == x2) return;
        res.quintuples.push_back({x, y, y2, x2, z});
      });
    });
  }
  return res;
}

AbsorbableIndex absorbable_index(const Hypergraph3& h, const RobustFamily& fam, double zeta_star, double frac) {
  if (!(frac > 0 && frac <= 1)) throw PreconditionError("frac must lie in (0,1]");
  const int n = h.n();
  AbsorbableIndex idx;
  idx.vertices = VertexSet(n);
  idx.counts.assign(n, 0);
  idx.zeta_star = zeta_star;
  idx.frac = frac;
  auto conn = connectable_neighbors(fam, zeta_star);
  const double nn = n;
  const double threshold = frac * nn * nn * nn * nn;
  for (Vertex z = 0; z < n; ++z) {
    std::uint64_t total = 0;
    for (Vertex y = 0; y < n; ++y) {
      if (y == z) continue;
      const VertexSet& nyz = h.pair_neighbors(y, z);
      VertexSet ay = nyz & conn[y];
      nyz.for_each([&](Vertex y2) {
        const VertexSet& nyy = h.pair_neighbors(y, y2);
        std::uint64_t a = ay.intersect_count(nyy);
        if (!a) return;
        std::uint64_t b = h.pair_neighbors(y2, z).intersect_count(nyy, conn[y2]);
        total += a * b;
      });
    }
    idx.counts[z] = total;
    if (total > 0 && static_cast<double>(total) >= threshold - 1e-9) idx.vertices.set(z);
  }
  return idx;
}

VertexSet absorbable_vertices(const Hypergraph3& h, const RobustFamily& fam, double zeta_star, double frac) {
  return absorbable_index(h, fam, zeta_star, frac).vertices;
}

namespace {

std::vector<Quadruple> witnesses(const Hypergraph3& h, const std::vector<VertexSet>& conn, Vertex z,
                                 const VertexSet& avoid, std::size_t limit, Rng& rng, std::uint64_t& nodes,
                                 std::uint64_t budget) {
  std::vector<Quadruple> out;
  const int n = h.n();
  VertexSet free = VertexSet::full(n) - avoid;
  free.reset(z);
  for (Vertex y : shuffled(free, rng)) {
    VertexSet y2s = h.pair_neighbors(y, z) & free;
    for (Vertex y2 : shuffled(y2s, rng)) {
      if (out.size() >= limit || ++nodes > budget) return out;
      const VertexSet& nyy = h.pair_neighbors(y, y2);
      VertexSet a = h.pair_neighbors(y, z) & nyy & conn[y] & free;
      VertexSet b = h.pair_neighbors(y2, z) & nyy & conn[y2] & free;
      if (a.empty() || b.empty()) continue;
      Vertex x = rng.pick(a);
      b.reset(x);
      if (b.empty()) {
        a.reset(x);
        b.set(x);
        if (a.empty()) continue;
        x = rng.pick(a);
      }
      Vertex x2 = rng.pick(b);
      out.push_back({x, y, y2, x2});
    }
  }
  return out;
}

}  // namespace

std::vector<Quadruple> absorbable_witnesses(const Hypergraph3& h, const RobustFamily& fam, Vertex z, double zeta_star,
                                            const VertexSet& avoid, std::size_t limit, std::uint64_t seed) {
  auto conn = connectable_neighbors(fam, zeta_star);
  Rng rng(seed);
  std::uint64_t nodes = 0;
  VertexSet av = avoid.universe() == h.n() ? avoid : VertexSet(h.n());
  return witnesses(h, conn, z, av, limit, rng, nodes, ~std::uint64_t{0});
}

std::vector<AbsorberTuple> find_v_absorbers(const Hypergraph3& h, const RobustFamily& fam, Vertex v,
                                            double zeta_star, std::size_t limit, const AbsorberSearch& opts) {
  const int n = h.n();
  if (v < 0 || v >= n) throw PreconditionError("vertex out of range");
  std::vector<AbsorberTuple> out;
  if (limit == 0 || h.degree(v) == 0) return out;
  AbsorbableIndex local;
  const AbsorbableIndex* idx = opts.absorbable;
  if (!idx) {
    local = absorbable_index(h, fam, zeta_star, opts.frac);
    idx = &local;
  }
  auto conn = connectable_neighbors(fam, zeta_star);
  VertexSet avoid = opts.avoid.universe() == n ? opts.avoid : VertexSet(n);
  Rng rng(opts.seed);
  std::uint64_t nodes = 0;
  const Graph& rv = fam.robust_graph(v);

  VertexSet zs = idx->vertices - avoid;
  zs.reset(v);
  std::set<AbsorberTuple> seen;
  auto zorder = shuffled(zs, rng);
  const std::size_t per_z = std::max<std::size_t>(1, limit / std::max<std::size_t>(1, zorder.size()) + 1);
  for (Vertex z : zorder) {
    if (out.size() >= limit || nodes > opts.budget) break;
    const Graph& rz = fam.robust_graph(z);
    VertexSet allowed = VertexSet::full(n) - avoid;
    allowed.reset(v);
    allowed.reset(z);
    auto common = [&](Vertex u) { return rv.neighbors(u) & rz.neighbors(u) & allowed; };
    std::size_t from_z = 0;
    for (Vertex a : shuffled(allowed, rng)) {
      if (from_z >= per_z || out.size() >= limit || nodes > opts.budget) break;
      VertexSet bs = common(a) & conn[a];
      for (Vertex b : shuffled(bs, rng)) {
        if (from_z >= per_z || nodes > opts.budget) break;
        VertexSet cs = common(b);
        cs.reset(a);
        bool done = false;
        for (Vertex c : shuffled(cs, rng)) {
          if (++nodes > opts.budget) break;
          VertexSet ds = common(c) & conn[c];
          ds.reset(a);
          ds.reset(b);
          if (ds.empty()) continue;
          Vertex d = rng.pick(ds);
          VertexSet block = avoid;
          for (Vertex u : {a, b, c, d, v}) block.set(u);
          auto quad = witnesses(h, conn, z, block, 1, rng, nodes, opts.budget);
          if (quad.empty()) continue;
          AbsorberTuple t{a, b, c, d, z, quad[0].x, quad[0].y, quad[0].y2, quad[0].x2};
          if (!is_v_absorber(h, fam, t, v, zeta_star)) throw std::logic_error("absorber search produced an invalid tuple");
          if (seen.insert(t).second) {
            out.push_back(t);
            ++from_z;
          }
          done = true;
          break;
        }
        if (done) break;
      }
    }
  }
  return out;
}

void AbsorberFamily::rebuild_index(const Hypergraph3& h, const RobustFamily& fam, double zeta_star) {
  per_vertex_index.assign(h.n(), {});
  for (std::size_t i = 0; i < tuples.size(); ++i)
    for (Vertex v = 0; v < h.n(); ++v)
      if (is_v_absorber(h, fam, tuples[i], v, zeta_star)) per_vertex_index[v].push_back(static_cast<int>(i));
}

VertexSet AbsorberFamily::vertex_set(int n) const {
  VertexSet s(n);
  for (const auto& t : tuples)
    for (Vertex u : t.as_array()) s.set(u);
  return s;
}

AbsorberFamily choose_absorber_family(const Hypergraph3& h, const RobustFamily& fam, const Reservoir& res,
                                      const FamilyConfig& cfg) {
  const int n = h.n();
  auto idx = absorbable_index(h, fam, cfg.zeta_star, cfg.frac);
  VertexSet avoid = res.members.universe() == n ? res.members : VertexSet(n);

  std::set<AbsorberTuple> pool_set;
  for (Vertex v = 0; v < n; ++v) {
    AbsorberSearch s;
    s.frac = cfg.frac;
    s.avoid = avoid;
    s.seed = derive_seed(cfg.seed, "absorber-candidates", static_cast<std::uint64_t>(v));
    s.budget = cfg.budget;
    s.absorbable = &idx;
    for (const auto& t : find_v_absorbers(h, fam, v, cfg.zeta_star, cfg.per_vertex, s)) pool_set.insert(t);
  }

  // random selection, then the deletions
  Rng rng(derive_seed(cfg.seed, "absorber-selection"));
  std::vector<AbsorberTuple> pool;
  for (const auto& t : pool_set)
    if (rng.bernoulli(cfg.keep_probability)) pool.push_back(t);
  std::erase_if(pool, [&](const AbsorberTuple& t) {
    if (!satisfies_family_conditions(h, fam, t, cfg.zeta_star)) return true;
    for (Vertex u : t.as_array())
      if (avoid.test(u)) return true;
    return false;
  });
  std::vector<VertexSet> tv;
  for (const auto& t : pool) {
    VertexSet s(n);
    for (Vertex u : t.as_array()) s.set(u);
    tv.push_back(std::move(s));
  }
  if (cfg.delete_overlapping) {
    std::vector<char> drop(pool.size(), 0);
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j)
        if (tv[i].intersects(tv[j])) drop[i] = drop[j] = 1;
    std::vector<AbsorberTuple> kept;
    std::vector<VertexSet> kept_v;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (!drop[i]) {
        kept.push_back(pool[i]);
        kept_v.push_back(tv[i]);
      }
    pool = std::move(kept);
    tv = std::move(kept_v);
  }

  std::vector<VertexSet> cov(pool.size(), VertexSet(n));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (Vertex v = 0; v < n; ++v)
      if (is_v_absorber(h, fam, pool[i], v, cfg.zeta_star)) cov[i].set(v);

  std::size_t cap = cfg.max_tuples;
  if (cap == 0)
    cap = static_cast<std::size_t>(floor_count(8.0 * std::pow(cfg.alpha, -5) * cfg.theta_star * cfg.theta_star * n));
  const int want = std::max(cfg.cover_min, 1);
  std::vector<int> cover(n, 0);
  VertexSet taken(n);
  AbsorberFamily fam_out;
  fam_out.theta_star = cfg.theta_star;
  std::vector<char> picked(pool.size(), 0);
  while (fam_out.tuples.size() < cap) {
    long best_gain = 0, best_total = -1;
    int best = -1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (picked[i] || tv[i].intersects(taken)) continue;
      long gain = 0;
      cov[i].for_each([&](Vertex v) {
        if (!taken.test(v) && !tv[i].test(v) && cover[v] < want) ++gain;
      });
      long total = cov[i].count();
      if (gain > best_gain || (gain == best_gain && gain > 0 && total > best_total)) {
        best_gain = gain;
        best_total = total;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    picked[best] = 1;
    taken |= tv[best];
    cov[best].for_each([&](Vertex v) { ++cover[v]; });
    fam_out.tuples.push_back(pool[best]);
  }
  fam_out.rebuild_index(h, fam, cfg.zeta_star);

  std::vector<Vertex> uncovered;
  for (Vertex v = 0; v < n; ++v)
    if (!taken.test(v) && static_cast<int>(fam_out.per_vertex_index[v].size()) < cfg.cover_min) uncovered.push_back(v);
  if (!uncovered.empty()) {
    std::string list;
    for (std::size_t i = 0; i < uncovered.size() && i < 20; ++i) list += (i ? "," : "") + std::to_string(uncovered[i]);
    if (uncovered.size() > 20) list += ",...";
    throw StageFailure("absorber-family", std::to_string(uncovered.size()) + " vertices below cover_min " +
                                              std::to_string(cfg.cover_min) + ": " + list);
  }
  return fam_out;
}

AbsorbingPath build_absorbing_path(const Hypergraph3& h, const RobustFamily& fam, const Reservoir& res,
                                   const AbsorberFamily& family, const AbsorbingPathConfig& cfg) {
  const int n = h.n();
  AbsorbingPath out;
  out.family = family;
  if (family.tuples.empty()) {
    out.empty_family = true;
    return out;
  }
  struct Member {
    std::vector<Vertex> seq;
    int tuple;
    bool first;
  };
  std::vector<Member> members;
  for (std::size_t i = 0; i < family.tuples.size(); ++i) {
    members.push_back({family.tuples[i].first_subpath(), static_cast<int>(i), true});
    members.push_back({family.tuples[i].second_subpath(), static_cast<int>(i), false});
  }
  VertexSet reserved = res.members.universe() == n ? res.members : VertexSet(n);
  out.subpath_index.assign(family.tuples.size(), {});

  std::vector<Vertex> seq = members[0].seq;
  out.subpath_index[0].first = 0;
  std::vector<char> placed(members.size(), 0);
  placed[0] = 1;
  std::size_t left = members.size() - 1;
  std::uint64_t conn_count = 0;
  while (left > 0) {
    bool progressed = false;
    for (std::size_t m = 0; m < members.size() && !progressed; ++m) {
      if (placed[m]) continue;
      VertexSet avoid = reserved | VertexSet::from(n, seq);
      for (std::size_t o = 0; o < members.size(); ++o)
        if (!placed[o] && o != m)
          for (Vertex u : members[o].seq) avoid.set(u);
      for (Vertex u : members[m].seq) avoid.set(u);
      ConnectRequest req;
      req.start = {seq[seq.size() - 2], seq.back()};
      req.end = {members[m].seq[0], members[m].seq[1]};
      req.zeta = cfg.zeta_star;
      req.avoid = avoid;
      req.ell = cfg.ell;
      ConnectOptions o = cfg.search;
      o.seed = derive_seed(cfg.search.seed, "absorbing-connect", conn_count++);
      auto r = find_connecting_path(h, fam, req, o);
      if (r.status != ConnectStatus::found) continue;
      const auto& cs = r.path->seq();
      seq.insert(seq.end(), cs.begin() + 2, cs.end() - 2);
      std::size_t pos = seq.size();
      seq.insert(seq.end(), members[m].seq.begin(), members[m].seq.end());
      if (members[m].first) out.subpath_index[members[m].tuple].first = pos;
      else out.subpath_index[members[m].tuple].second = pos;
      placed[m] = 1;
      --left;
      progressed = true;
    }
    if (!progressed) {
      throw StageFailure("absorbing-path", "cannot connect end pair (" + std::to_string(seq[seq.size() - 2]) + "," +
                                               std::to_string(seq.back()) + ") to any of " + std::to_string(left) +
                                               " remaining members");
    }
  }
  out.path = TightPath(h, std::move(seq));
  if (!subpaths_in_place(out)) throw std::logic_error("absorbing path lost a subpath");
  const std::size_t bound = 2 + static_cast<std::size_t>(3 * cfg.ell + 6) * members.size();
  if (out.path.size() > bound) throw std::logic_error("absorbing path longer than its bound");
  return out;
}

bool subpaths_in_place(const AbsorbingPath& p) {
  const auto& seq = p.path.seq();
  for (std::size_t i = 0; i < p.family.tuples.size(); ++i) {
    auto check = [&](const std::vector<Vertex>& sub, std::size_t pos) {
      if (pos + sub.size() > seq.size()) return false;
      return std::equal(sub.begin(), sub.end(), seq.begin() + static_cast<std::ptrdiff_t>(pos));
    };
    if (!check(p.family.tuples[i].first_subpath(), p.subpath_index[i].first)) return false;
    if (!check(p.family.tuples[i].second_subpath(), p.subpath_index[i].second)) return false;
  }
  return true;
}

std::optional<std::vector<int>> assign_absorbers(const AbsorberFamily& family, const std::vector<Vertex>& xs) {
  const int t = static_cast<int>(family.tuples.size());
  std::vector<int> owner(t, -1);
  std::vector<int> match(xs.size(), -1);
  auto options = [&](std::size_t i) -> const std::vector<int>& {
    static const std::vector<int> none;
    Vertex v = xs[i];
    if (v < 0 || v >= static_cast<int>(family.per_vertex_index.size())) return none;
    return family.per_vertex_index[v];
  };
  // greedy first, then augmenting paths
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (int k : options(i))
      if (owner[k] < 0) {
        owner[k] = static_cast<int>(i);
        match[i] = k;
        break;
      }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (match[i] >= 0) continue;
    std::vector<char> seen(t, 0);
    std::function<bool(int)> augment = [&](int u) {
      for (int k : options(static_cast<std::size_t>(u))) {
        if (seen[k]) continue;
        seen[k] = 1;
        if (owner[k] < 0 || augment(owner[k])) {
          owner[k] = u;
          match[u] = k;
          return true;
        }
      }
      return false;
    };
    if (!augment(static_cast<int>(i))) return std::nullopt;
  }
  return match;
}

TightPath absorb_vertices(const Hypergraph3& h, const AbsorbingPath& p, const std::vector<Vertex>& xs,
                          const AbsorbOptions& opts) {
  const int n = h.n();
  if (xs.empty()) return p.path;
  VertexSet on_path = p.path.vertex_set(n);
  VertexSet seen(n);
  for (Vertex v : xs) {
    if (v < 0 || v >= n) throw PreconditionError("vertex out of range");
    if (on_path.test(v)) throw PreconditionError("vertex " + std::to_string(v) + " already lies on the absorbing path");
    if (seen.test(v)) throw PreconditionError("vertex " + std::to_string(v) + " listed twice");
    seen.set(v);
  }
  if (xs.size() > p.family.tuples.size())
    throw StageFailure("absorb", "capacity exceeded: " + std::to_string(xs.size()) + " vertices, " +
                                     std::to_string(p.family.tuples.size()) + " tuples");
  if (opts.cap && static_cast<int>(xs.size()) > *opts.cap)
    throw StageFailure("absorb", "more than " + std::to_string(*opts.cap) + " vertices to absorb");
  auto match = assign_absorbers(p.family, xs);
  if (!match) throw StageFailure("absorb", "no distinct absorber for every leftover vertex");

  const auto& seq = p.path.seq();
  std::map<std::size_t, Vertex> replace;
  std::map<std::size_t, Vertex> insert_after;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& t = p.family.tuples[(*match)[i]];
    const auto& pos = p.subpath_index[(*match)[i]];
    replace[pos.first + 2] = xs[i];        // abzcd -> abvcd
    insert_after[pos.second + 1] = t.z;    // xyy'x' -> xyzy'x'
  }
  std::vector<Vertex> out;
  out.reserve(seq.size() + xs.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto r = replace.find(i);
    out.push_back(r == replace.end() ? seq[i] : r->second);
    auto ins = insert_after.find(i);
    if (ins != insert_after.end()) out.push_back(ins->second);
  }
  TightPath result(h, std::move(out));
  if (result.start_pair() != p.path.start_pair() || result.end_pair() != p.path.end_pair())
    throw std::logic_error("absorption moved an end pair");
  return result;
}

}  // namespace tightham
