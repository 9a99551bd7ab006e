#include "tightham/longpath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tightham/errors.hpp"
#include "tightham/numeric.hpp"
#include "tightham/rng.hpp"

namespace tightham {

namespace {

VertexSet all_if_empty(const VertexSet& s, int n) { return s.universe() == n ? s : VertexSet::full(n); }

}  // namespace

bool is_piece(const Hypergraph3& h, const RobustFamily& fam, const std::vector<Vertex>& piece, const VertexSet& reservoir,
              const CandidateRules& rules) {
  if (static_cast<int>(piece.size()) != rules.M || rules.M < 2) return false;
  if (!validate_tight(h, piece, false)) return false;
  for (Vertex v : piece)
    if (reservoir.universe() == h.n() && reservoir.test(v)) return false;
  return fam.connectable(piece[0], piece[1], rules.zeta2) &&
         fam.connectable(piece[rules.M - 2], piece[rules.M - 1], rules.zeta2);
}

CandidateCheck check_candidate(const Hypergraph3& h, const RobustFamily& fam, const Candidate& c,
                               const VertexSet& reservoir, const CandidateRules& rules) {
  CandidateCheck out;
  auto bad = [&](std::string why) {
    out.ok = false;
    out.violation = std::move(why);
    return out;
  };
  const int n = h.n();
  const auto& q = c.Q.seq();
  if (c.Q.is_cycle()) return bad("Q is a cycle");
  auto verdict = validate_tight(h, q, false);
  if (!verdict) return bad("Q not tight: " + verdict.detail);
  VertexSet hat = all_if_empty(rules.hat, n);
  for (Vertex v : q)
    if (!hat.test(v)) return bad("Q leaves the host at vertex " + std::to_string(v));

  std::vector<int> where(n, -1);
  for (std::size_t i = 0; i < q.size(); ++i) where[q[i]] = static_cast<int>(i);

  VertexSet seen(n);
  std::vector<std::pair<int, int>> spans;  // [start, end] on Q
  for (std::size_t k = 0; k < c.pieces.size(); ++k) {
    const auto& p = c.pieces[k];
    if (!is_piece(h, fam, p, reservoir, rules)) return bad("piece " + std::to_string(k) + " not in the piece library");
    for (Vertex v : p) {
      if (seen.test(v)) return bad("pieces overlap at vertex " + std::to_string(v));
      seen.set(v);
    }
    // (a) subpath, either orientation
    int s = where[p.front()], e = where[p.back()];
    if (s < 0 || e < 0) return bad("(a) piece " + std::to_string(k) + " not on Q");
    int step = s <= e ? 1 : -1;
    if (std::abs(e - s) + 1 != static_cast<int>(p.size())) return bad("(a) piece " + std::to_string(k) + " not contiguous");
    for (std::size_t i = 0; i < p.size(); ++i)
      if (q[s + step * static_cast<int>(i)] != p[i]) return bad("(a) piece " + std::to_string(k) + " not a subpath");
    spans.emplace_back(std::min(s, e), std::max(s, e));
  }
  std::sort(spans.begin(), spans.end());
  for (std::size_t k = 1; k < spans.size(); ++k) {
    int gap_from = spans[k - 1].second + 1, gap_to = spans[k].first - 1;
    int gap = gap_to - gap_from + 1;
    if (gap == 1) continue;
    for (int i = gap_from; i <= gap_to; ++i)
      if (!(reservoir.universe() == n && reservoir.test(q[i])))
        return bad("(b) gap before piece at " + std::to_string(spans[k].first) + " holds a non-reservoir vertex");
  }
  if (!spans.empty() && (spans.front().first != 0 || spans.back().second != static_cast<int>(q.size()) - 1))
    return bad("(c) Q does not start and end with pieces");
  int usage = 0;
  for (Vertex v : q)
    if (reservoir.universe() == n && reservoir.test(v)) ++usage;
  if (usage != c.reservoir_usage) return bad("reservoir usage recorded as " + std::to_string(c.reservoir_usage) +
                                             ", actual " + std::to_string(usage));
  if (usage > 19.0 * rules.ell * static_cast<double>(c.pieces.size()) / rules.alpha + 1e-9)
    return bad("(d) reservoir usage " + std::to_string(usage) + " too large");
  return out;
}

FilteredLinks filter_connectable_links(const RobustFamily& fam, double zeta2, double alpha) {
  const int n = fam.n();
  FilteredLinks out;
  out.bad = VertexSet(n);
  out.filtered.reserve(n);
  out.removed.assign(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    Graph g = fam.robust_graph(u);
    for (auto [x, y] : fam.robust_graph(u).edge_list())
      if (!fam.connectable(x, y, zeta2)) {
        g.remove_edge(x, y);
        ++out.removed[u];
      }
    double before = static_cast<double>(fam.robust_graph(u).edge_count());
    if (static_cast<double>(g.edge_count()) <= before - alpha * n * n / 8.0 + 1e-9) out.bad.set(u);
    out.filtered.push_back(std::move(g));
  }
  return out;
}

SocietyContext build_society_context(const Candidate& cand, const VertexSet& hat, const VertexSet& reservoir,
                                     const FilteredLinks& links, const RobustFamily& fam, int M, int m) {
  const int n = fam.n();
  SocietyContext ctx;
  ctx.M = M;
  ctx.m = m;
  ctx.n = n;
  for (const auto& p : cand.pieces) ctx.blocks.push_back(VertexSet::from(n, p));
  ctx.piece_blocks = static_cast<int>(ctx.blocks.size());
  ctx.U = all_if_empty(hat, n) - cand.Q.vertex_set(n);
  if (reservoir.universe() == n) ctx.U -= reservoir;
  auto us = ctx.U.to_vector();
  for (std::size_t i = 0; i + M <= us.size(); i += M)
    ctx.blocks.push_back(VertexSet::from(n, std::vector<Vertex>(us.begin() + i, us.begin() + i + M)));
  ctx.U_bad = links.bad & ctx.U;
  ctx.filtered = links.filtered;
  ctx.eta.resize(n);
  for (Vertex u = 0; u < n; ++u) ctx.eta[u] = static_cast<double>(fam.robust_graph(u).order()) / n;
  return ctx;
}

bool useful_for(const VertexSet& S, Vertex u, const SocietyContext& ctx, double alpha) {
  if (ctx.U_bad.universe() == ctx.n && ctx.U_bad.test(u)) throw PreconditionError("vertex " + std::to_string(u) + " is bad");
  const int s = S.count();
  if (s != ctx.M * ctx.m) throw PreconditionError("society union must hold M*m vertices");
  const Graph& g = ctx.filtered.at(u);
  VertexSet inside = S & g.vertices();
  const double tau = static_cast<double>(inside.count()) / s;
  const double eta = ctx.eta.at(u);
  const double lhs = static_cast<double>(g.edges_within(inside));
  const double rhs = (5.0 / 9.0 + alpha / 9.0 - (1.0 - eta) * (1.0 + eta - 2.0 * tau)) * s * static_cast<double>(s) / 2.0;
  return lhs >= rhs - 1e-9;
}

std::optional<SocietyChoice> find_useful_society(const SocietyContext& ctx, double alpha, std::uint64_t sample_budget,
                                                 std::uint64_t seed, std::optional<double> density) {
  const int nu = static_cast<int>(ctx.blocks.size());
  if (nu < ctx.m) throw PreconditionError("only " + std::to_string(nu) + " blocks for societies of size " + std::to_string(ctx.m));
  VertexSet good = ctx.U - ctx.U_bad;
  const long target = ceil_count(density.value_or(alpha / 18.0) * good.count());
  Rng rng(seed);
  std::vector<int> ids(nu);
  for (int i = 0; i < nu; ++i) ids[i] = i;
  for (std::uint64_t s = 0; s < sample_budget; ++s) {
    for (int i = 0; i < ctx.m; ++i) std::swap(ids[i], ids[i + rng.below(nu - i)]);
    SocietyChoice ch;
    ch.block_ids.assign(ids.begin(), ids.begin() + ctx.m);
    std::sort(ch.block_ids.begin(), ch.block_ids.end());
    ch.S = VertexSet(ctx.n);
    for (int b : ch.block_ids) ch.S |= ctx.blocks[b];
    ch.useful = VertexSet(ctx.n);
    good.for_each([&](Vertex u) {
      if (useful_for(ch.S, u, ctx, alpha)) ch.useful.set(u);
    });
    if (ch.useful.count() >= target && !ch.useful.empty()) return ch;
  }
  return std::nullopt;
}

namespace {

Graph intersection_graph(const VertexSet& U2, const VertexSet& S, const SocietyContext& ctx) {
  Graph g(ctx.n, S);
  S.for_each([&](Vertex a) {
    VertexSet nb = S;
    U2.for_each([&](Vertex u) { nb &= ctx.filtered[u].neighbors(a); });
    nb.for_each([&](Vertex b) {
      if (a < b) g.add_edge(a, b);
    });
  });
  return g;
}

std::optional<std::vector<Vertex>> exact_path(const Graph& g, int len) {
  auto verts = g.vertices().to_vector();
  const int k = static_cast<int>(verts.size());
  std::vector<std::uint32_t> adj(k, 0);
  std::vector<int> index(g.universe(), -1);
  for (int i = 0; i < k; ++i) index[verts[i]] = i;
  for (int i = 0; i < k; ++i)
    g.neighbors(verts[i]).for_each([&](Vertex v) {
      if (index[v] >= 0) adj[i] |= 1u << index[v];
    });
  std::vector<std::uint32_t> reach(std::size_t{1} << k, 0);
  for (int i = 0; i < k; ++i) reach[std::size_t{1} << i] = 1u << i;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends) continue;
    if (std::popcount(mask) == len) {
      std::vector<Vertex> path;
      int last = std::countr_zero(ends);
      std::uint32_t cur = mask;
      while (true) {
        path.push_back(verts[last]);
        std::uint32_t prev = cur & ~(1u << last);
        if (!prev) break;
        std::uint32_t opts = reach[prev] & adj[last];
        last = std::countr_zero(opts);
        cur = prev;
      }
      return path;
    }
    if (std::popcount(mask) >= len) continue;
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
  return std::nullopt;
}

struct PathDfs {
  const Graph& g;
  int len;
  Rng rng;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<Vertex> path;
  VertexSet used{};

  bool dfs() {
    if (static_cast<int>(path.size()) == len) return true;
    if (++nodes > budget) return false;
    VertexSet cand = g.neighbors(path.back()) - used;
    auto order = cand.to_vector();
    rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return (g.neighbors(a) - used).count() < (g.neighbors(b) - used).count();
    });
    for (Vertex c : order) {
      path.push_back(c);
      used.set(c);
      if (dfs()) return true;
      used.reset(c);
      path.pop_back();
      if (nodes > budget) return false;
    }
    return false;
  }
};

bool path_in_all(const std::vector<Vertex>& W, const VertexSet& U2, const SocietyContext& ctx) {
  bool ok = true;
  U2.for_each([&](Vertex u) {
    for (std::size_t i = 0; i + 1 < W.size() && ok; ++i)
      if (!ctx.filtered[u].has_edge(W[i], W[i + 1])) ok = false;
  });
  return ok;
}

}  // namespace

std::optional<std::vector<Vertex>> common_connectable_path(const VertexSet& U2, const VertexSet& S,
                                                           const SocietyContext& ctx, int needed_len,
                                                           std::uint64_t budget, std::uint64_t seed) {
  if (U2.empty()) throw PreconditionError("common path needs at least one vertex");
  if (needed_len <= 0) return std::vector<Vertex>{};
  Graph g = intersection_graph(U2, S, ctx);
  // only vertices that survive in every graph
  VertexSet live(ctx.n);
  g.vertices().for_each([&](Vertex v) {
    if (g.degree(v) > 0 || needed_len == 1) live.set(v);
  });
  g = g.induced(live);
  if (g.order() < needed_len) return std::nullopt;
  std::optional<std::vector<Vertex>> found;
  if (g.order() <= 20) {
    found = exact_path(g, needed_len);
  } else {
    Rng rng(seed);
    auto verts = g.vertices().to_vector();
    rng.shuffle(verts);
    std::stable_sort(verts.begin(), verts.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    std::uint64_t per = std::max<std::uint64_t>(1, budget / std::max<std::size_t>(1, verts.size()));
    std::uint64_t spent = 0;
    for (Vertex s : verts) {
      if (spent >= budget) break;
      PathDfs d{g, needed_len, Rng(derive_seed(seed, "common-path", static_cast<std::uint64_t>(s))), per, 0, {s},
                VertexSet(ctx.n)};
      d.used.set(s);
      bool ok = d.dfs();
      spent += d.nodes;
      if (ok) {
        found = d.path;
        break;
      }
    }
  }
  if (found && !path_in_all(*found, U2, ctx)) throw std::logic_error("common path check failed");
  return found;
}

std::optional<SharedPath> select_sharing_group(const VertexSet& candidates, const VertexSet& S,
                                               const SocietyContext& ctx, int needed_len, int want,
                                               std::uint64_t budget, std::uint64_t seed) {
  Rng rng(seed);
  auto order = candidates.to_vector();
  rng.shuffle(order);
  SharedPath out;
  out.sharing = VertexSet(ctx.n);
  bool have = false;
  std::uint64_t per = std::max<std::uint64_t>(1, budget / std::max<std::size_t>(1, order.size()));
  for (Vertex u : order) {
    if (out.sharing.count() >= want) break;
    VertexSet trial = out.sharing;
    trial.set(u);
    if (have && path_in_all(out.W, VertexSet(ctx.n, {u}), ctx)) {
      out.sharing = trial;
      continue;
    }
    auto w = common_connectable_path(trial, S, ctx, needed_len, per, derive_seed(seed, "share", static_cast<std::uint64_t>(u)));
    if (w) {
      out.W = *w;
      out.sharing = trial;
      have = true;
    }
  }
  if (!have || out.sharing.count() < want) return std::nullopt;
  return out;
}

std::vector<Vertex> interleave_path(const std::vector<Vertex>& W, const std::vector<Vertex>& U2) {
  if (W.size() % 2 != 0) throw PreconditionError("W must have even length");
  std::size_t k = W.size() / 2;
  if (k == 0) return {};
  if (U2.size() < k - 1) throw PreconditionError("not enough interleaving vertices");
  std::vector<Vertex> t;
  for (std::size_t i = 0; i < k; ++i) {
    t.push_back(W[2 * i]);
    t.push_back(W[2 * i + 1]);
    if (i + 1 < k) t.push_back(U2[i]);
  }
  return t;
}

namespace {

int reservoir_usage(const std::vector<Vertex>& q, const VertexSet& members) {
  int c = 0;
  for (Vertex v : q)
    if (members.test(v)) ++c;
  return c;
}

CandidateRules rules_of(const LongPathConfig& cfg, const VertexSet& hat) {
  CandidateRules r;
  r.M = cfg.M;
  r.alpha = cfg.alpha;
  r.ell = cfg.ell;
  r.zeta2 = cfg.zeta2;
  r.hat = hat;
  return r;
}

ReservoirUse reservoir_use(const LongPathConfig& cfg, const Reservoir& res, int salt) {
  ReservoirUse u;
  u.zeta2 = cfg.zeta2;
  u.theta_2star = cfg.theta_2star;
  u.ell = cfg.ell;
  if (cfg.mode == LongPathMode::desk) u.used_cap = res.members.count();
  u.search = cfg.search;
  u.search.seed = derive_seed(cfg.seed, "longpath-connect", static_cast<std::uint64_t>(salt) + res.used.count() * 7919u);
  return u;
}

}  // namespace

AugmentResult augment_candidate(const Candidate& cand, const SocietyContext& ctx, const Hypergraph3& h,
                                const RobustFamily& fam, Reservoir& res, const LongPathConfig& cfg,
                                const VertexSet& hat) {
  AugmentResult out;
  out.candidate = cand;
  const int M = cfg.M, m = cfg.m;
  if (M < 2 || M % 3 != 2) throw PreconditionError("M must be 2 mod 3");
  const int w_len = 2 * (M + 1) * (m + 6) / 3;
  const int u_need = (M + 1) * (m + 6) / 3 - 1;
  if (static_cast<int>(ctx.blocks.size()) < m) {
    out.failure = "fewer blocks than a society needs";
    return out;
  }
  auto society = find_useful_society(ctx, cfg.alpha, cfg.society_budget,
                                     derive_seed(cfg.seed, "society", cand.pieces.size()), cfg.society_density);
  if (!society) {
    out.failure = "no useful society within budget";
    return out;
  }
  VertexSet pool = society->useful - society->S;
  auto shared = select_sharing_group(pool, society->S, ctx, w_len, u_need, cfg.budget,
                                     derive_seed(cfg.seed, "sharing", cand.pieces.size()));
  if (!shared) {
    out.failure = "no common path of " + std::to_string(w_len) + " vertices shared by " + std::to_string(u_need) +
                  " useful vertices";
    return out;
  }
  auto u2 = shared->sharing.to_vector();
  u2.resize(u_need);
  auto t = interleave_path(shared->W, u2);
  TightPath T(h, t);
  std::vector<std::vector<Vertex>> fresh;
  CandidateRules rules = rules_of(cfg, hat);
  for (int i = 0; i < m + 6; ++i) {
    std::vector<Vertex> p(t.begin() + (M + 1) * i, t.begin() + (M + 1) * i + M);
    if (!is_piece(h, fam, p, res.members, rules)) {
      out.failure = "piece " + std::to_string(i) + " of T is not in the library";
      return out;
    }
    fresh.push_back(std::move(p));
  }

  // fragments of Q after dropping the pieces inside the society
  std::vector<char> drop(cand.pieces.size(), 0);
  for (int b : society->block_ids)
    if (b < ctx.piece_blocks) drop[b] = 1;
  const auto& q = cand.Q.seq();
  std::vector<int> where(h.n(), -1);
  for (std::size_t i = 0; i < q.size(); ++i) where[q[i]] = static_cast<int>(i);
  std::vector<std::vector<Vertex>> fragments;
  std::vector<std::vector<Vertex>> kept;
  std::size_t i = 0;
  while (i < cand.pieces.size()) {
    if (drop[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < cand.pieces.size() && !drop[j + 1]) ++j;
    int from = where[cand.pieces[i].front()], to = where[cand.pieces[j].back()];
    fragments.emplace_back(q.begin() + from, q.begin() + to + 1);
    for (std::size_t k = i; k <= j; ++k) kept.push_back(cand.pieces[k]);
    i = j + 1;
  }
  fragments.push_back(t);

  Reservoir trial = res;
  std::vector<Vertex> seq = fragments[0];
  for (std::size_t f = 1; f < fragments.size(); ++f) {
    try {
      auto conn = connect_through_reservoir(h, fam, trial, {seq[seq.size() - 2], seq.back()},
                                            {fragments[f][0], fragments[f][1]}, reservoir_use(cfg, trial, static_cast<int>(f)));
      seq.insert(seq.end(), conn.seq().begin() + 2, conn.seq().end() - 2);
      seq.insert(seq.end(), fragments[f].begin(), fragments[f].end());
    } catch (const ReservoirError& e) {
      out.failure = std::string("reconnection failed: ") + e.what();
      return out;
    }
  }
  Candidate next;
  next.pieces = kept;
  next.pieces.insert(next.pieces.end(), fresh.begin(), fresh.end());
  next.Q = TightPath(h, seq);
  next.reservoir_usage = reservoir_usage(seq, res.members);
  auto check = check_candidate(h, fam, next, res.members, rules);
  if (!check) {
    out.failure = "augmented pair is not a candidate: " + check.violation;
    return out;
  }
  res = trial;
  out.candidate = std::move(next);
  out.changed = true;
  return out;
}

namespace {

// tight path over `free` cut into M-vertex pieces; consecutive pieces are
// adjacent or separated by one vertex. phase M marks a separator.
struct SegmentSearch {
  const Hypergraph3& h;
  const RobustFamily& fam;
  double zeta2;
  int M;
  VertexSet free;
  Rng rng;
  std::uint64_t budget;
  int target;
  std::uint64_t nodes = 0;
  std::vector<Vertex> seq{};
  std::vector<int> phase{};
  VertexSet used{};
  std::vector<Vertex> best{};
  std::vector<int> best_phase{};

  bool complete() const { return phase.back() == M - 1; }

  bool allowed(int o, Vertex prev, Vertex c) const {
    if (o == 1 || o == M - 1) return fam.connectable(prev, c, zeta2);
    return true;
  }

  bool dfs(std::uint64_t limit) {
    if (complete() && seq.size() > best.size()) {
      best = seq;
      best_phase = phase;
    }
    if (complete() && static_cast<int>(seq.size()) >= target) return true;
    if (++nodes > limit) return false;
    int last = phase.back();
    std::vector<int> options;
    if (last == M - 1) options = {M, 0};
    else if (last == M) options = {0};
    else options = {last + 1};
    VertexSet cand = h.pair_neighbors(seq[seq.size() - 2], seq.back()) & free;
    cand -= used;
    std::vector<std::pair<int, Vertex>> order;
    cand.for_each([&](Vertex c) {
      VertexSet onward = h.pair_neighbors(seq.back(), c) & free;
      onward -= used;
      order.emplace_back(onward.count(), c);
    });
    rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto [deg, c] : order) {
      for (int o : options) {
        if (!allowed(o, seq.back(), c)) continue;
        if (deg == 0 && o != M - 1) continue;  // stuck before a piece closes
        seq.push_back(c);
        phase.push_back(o);
        used.set(c);
        if (dfs(limit)) return true;
        used.reset(c);
        phase.pop_back();
        seq.pop_back();
        if (nodes > limit) return false;
      }
    }
    return false;
  }

  void run(int restarts) {
    std::vector<std::pair<Vertex, Vertex>> starts;
    free.for_each([&](Vertex x) {
      free.for_each([&](Vertex y) {
        if (x != y && fam.connectable(x, y, zeta2) && (M == 2 || !(h.pair_neighbors(x, y) & free).empty()))
          starts.emplace_back(x, y);
      });
    });
    rng.shuffle(starts);
    if (static_cast<int>(starts.size()) > restarts) starts.resize(restarts);
    const std::uint64_t per = std::max<std::uint64_t>(1, budget / std::max<std::size_t>(1, starts.size()));
    for (auto [x, y] : starts) {
      if (nodes >= budget) break;
      seq = {x, y};
      phase = {0, 1};
      used = VertexSet(h.n());
      used.set(x);
      used.set(y);
      if (dfs(nodes + per)) break;
    }
  }

  std::vector<std::vector<Vertex>> pieces() const {
    std::vector<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < best.size(); ++i) {
      if (best_phase[i] == 0) out.emplace_back();
      if (best_phase[i] < M) out.back().push_back(best[i]);
    }
    return out;
  }
};

}  // namespace

LongPathResult build_long_path(const Hypergraph3& h, const VertexSet& hat_in, const RobustFamily& fam, Reservoir& res,
                               const LongPathConfig& cfg) {
  const int n = h.n();
  if (cfg.M < 2 || cfg.M % 3 != 2) throw PreconditionError("M must be 2 mod 3");
  if (cfg.ell < 3 || cfg.ell % 2 == 0) throw PreconditionError("ell must be odd and >= 3");
  VertexSet hat = all_if_empty(hat_in, n);
  LongPathResult out;
  out.leftover_cap = cfg.leftover_cap.value_or(
      static_cast<int>(std::max<long>(floor_count(cfg.theta_star * cfg.theta_star * n), 6)));
  out.reservoir_use_cap = cfg.reservoir_use_cap.value_or(static_cast<int>(floor_count(cfg.theta_2star * cfg.theta_2star * n)));
  CandidateRules rules = rules_of(cfg, hat);
  Candidate cand;
  auto observe = [&](const Candidate& c) {
    if (cfg.observer) cfg.observer(c);
    auto check = check_candidate(h, fam, c, res.members, rules);
    if (!check) throw std::logic_error("long path produced a non-candidate: " + check.violation);
  };
  observe(cand);
  const int conn_size = connecting_internal_vertices(cfg.ell);
  auto uncovered = [&] { return ((hat - res.members) - cand.Q.vertex_set(n)).count(); };

  if (cfg.mode == LongPathMode::desk) {
    int segment = 0;
    while (uncovered() > out.leftover_cap) {
      VertexSet free = (hat - res.members) - cand.Q.vertex_set(n);
      bool need_link = !cand.Q.empty();
      if (need_link && res.available().count() - cfg.reserve_for_closing < conn_size) {
        out.failure = "reservoir has no room for another segment";
        break;
      }
      if (need_link && cand.reservoir_usage + conn_size > out.reservoir_use_cap) {
        out.failure = "reservoir usage cap reached";
        break;
      }
      SegmentSearch ss{h, fam, cfg.zeta2, cfg.M, free, Rng(derive_seed(cfg.seed, "segment", segment)),
                       cfg.budget, free.count()};
      ss.run(64);
      const auto& seg = ss.best;
      ++segment;
      if (seg.size() < static_cast<std::size_t>(cfg.M)) {
        out.failure = "no piece fits among the " + std::to_string(free.count()) + " uncovered vertices";
        break;
      }
      std::vector<Vertex> seq = cand.Q.seq();
      if (need_link) {
        try {
          auto conn = connect_through_reservoir(h, fam, res, cand.Q.end_pair(), {seg[0], seg[1]},
                                                reservoir_use(cfg, res, segment));
          seq.insert(seq.end(), conn.seq().begin() + 2, conn.seq().end() - 2);
        } catch (const ReservoirError& e) {
          out.failure = std::string("segment link failed: ") + e.what();
          break;
        }
      }
      seq.insert(seq.end(), seg.begin(), seg.end());
      Candidate next;
      next.pieces = cand.pieces;
      for (auto& p : ss.pieces()) next.pieces.push_back(std::move(p));
      next.Q = TightPath(h, std::move(seq));
      next.reservoir_usage = reservoir_usage(next.Q.seq(), res.members);
      cand = std::move(next);
      ++out.augmentations;
      observe(cand);
    }
  } else {
    FilteredLinks links = filter_connectable_links(fam, cfg.zeta2, cfg.alpha);
    while (uncovered() > out.leftover_cap) {
      SocietyContext ctx = build_society_context(cand, hat, res.members, links, fam, cfg.M, cfg.m);
      auto step = augment_candidate(cand, ctx, h, fam, res, cfg, hat);
      if (!step.changed) {
        out.failure = step.failure;
        break;
      }
      if (step.candidate.pieces.size() < cand.pieces.size() + 6)
        throw std::logic_error("faithful augmentation gained fewer than six pieces");
      cand = std::move(step.candidate);
      ++out.augmentations;
      observe(cand);
    }
  }

  out.candidate = cand;
  out.uncovered = uncovered();
  out.cond_uncovered = out.uncovered <= out.leftover_cap;
  out.cond_reservoir = cand.reservoir_usage <= out.reservoir_use_cap;
  out.cond_ends = cand.Q.size() >= 2 && fam.connectable(cand.Q.start_pair().first, cand.Q.start_pair().second, cfg.zeta2) &&
                  fam.connectable(cand.Q.end_pair().first, cand.Q.end_pair().second, cfg.zeta2);
  out.ok = out.cond_uncovered && out.cond_reservoir && out.cond_ends;
  if (!out.ok && out.failure.empty()) {
    if (!out.cond_uncovered) out.failure = std::to_string(out.uncovered) + " uncovered vertices exceed the cap";
    else if (!out.cond_reservoir) out.failure = "reservoir usage above cap";
    else out.failure = "end pairs not connectable";
  }
  return out;
}

}  // namespace tightham
