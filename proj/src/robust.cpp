#include "tightham/robust.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

#include "tightham/errors.hpp"
#include "tightham/oracle.hpp"
#include "tightham/rng.hpp"

namespace tightham {

namespace {

constexpr double eps = 1e-9;

void sort_parts(std::vector<VertexSet>& parts) {
  std::stable_sort(parts.begin(), parts.end(), [](const VertexSet& a, const VertexSet& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca > cb;
    return a.first() < b.first();
  });
}

// greedy peel: repeatedly drop the smallest vertex with fewer than mu*n neighbours left
std::vector<Vertex> greedy_peel(const Graph& L, const VertexSet& part, double mun) {
  std::vector<Vertex> order;
  VertexSet left = part;
  std::vector<int> fresh(L.universe(), 0);
  part.for_each([&](Vertex v) { fresh[v] = L.neighbors(v).intersect_count(part); });
  while (true) {
    Vertex pick = -1;
    left.for_each([&](Vertex v) {
      if (pick < 0 && fresh[v] < mun - eps) pick = v;
    });
    if (pick < 0) break;
    order.push_back(pick);
    left.reset(pick);
    (L.neighbors(pick) & left).for_each([&](Vertex u) { --fresh[u]; });
  }
  return order;
}

std::vector<VertexSet> components(const Graph& L, const VertexSet& part) {
  std::vector<VertexSet> out;
  VertexSet left = part;
  while (!left.empty()) {
    VertexSet comp(L.universe());
    VertexSet frontier(L.universe());
    frontier.set(left.first());
    while (!frontier.empty()) {
      comp |= frontier;
      VertexSet next(L.universe());
      frontier.for_each([&](Vertex v) { next |= L.neighbors(v); });
      next &= part;
      next -= comp;
      frontier = std::move(next);
    }
    left -= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

long crossing_sum(const Graph& L, const std::vector<VertexSet>& parts) {
  long within = 0;
  for (const auto& p : parts) within += L.edges_within(p);
  return L.edges_within(L.vertices()) - within;
}

std::string describe(const VertexSet& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  s.for_each([&](Vertex v) {
    if (!first) out << ",";
    out << v;
    first = false;
  });
  out << "}";
  return out.str();
}

}  // namespace

long RobustCandidate::crossing_edges() const { return base.edges_between(U, base.vertices() - U); }

RobustCandidate extract_robust_subgraph(const Graph& L, double alpha) {
  if (!(alpha > 0 && alpha <= 4.0 / 9.0 + eps)) throw PreconditionError("alpha must lie in (0, 4/9]");
  const int n = L.order();
  if (n < 1) throw PreconditionError("link graph has no vertices");
  RobustCandidate rc;
  rc.base = L;
  rc.mu = alpha / 72.0;
  const double mun = rc.mu * n;
  const double half = mun / 2.0;
  const long split_size = std::max<long>(1, static_cast<long>(std::ceil(half - eps)));

  std::vector<VertexSet> parts{L.vertices()};
  long crossing = 0;
  auto fits = [&](int t, long cross) { return cross <= 2.0 * (t - 1) * rc.mu * rc.mu * n * n + eps; };

  while (true) {
    sort_parts(parts);
    const VertexSet& v1 = parts[0];
    const int t = static_cast<int>(parts.size());
    bool split = false;

    auto peel = greedy_peel(L, v1, mun);
    if (static_cast<long>(peel.size()) >= split_size) {
      VertexSet w(L.universe());
      for (long i = 0; i < split_size; ++i) w.set(peel[i]);
      VertexSet rest = v1 - w;
      long cross = crossing + L.edges_between(w, rest);
      if (w.count() >= half - eps && rest.count() >= half - eps && fits(t + 1, cross)) {
        rc.trace.push_back("split V1 by peel W'=" + describe(w) + " crossing=" + std::to_string(cross));
        for (long i = 0; i < split_size; ++i) rc.split_peeled.push_back(peel[i]);
        parts[0] = rest;
        parts.push_back(w);
        crossing = cross;
        split = true;
      }
    }
    if (!split) {
      auto comps = components(L, v1);
      if (comps.size() >= 2) {
        sort_parts(comps);
        // smallest component that can stand as its own part
        for (auto it = comps.rbegin(); it != comps.rend() && !split; ++it) {
          VertexSet rest = v1 - *it;
          if (it->count() >= half - eps && rest.count() >= half - eps && fits(t + 1, crossing)) {
            rc.trace.push_back("split V1 by component " + describe(*it));
            VertexSet c = *it;
            parts[0] = rest;
            parts.push_back(c);
            split = true;
          }
        }
      }
    }
    if (!split) break;
  }

  rc.partition = parts;
  const VertexSet& v1 = parts[0];
  rc.peeled = greedy_peel(L, v1, mun);
  rc.U = v1;
  for (Vertex v : rc.peeled) rc.U.reset(v);
  rc.R = L.induced(rc.U);
  rc.eta = static_cast<double>(v1.count()) / n;
  rc.trace.push_back("final t=" + std::to_string(parts.size()) + " |V1|=" + std::to_string(v1.count()) +
                     " |W|=" + std::to_string(rc.peeled.size()) + " |U|=" + std::to_string(rc.U.count()));
  if (rc.U.empty()) rc.trace.push_back("empty U");
  if (crossing != crossing_sum(L, parts)) throw std::logic_error("partition crossing bookkeeping drifted");
  return rc;
}

const char* to_string(InseparableVerdict::Status s) {
  switch (s) {
    case InseparableVerdict::Status::proved: return "proved";
    case InseparableVerdict::Status::refuted: return "refuted";
    case InseparableVerdict::Status::sampled_ok: return "sampled-ok";
  }
  return "?";
}

namespace {

struct CutTracker {
  const Graph& g;
  double min_side;
  double need;
  InseparableVerdict& out;

  void offer(const VertexSet& x, long e) {
    ++out.cuts_checked;
    int xs = x.count();
    int ys = g.order() - xs;
    if (xs < min_side - eps || ys < min_side - eps) return;
    if (e >= need - eps) return;
    if (out.status != InseparableVerdict::Status::refuted || e < out.cut_edges) {
      out.status = InseparableVerdict::Status::refuted;
      out.cut = x;
      out.cut_edges = e;
    }
  }
};

}  // namespace

InseparableVerdict check_inseparable(const Graph& g, double mu, InseparableMode mode, int samples, std::uint64_t seed) {
  InseparableVerdict out;
  const int k = g.order();
  if (mode == InseparableMode::exhaustive && k > 22)
    throw PreconditionError("exhaustive inseparability check limited to 22 vertices");
  out.status = mode == InseparableMode::exhaustive ? InseparableVerdict::Status::proved
                                                   : InseparableVerdict::Status::sampled_ok;
  out.cut = VertexSet(g.universe());
  const double min_side = mu * k;
  const double need = mu * mu * k * k;

  g.vertices().for_each([&](Vertex v) {
    if (out.degree_failure) return;
    if (g.degree(v) < min_side - eps) {
      out.degree_failure = true;
      out.low_vertex = v;
      out.status = InseparableVerdict::Status::refuted;
    }
  });
  if (out.degree_failure) return out;

  CutTracker tracker{g, min_side, need, out};
  auto verts = g.vertices().to_vector();

  if (mode == InseparableMode::exhaustive) {
    if (k < 2) return out;
    std::vector<std::uint32_t> adj(k, 0);
    std::vector<int> idx(g.universe(), -1);
    for (int i = 0; i < k; ++i) idx[verts[i]] = i;
    for (int i = 0; i < k; ++i)
      g.neighbors(verts[i]).for_each([&](Vertex v) {
        if (idx[v] >= 0) adj[i] |= 1u << idx[v];
      });
    // vertex index 0 stays in Y; Gray code over the rest
    const std::uint32_t all = (k == 32) ? ~0u : ((1u << k) - 1);
    std::uint32_t xmask = 0;
    long e = 0;
    const std::uint64_t steps = std::uint64_t{1} << (k - 1);
    for (std::uint64_t step = 1; step < steps; ++step) {
      int i = std::countr_zero(step) + 1;
      std::uint32_t b = 1u << i;
      std::uint32_t ymask = all & ~xmask;
      if (xmask & b) {
        e += std::popcount(adj[i] & (xmask & ~b)) - std::popcount(adj[i] & ymask);
        xmask &= ~b;
      } else {
        e += std::popcount(adj[i] & (ymask & ~b)) - std::popcount(adj[i] & xmask);
        xmask |= b;
      }
      ++out.cuts_checked;
      int xs = std::popcount(xmask);
      if (xs < min_side - eps || k - xs < min_side - eps || e >= need - eps) continue;
      if (out.status != InseparableVerdict::Status::refuted || e < out.cut_edges) {
        out.status = InseparableVerdict::Status::refuted;
        out.cut_edges = e;
        VertexSet x(g.universe());
        for (int j = 0; j < k; ++j)
          if (xmask >> j & 1u) x.set(verts[j]);
        out.cut = std::move(x);
      }
    }
    return out;
  }

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    VertexSet x(g.universe());
    for (Vertex v : verts)
      if (rng.below(2) == 1) x.set(v);
    tracker.offer(x, g.edges_between(x, g.vertices() - x));
  }
  // greedy cuts grown from the lowest-degree vertices
  std::vector<Vertex> starts = verts;
  std::stable_sort(starts.begin(), starts.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  if (static_cast<int>(starts.size()) > samples) starts.resize(samples);
  for (Vertex s0 : starts) {
    VertexSet x(g.universe());
    x.set(s0);
    VertexSet y = g.vertices() - x;
    long e = g.degree(s0);
    while (y.count() >= min_side - eps && y.count() > 1) {
      tracker.offer(x, e);
      Vertex best = -1;
      long best_delta = std::numeric_limits<long>::max();
      y.for_each([&](Vertex v) {
        long delta = static_cast<long>(g.neighbors(v).intersect_count(y)) - g.neighbors(v).intersect_count(x);
        if (delta < best_delta) {
          best_delta = delta;
          best = v;
        }
      });
      x.set(best);
      y.reset(best);
      e += best_delta;
    }
  }
  return out;
}

RobustnessReport check_robust(const Graph& g, double beta, int ell, std::uint64_t pair_budget, std::uint64_t seed) {
  if (ell < 3 || ell % 2 == 0) throw PreconditionError("ell must be odd and >= 3");
  RobustnessReport rep;
  rep.ell = ell;
  auto verts = g.vertices().to_vector();
  const std::uint64_t k = verts.size();
  if (k < 2) return rep;
  const double denom = std::pow(static_cast<double>(k), ell - 1);
  double best = std::numeric_limits<double>::infinity();
  auto eval = [&](Vertex x, Vertex y) {
    BigCount c = count_paths(g, x, y, ell);
    double ratio = c.convert_to<double>() / denom;
    best = std::min(best, ratio);
    ++rep.pairs_checked;
  };
  const std::uint64_t unordered = k * (k - 1) / 2;
  if (unordered <= pair_budget) {
    for (std::uint64_t i = 0; i < k; ++i)
      for (std::uint64_t j = i + 1; j < k; ++j) eval(verts[i], verts[j]);
  } else {
    rep.partial = true;
    Rng rng(seed);
    for (std::uint64_t s = 0; s < pair_budget; ++s) {
      std::uint64_t i = rng.below(k), j = rng.below(k - 1);
      if (j >= i) ++j;
      eval(verts[i], verts[j]);
    }
  }
  rep.beta_observed = best;
  rep.robust = best >= beta;
  return rep;
}

const char* to_string(IntersectionResult::Verdict v) {
  switch (v) {
    case IntersectionResult::Verdict::pass: return "pass";
    case IntersectionResult::Verdict::fail: return "fail";
    case IntersectionResult::Verdict::hypotheses_unmet: return "hypotheses-unmet";
  }
  return "?";
}

bool intersection_hypotheses(const RobustCandidate& r, double alpha, int n) {
  double u = r.U.count();
  double nn = n;
  if (u < (2.0 / 3.0 + alpha / 2.0) * nn - eps) return false;
  double need = (5.0 / 9.0 + alpha / 2.0) * nn * nn / 2.0 - (nn - u) * (nn - u) / 2.0;
  return static_cast<double>(r.R.edge_count()) >= need - eps;
}

IntersectionResult intersection_check(const RobustCandidate& r1, const RobustCandidate& r2, double alpha, int n) {
  if (r1.R.universe() != n || r2.R.universe() != n) throw PreconditionError("candidates over different vertex sets");
  IntersectionResult res;
  long twice = 0;
  r1.U.for_each([&](Vertex v) { twice += r1.R.neighbors(v).intersect_count(r2.R.neighbors(v)); });
  res.count = twice / 2;
  if (intersection_hypotheses(r1, alpha, n) && intersection_hypotheses(r2, alpha, n))
    res.verdict = res.count >= alpha * n * n / 2.0 - eps ? IntersectionResult::Verdict::pass
                                                        : IntersectionResult::Verdict::fail;
  return res;
}

}  // namespace tightham
