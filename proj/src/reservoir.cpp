#include "tightham/reservoir.hpp"

#include <cmath>

#include "tightham/errors.hpp"
#include "tightham/numeric.hpp"
#include "tightham/rng.hpp"

namespace tightham {

Reservoir sample_reservoir(const Hypergraph3& h, double theta_star, int ell, std::uint64_t seed, int retries,
                           std::optional<int> min_size) {
  const int n = h.n();
  const double t2n = theta_star * theta_star * n;
  if (t2n < 8 - 1e-9) throw PreconditionError("reservoir window is vacuous: theta*^2 n = " + std::to_string(t2n) + " < 8");
  if (ell < 3 || ell % 2 == 0) throw PreconditionError("ell must be odd and >= 3");
  long lo = ceil_count(t2n / 2);
  long hi = floor_count(t2n);
  if (min_size) lo = std::max<long>(lo, *min_size);
  if (lo > hi) throw PreconditionError("reservoir window [" + std::to_string(lo) + "," + std::to_string(hi) + "] is empty");
  const double p = (1.0 - 1.0 / (10.0 * ell)) * theta_star * theta_star;
  Rng rng(seed);
  for (int attempt = 1; attempt <= retries; ++attempt) {
    VertexSet members(n);
    for (Vertex v = 0; v < n; ++v)
      if (rng.bernoulli(p)) members.set(v);
    int size = members.count();
    if (size >= lo && size <= hi) {
      Reservoir res;
      res.members = std::move(members);
      res.used = VertexSet(n);
      res.theta_star = theta_star;
      res.seed = seed;
      res.attempts = attempt;
      return res;
    }
  }
  throw StageFailure("reservoir", "size window [" + std::to_string(lo) + "," + std::to_string(hi) + "] not hit in " +
                                      std::to_string(retries) + " samples");
}

ReservoirValidation validate_reservoir(const Hypergraph3& h, const RobustFamily& fam, const Reservoir& res,
                                       double zeta2, int ell, int sample, std::uint64_t seed,
                                       const ConnectOptions& search) {
  ReservoirValidation out;
  const int n = h.n();
  const int internal = connecting_internal_vertices(ell);
  VertexSet avail = res.available();
  if (avail.count() < internal) {
    out.diagnosis = "reservoir holds " + std::to_string(avail.count()) + " free vertices, a connection needs " +
                    std::to_string(internal);
    return out;
  }
  auto pairs = connectable_pairs(fam, zeta2);
  if (pairs.size() < 2) {
    out.diagnosis = "fewer than two connectable pairs";
    return out;
  }
  Rng rng(seed);
  for (int s = 0; s < sample; ++s) {
    // endpoints outside the reservoir when possible
    std::pair<Vertex, Vertex> p, q;
    bool ok = false;
    for (int tries = 0; tries < 200 && !ok; ++tries) {
      p = pairs[rng.below(static_cast<int>(pairs.size()))];
      q = pairs[rng.below(static_cast<int>(pairs.size()))];
      ok = p.first != q.first && p.first != q.second && p.second != q.first && p.second != q.second;
      if (ok && tries < 150)
        for (Vertex v : {p.first, p.second, q.first, q.second})
          if (res.members.test(v)) ok = false;
    }
    if (!ok) continue;
    ConnectRequest req;
    req.start = p;
    req.end = q;
    req.zeta = zeta2;
    req.ell = ell;
    req.avoid = VertexSet::full(n) - avail;
    ConnectOptions o = search;
    o.seed = derive_seed(seed, "validate", static_cast<std::uint64_t>(s));
    ++out.attempted;
    auto r = find_connecting_path(h, fam, req, o);
    if (r.status == ConnectStatus::found) ++out.succeeded;
  }
  out.fraction = out.attempted ? static_cast<double>(out.succeeded) / out.attempted : 0.0;
  if (!out.attempted) out.diagnosis = "no disjoint pair-pairs sampled";
  return out;
}

TightPath connect_through_reservoir(const Hypergraph3& h, const RobustFamily& fam, Reservoir& res, OrderedPair start,
                                    OrderedPair end, const ReservoirUse& use) {
  const int n = h.n();
  long cap = use.used_cap ? *use.used_cap : floor_count(2 * use.theta_2star * use.theta_2star * n);
  int used = res.used.count();
  if (used > cap)
    throw ReservoirError(ReservoirFailure::cap_exceeded,
                         "reservoir already used " + std::to_string(used) + " > cap " + std::to_string(cap));
  VertexSet avail = res.available();
  for (Vertex v : {start.first, start.second, end.first, end.second}) avail.reset(v);
  if (avail.count() < connecting_internal_vertices(use.ell))
    throw ReservoirError(ReservoirFailure::depleted,
                         "only " + std::to_string(avail.count()) + " reservoir vertices left");
  ConnectRequest req;
  req.start = start;
  req.end = end;
  req.zeta = use.zeta2;
  req.ell = use.ell;
  req.avoid = VertexSet::full(n) - avail;
  auto r = find_connecting_path(h, fam, req, use.search);
  if (r.status != ConnectStatus::found)
    throw ReservoirError(ReservoirFailure::exhausted,
                         std::string("reservoir connection ") + to_string(r.status) + " after " +
                             std::to_string(r.nodes) + " nodes");
  const auto& seq = r.path->seq();
  for (std::size_t i = 2; i + 2 < seq.size(); ++i) {
    if (!avail.test(seq[i])) throw std::logic_error("connection left the free reservoir");
    res.used.set(seq[i]);
  }
  return *r.path;
}

}  // namespace tightham
