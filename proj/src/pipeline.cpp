#include "tightham/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json.hpp"

#include "tightham/absorb.hpp"
#include "tightham/connect.hpp"
#include "tightham/errors.hpp"
#include "tightham/numeric.hpp"
#include "tightham/reservoir.hpp"
#include "tightham/rng.hpp"

namespace tightham {

void validate_config(const PipelineConfig& cfg, int n) {
  auto fail = [](const std::string& why) { throw PreconditionError(why); };
  if (cfg.ell < 3 || cfg.ell % 2 == 0) fail("ell must be odd and at least 3");
  if (cfg.M < 2 || cfg.M % 3 != 2) fail("M must be 2 mod 3");
  if (cfg.m < 1) fail("m must be positive");
  if (cfg.alpha <= 0 || cfg.alpha > 1) fail("alpha must lie in (0, 1]");
  for (double z : {cfg.zeta_star, cfg.zeta_2star, cfg.theta_star, cfg.theta_2star})
    if (z <= 0 || z > 1) fail("zeta and theta constants must lie in (0, 1]");
  if (n < cfg.min_n) fail("n = " + std::to_string(n) + " is below the minimum " + std::to_string(cfg.min_n));
  if (cfg.attempts < 1) fail("attempts must be positive");
  if (cfg.mode == LongPathMode::faithful &&
      !(cfg.alpha > cfg.zeta_star && cfg.zeta_star > cfg.theta_star && cfg.theta_star > cfg.zeta_2star &&
        cfg.zeta_2star > cfg.theta_2star))
    fail("faithful mode needs alpha > zeta* > theta* > zeta** > theta**");
}

namespace {

using steady = std::chrono::steady_clock;

double ms_since(steady::time_point t0) {
  return std::chrono::duration<double, std::milli>(steady::now() - t0).count();
}

int default_tuples(const PipelineConfig& cfg, int n) {
  const int conn = connecting_internal_vertices(cfg.ell);
  int k = 0;
  while (9 * (k + 1) + (2 * (k + 1) - 1) * conn <= cfg.theta_star * n + 1e-9) ++k;
  return k;
}

std::vector<Vertex> internal(const TightPath& p) { return {p.seq().begin() + 2, p.seq().end() - 2}; }

std::vector<Vertex> assemble(const std::vector<Vertex>& pa, const TightPath& c1, const std::vector<Vertex>& q,
                             const TightPath& c2) {
  std::vector<Vertex> out = pa;
  auto a = internal(c1), b = internal(c2);
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), q.begin(), q.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class Attempt {
 public:
  Attempt(const Hypergraph3& h, const RobustFamily& fam, const PipelineConfig& cfg, int index, int tuples,
          HamResult& out)
      : h_(h), fam_(fam), cfg_(cfg), index_(index), k_(tuples), out_(out), n_(h.n()),
        seed_(derive_seed(cfg.seed, "attempt", static_cast<std::uint64_t>(index))) {}

  std::vector<Vertex> run() {
    const int conn = connecting_internal_vertices(cfg_.ell);
    const bool desk = cfg_.mode == LongPathMode::desk;

    // reservoir
    begin("reservoir");
    Reservoir res;
    try {
      res = sample_reservoir(h_, cfg_.theta_star, cfg_.ell, derive_seed(seed_, "reservoir"), 200,
                             desk ? std::optional<int>(2 * conn) : std::nullopt);
    } catch (const PreconditionError& e) {
      throw StageFailure("reservoir", e.what());
    }
    count("sampled", res.members.count());
    if (desk) {
      int keep = cfg_.reservoir_keep.value_or(2 * conn + k_);
      if (res.members.count() > keep) {
        Rng rng(derive_seed(seed_, "reservoir-trim"));
        res.members = VertexSet::from(n_, rng.sample(res.members, keep));
      }
    }
    count("members", res.members.count());
    ConnectOptions search;
    search.budget = cfg_.connect_budget;
    search.seed = derive_seed(seed_, "search");
    res.validation = validate_reservoir(h_, fam_, res, cfg_.zeta_2star, cfg_.ell, 4, derive_seed(seed_, "validate"), search);
    count("validation_fraction", res.validation.fraction);
    end();

    // absorbers
    begin("absorber-family");
    FamilyConfig fc;
    fc.zeta_star = cfg_.zeta_star;
    fc.theta_star = cfg_.theta_star;
    fc.alpha = cfg_.alpha;
    fc.cover_min = desk ? 0 : 2;
    fc.max_tuples = static_cast<std::size_t>(k_);
    fc.seed = derive_seed(seed_, "absorbers");
    fc.budget = cfg_.absorber_budget;
    AbsorberFamily family = choose_absorber_family(h_, fam_, res, fc);
    if (family.tuples.empty()) throw StageFailure("absorber-family", "no absorber tuple outside the reservoir");
    count("tuples", static_cast<double>(family.tuples.size()));
    end();

    begin("absorbing-path");
    AbsorbingPathConfig ac;
    ac.zeta_star = cfg_.zeta_star;
    ac.ell = cfg_.ell;
    ac.search = search;
    ac.search.seed = derive_seed(seed_, "absorbing-path");
    AbsorbingPath pa = build_absorbing_path(h_, fam_, res, family, ac);
    count("vertices", static_cast<double>(pa.path.size()));
    if (pa.path.size() > cfg_.theta_star * n_ + 1e-9)
      throw StageFailure("absorbing-path", "absorbing path has " + std::to_string(pa.path.size()) +
                                               " vertices, above theta* n");
    end();

    // long path on H - V(P_A)
    begin("longpath");
    VertexSet hat = VertexSet::full(n_) - pa.path.vertex_set(n_);
    LongPathConfig lc;
    lc.mode = cfg_.mode;
    lc.M = cfg_.M;
    lc.m = cfg_.m;
    lc.alpha = cfg_.alpha;
    lc.ell = cfg_.ell;
    lc.zeta2 = cfg_.zeta_2star;
    lc.theta_star = cfg_.theta_star;
    lc.theta_2star = cfg_.theta_2star;
    if (desk) {
      lc.leftover_cap = static_cast<int>(family.tuples.size());
      lc.reservoir_use_cap = std::max(0, res.members.count() - 2 * conn);
    }
    lc.reserve_for_closing = 2 * conn;
    lc.budget = cfg_.longpath_budget;
    lc.society_budget = cfg_.society_budget;
    lc.seed = derive_seed(seed_, "longpath");
    lc.search = search;
    if (cfg_.candidate_observer) {
      rules_.M = cfg_.M;
      rules_.alpha = cfg_.alpha;
      rules_.ell = cfg_.ell;
      rules_.zeta2 = cfg_.zeta_2star;
      rules_.hat = hat;
      lc.observer = [this, &res](const Candidate& c) { cfg_.candidate_observer({c, res.members, rules_}); };
    }
    LongPathResult lp = build_long_path(h_, hat, fam_, res, lc);
    count("pieces", static_cast<double>(lp.candidate.pieces.size()));
    count("q_vertices", static_cast<double>(lp.candidate.Q.size()));
    count("uncovered", lp.uncovered);
    count("augmentations", lp.augmentations);
    if (!lp.ok) throw StageFailure("longpath", lp.failure);
    end();

    // leftovers: uncovered vertices plus reservoir vertices the closing connections will not need
    begin("plan-leftovers");
    const TightPath& q = lp.candidate.Q;
    VertexSet left = (hat - res.members) - q.vertex_set(n_);
    std::vector<Vertex> xs = left.to_vector();
    if (!assign_absorbers(pa.family, xs))
      throw StageFailure("absorb", std::to_string(xs.size()) + " uncovered vertices cannot be matched to absorbers");
    const int spare = res.available().count() - 2 * conn;
    if (spare < 0) throw StageFailure("connect", "reservoir too small for the two closing connections");
    VertexSet spare_set(n_);
    {
      Rng rng(derive_seed(seed_, "spare"));
      auto pool = res.available().to_vector();
      rng.shuffle(pool);
      for (Vertex v : pool) {
        if (spare_set.count() == spare) break;
        auto trial = xs;
        trial.push_back(v);
        if (assign_absorbers(pa.family, trial)) {
          xs = std::move(trial);
          spare_set.set(v);
        }
      }
    }
    if (spare_set.count() < spare)
      throw StageFailure("absorb", "only " + std::to_string(spare_set.count()) + " of " + std::to_string(spare) +
                                       " spare reservoir vertices are absorbable");
    count("leftovers", static_cast<double>(xs.size()));
    end();

    // close P_A and Q through the reservoir
    begin("connect");
    std::optional<TightPath> c1, c2;
    std::vector<Vertex> qseq;
    std::string last_error = "no attempt";
    for (int t = 0; t < cfg_.close_retries && !c2; ++t) {
      Reservoir trial = res;
      trial.members -= spare_set;
      qseq = q.seq();
      if (t % 2 == 1) std::reverse(qseq.begin(), qseq.end());
      ReservoirUse use;
      use.zeta2 = cfg_.zeta_2star;
      use.theta_2star = cfg_.theta_2star;
      use.ell = cfg_.ell;
      if (desk) use.used_cap = res.members.count();
      use.search = search;
      try {
        use.search.seed = derive_seed(seed_, "close-1", static_cast<std::uint64_t>(t));
        c1 = connect_through_reservoir(h_, fam_, trial, pa.path.end_pair(), {qseq[0], qseq[1]}, use);
        use.search.seed = derive_seed(seed_, "close-2", static_cast<std::uint64_t>(t));
        c2 = connect_through_reservoir(h_, fam_, trial, {qseq[qseq.size() - 2], qseq.back()}, pa.path.start_pair(), use);
        res.used = trial.used;
      } catch (const ReservoirError& e) {
        last_error = e.what();
        c1.reset();
        c2.reset();
      }
    }
    if (!c2) throw StageFailure("connect", last_error);
    count("reservoir_used", res.used.count());
    end();

    // absorb the leftovers into P_A and revalidate
    begin("absorb");
    auto before = assemble(pa.path.seq(), *c1, qseq, *c2);
    TightPath(h_, before, true);
    VertexSet missing = VertexSet::full(n_) - VertexSet::from(n_, before);
    if (missing != VertexSet::from(n_, xs)) throw std::logic_error("leftover bookkeeping drifted");
    AbsorbOptions ao;
    if (!desk) ao.cap = static_cast<int>(floor_count(2 * cfg_.theta_star * cfg_.theta_star * n_));
    TightPath pa2 = absorb_vertices(h_, pa, xs, ao);
    auto cycle = assemble(pa2.seq(), *c1, qseq, *c2);
    TightPath(h_, cycle, true);
    count("absorbed", static_cast<double>(xs.size()));
    end();
    return cycle;
  }

 private:
  void begin(std::string stage) {
    cur_ = StageReport{};
    cur_.stage = std::move(stage);
    cur_.counters["attempt"] = index_;
    t0_ = steady::now();
  }
  void count(const std::string& key, double v) { cur_.counters[key] = v; }
  void end() {
    cur_.elapsed_ms = ms_since(t0_);
    out_.stages.push_back(cur_);
  }

 public:
  void flush_failed(const std::string& note) {
    cur_.elapsed_ms = ms_since(t0_);
    cur_.note = note;
    out_.stages.push_back(cur_);
  }
  const std::string& current_stage() const { return cur_.stage; }

 private:
  const Hypergraph3& h_;
  const RobustFamily& fam_;
  const PipelineConfig& cfg_;
  int index_;
  int k_;
  HamResult& out_;
  int n_;
  std::uint64_t seed_;
  CandidateRules rules_;
  StageReport cur_;
  steady::time_point t0_;
};

}  // namespace

HamResult run_pipeline(const Hypergraph3& h, const PipelineConfig& cfg) {
  HamResult r;
  const int n = h.n();
  auto fail = [&](std::string stage, std::string why) {
    r.outcome = HamResult::Outcome::stage_failure;
    r.failed_stage = std::move(stage);
    r.diagnosis = std::move(why);
    r.cycle.clear();
  };
  try {
    validate_config(cfg, n);
  } catch (const PreconditionError& e) {
    fail("config", e.what());
    return r;
  }
  const int k = cfg.max_tuples.value_or(default_tuples(cfg, n));
  if (k < 1) {
    fail("config", "theta* n too small for a single absorber");
    return r;
  }

  auto t0 = steady::now();
  RobustFamily fam = RobustFamily::from_hypergraph(h, cfg.alpha);
  StageReport rs;
  rs.stage = "robust";
  long nonempty = 0, edges = 0;
  for (Vertex v = 0; v < n; ++v) {
    nonempty += fam.robust_graph(v).order() > 0;
    edges += fam.robust_graph(v).edge_count();
  }
  rs.counters["nonempty"] = static_cast<double>(nonempty);
  rs.counters["edges"] = static_cast<double>(edges);
  rs.counters["connectable_pairs"] = static_cast<double>(connectable_pairs(fam, cfg.zeta_2star).size());
  rs.elapsed_ms = ms_since(t0);
  r.stages.push_back(rs);

  for (int a = 0; a < cfg.attempts; ++a) {
    r.attempts = a + 1;
    Attempt at(h, fam, cfg, a, k, r);
    try {
      auto cycle = at.run();
      r.certificate = certify_cycle(h, cycle);
      if (!r.certificate.accepted) {
        fail("certificate", r.certificate.detail);
        return r;
      }
      r.outcome = HamResult::Outcome::cycle;
      r.cycle = std::move(cycle);
      r.failed_stage.clear();
      r.diagnosis.clear();
      return r;
    } catch (const StageFailure& e) {
      at.flush_failed(e.what());
      fail(e.stage(), e.what());
    } catch (const PreconditionError& e) {
      at.flush_failed(e.what());
      fail(at.current_stage(), e.what());
    } catch (const BudgetError& e) {
      at.flush_failed(e.what());
      fail(at.current_stage(), std::string("budget: ") + e.what());
    }
  }
  return r;
}

std::string to_json(const HamResult& r, bool with_timing) {
  nlohmann::ordered_json j;
  j["outcome"] = r.outcome == HamResult::Outcome::cycle ? "cycle" : "stage_failure";
  if (r.outcome == HamResult::Outcome::cycle) j["cycle"] = r.cycle;
  else {
    j["stage"] = r.failed_stage;
    j["diagnosis"] = r.diagnosis;
  }
  j["attempts"] = r.attempts;
  j["certificate"] = {{"checked", r.certificate.checked}, {"accepted", r.certificate.accepted},
                      {"detail", r.certificate.detail}};
  auto& stages = j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : r.stages) {
    nlohmann::ordered_json e;
    e["stage"] = s.stage;
    if (with_timing) e["elapsed_ms"] = s.elapsed_ms;
    e["counters"] = s.counters;
    if (!s.note.empty()) e["note"] = s.note;
    stages.push_back(std::move(e));
  }
  return j.dump(2);
}

}  // namespace tightham
