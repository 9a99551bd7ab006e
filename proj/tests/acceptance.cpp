// one PASS/FAIL line per acceptance criterion; exit status is the number of failures
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "brute.hpp"
#include "tightham/absorb.hpp"
#include "tightham/connect.hpp"
#include "tightham/errors.hpp"
#include "tightham/constructions.hpp"
#include "tightham/longpath.hpp"
#include "tightham/oracle.hpp"
#include "tightham/pipeline.hpp"
#include "tightham/reservoir.hpp"
#include "tightham/rng.hpp"
#include "tightham/robust.hpp"

using namespace tightham;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d %s  %-28s %s (%.1fs)\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), s);
  std::fflush(stdout);
  failures += !o.pass;
}

std::string str(long v) { return std::to_string(v); }

Outcome extremal() {
  int runs = 0;
  for (auto kind : {ExtremalKind::i, ExtremalKind::ii, ExtremalKind::iii})
    for (int n = 7; n <= 13; ++n) {
      auto h = extremal_example(kind, n);
      auto r = find_tight_ham_cycle(h);
      if (r.status != SearchStatus::none) return {false, "cycle or budget at n=" + str(n)};
      if (kind == ExtremalKind::iii) {
        auto m = max_matching_size(h);
        if (!m.exact || m.size >= n / 3) return {false, "matching too large at n=" + str(n)};
      }
      ++runs;
    }
  return {true, str(runs) + " instances without a cycle"};
}

Outcome complete() {
  for (int n = 4; n <= 14; ++n) {
    auto h = complete_hypergraph(n);
    auto r = find_tight_ham_cycle(h);
    if (r.status != SearchStatus::found || !validate_tight(h, r.cycle->seq(), true).ok())
      return {false, "no validated cycle at n=" + str(n)};
  }
  return {true, "K4..K14 all found"};
}

Outcome degrees() {
  auto d = min_degrees(extremal_example(ExtremalKind::i, 9));
  auto e = brute::edge_set(extremal_example(ExtremalKind::i, 9));
  int bd = 1 << 30, bp = 1 << 30;
  for (int v = 0; v < 9; ++v) {
    bd = std::min(bd, brute::degree(e, v));
    for (int w = v + 1; w < 9; ++w) bp = std::min(bp, brute::pair_degree(e, v, w));
  }
  bool ok = d.min_degree == 13 && d.min_pair_degree == 2 && bd == 13 && bp == 2;
  const std::size_t want[3] = {54, 39, 49};
  int i = 0;
  for (auto kind : {ExtremalKind::i, ExtremalKind::ii, ExtremalKind::iii}) {
    auto h = extremal_example(kind, 9);
    ok = ok && h.edge_count() == want[i] && brute::edge_set(h).size() == want[i];
    ++i;
  }
  return {ok, "(" + str(d.min_degree) + "," + str(d.min_pair_degree) + ") edges 54/39/49"};
}

Outcome oracle_equivalence() {
  long checks = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    int n = 2 + static_cast<int>(s % 7);
    auto g = brute::random_graph(n, 0.2 + 0.1 * static_cast<double>(s % 7), s);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int len = 0; len <= 4; ++len) {
          if (count_paths(g, x, y, len) != brute::count_paths(g, x, y, len)) return {false, "paths differ, seed " + str(s)};
          ++checks;
        }
  }
  for (std::uint64_t s = 0; s < 200; ++s) {
    int n = 2 + static_cast<int>(s % 11);
    auto g = brute::random_graph(n, 0.5, 1000 + s);
    for (int x = 0; x < n; ++x)
      for (int len = 0; len <= 6; ++len) {
        int y = (x * 7 + len) % n;
        if (count_walks(g, x, y, len) != brute::count_walks(g, x, y, len)) return {false, "walks differ, seed " + str(s)};
        if (count_walks(g, x, y, len) < count_paths(g, x, y, len)) return {false, "walks below paths"};
        ++checks;
      }
  }
  return {true, str(checks) + " counts equal"};
}

// the bound is checked as stated, with longest_path counted in edges; when lambda |V| is not an
// integer a clique on ceil(lambda |V|) vertices is admitted, and the rounded column re-checks
// with lambda' = ceil(lambda |V|) / |V| for comparison only
Outcome faudree_schelp() {
  const double lambdas[] = {0.55, 2.0 / 3.0, 0.8, 1.0};
  long tested = 0, bad = 0, bad_rounded = 0;
  std::string first;
  for (std::uint64_t s = 0; s < 500; ++s) {
    int n = 3 + static_cast<int>(s % 10);
    Graph g = brute::random_graph(n, 0.05 + 0.9 * static_cast<double>(s % 19) / 18.0, s);
    if (s % 5 == 0) {
      // two cliques, the extremal shape
      g = Graph(n);
      int k = 1 + static_cast<int>(s / 5) % (n - 1);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if ((a < k) == (b < k)) g.add_edge(a, b);
    }
    int lp = longest_path(g);
    for (double lam : lambdas)
      if (lp < lam * n) {
        ++tested;
        if (g.edge_count() > fs_bound(lam, n) + 1e-9) {
          if (first.empty())
            first = "n=" + str(n) + " e=" + str(g.edge_count()) + " longest=" + str(lp) + " lambda=" + std::to_string(lam);
          ++bad;
          double rounded = std::min(1.0, std::ceil(lam * n - 1e-9) / n);
          bad_rounded += g.edge_count() > fs_bound(rounded, n) + 1e-9;
        }
      }
  }
  std::string d = str(tested) + " (graph, lambda) cases, " + str(bad) + " counterexamples";
  if (bad) d += " (first: " + first + "; " + str(bad_rounded) + " remain with lambda rounded up to ceil(lambda n)/n)";
  return {bad == 0, d};
}

Outcome absorption() {
  long swaps = 0;
  for (std::uint64_t s = 1; swaps < 1000 && s <= 20; ++s) {
    auto h = random_hypergraph(80, 0.85, s);
    auto fam = RobustFamily::from_hypergraph(h, 0.2);
    auto res = sample_reservoir(h, 0.6, 3, s);
    FamilyConfig fc;
    fc.cover_min = 0;
    fc.max_tuples = 2;
    fc.seed = s;
    auto family = choose_absorber_family(h, fam, res, fc);
    if (family.tuples.empty()) continue;
    AbsorbingPathConfig ac;
    ac.search.seed = s;
    AbsorbingPath pa;
    try {
      pa = build_absorbing_path(h, fam, res, family, ac);
    } catch (const StageFailure&) {
      continue;
    }
    auto off = (VertexSet::full(80) - pa.path.vertex_set(80)).to_vector();
    Rng rng(s);
    for (int t = 0; t < 400 && swaps < 1000; ++t) {
      int k = 1 + rng.below(static_cast<int>(pa.family.tuples.size()));
      rng.shuffle(off);
      std::vector<Vertex> xs(off.begin(), off.begin() + k);
      auto assign = assign_absorbers(pa.family, xs);
      if (!assign) continue;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (!is_v_absorber(h, fam, pa.family.tuples[(*assign)[i]], xs[i], 0.25)) return {false, "unverified tuple"};
      auto out = absorb_vertices(h, pa, xs);
      if (!validate_tight(h, out.seq(), false).ok()) return {false, "invalid output path"};
      if (out.start_pair() != pa.path.start_pair() || out.end_pair() != pa.path.end_pair())
        return {false, "end pairs moved"};
      if (out.size() != pa.path.size() + xs.size()) return {false, "wrong size"};
      swaps += static_cast<long>(xs.size());
    }
  }
  return {swaps >= 1000, str(swaps) + " swaps, all valid"};
}

bool sound_connection(const Hypergraph3& h, const TightPath& p, OrderedPair s, OrderedPair e, int ell) {
  return p.length() == static_cast<std::size_t>(3 * (ell + 1)) && validate_tight(h, p.seq(), false).ok() &&
         p.start_pair() == s && p.end_pair() == e;
}

Outcome connections() {
  long direct = 0, through = 0;
  // free connections avoiding a random set
  for (std::uint64_t s = 1; direct < 600 && s <= 40; ++s) {
    auto h = random_hypergraph(36, 0.85, s);
    auto fam = RobustFamily::from_hypergraph(h, 0.2);
    auto pairs = connectable_pairs(fam, 0.15);
    if (pairs.empty()) continue;
    Rng rng(s);
    for (int t = 0; t < 40; ++t) {
      auto a = pairs[rng.below(static_cast<int>(pairs.size()))];
      auto b = pairs[rng.below(static_cast<int>(pairs.size()))];
      if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second) continue;
      VertexSet avoid(36);
      for (int k = 0; k < 6; ++k) avoid.set(rng.below(36));
      for (Vertex v : {a.first, a.second, b.first, b.second}) avoid.reset(v);
      auto r = find_connecting_path(h, fam, {a, b, 0.15, avoid, 3}, {50'000, s * 100 + t, 48});
      if (r.status != ConnectStatus::found) continue;
      if (!sound_connection(h, *r.path, a, b, 3)) return {false, "unsound free connection"};
      for (std::size_t i = 2; i + 2 < r.path->size(); ++i)
        if (avoid.test(r.path->seq()[i])) return {false, "avoid set touched"};
      ++direct;
    }
  }
  // through the reservoir, fresh vertices only
  for (std::uint64_t s = 1; direct + through < 1000 && s <= 40; ++s) {
    auto h = random_hypergraph(120, 0.85, s);
    auto fam = RobustFamily::from_hypergraph(h, 0.2);
    auto res = sample_reservoir(h, 0.6, 3, s);
    auto outside = (VertexSet::full(120) - res.members).to_vector();
    auto pairs = connectable_pairs(fam, 0.15);
    Rng rng(s);
    const VertexSet base = res.used;
    for (int t = 0; t < 120 && direct + through < 1000; ++t) {
      if (res.members.count() - res.used.count() < 10) res.used = base;
      auto a = pairs[rng.below(static_cast<int>(pairs.size()))];
      auto b = pairs[rng.below(static_cast<int>(pairs.size()))];
      VertexSet ends(120, {a.first, a.second, b.first, b.second});
      if (ends.count() < 4 || ends.intersects(res.members)) continue;
      ReservoirUse use;
      use.used_cap = res.members.count();
      use.search.seed = s * 1000 + t;
      VertexSet before = res.used;
      TightPath p;
      try {
        p = connect_through_reservoir(h, fam, res, a, b, use);
      } catch (const ReservoirError&) {
        continue;
      }
      if (!sound_connection(h, p, a, b, 3)) return {false, "unsound reservoir connection"};
      for (std::size_t i = 2; i + 2 < p.size(); ++i) {
        Vertex v = p.seq()[i];
        if (!res.members.test(v) || before.test(v)) return {false, "interior outside the fresh reservoir"};
      }
      ++through;
    }
  }
  return {direct + through >= 1000, str(direct) + " free + " + str(through) + " reservoir connections sound"};
}

Outcome intersection() {
  const double alpha = 0.2;
  long pairs = 0, checked = 0;
  for (std::uint64_t s = 1; pairs < 200; ++s) {
    auto h = random_hypergraph(60, 0.9, s);
    std::vector<RobustCandidate> cs;
    for (Vertex v = 0; v < 15; ++v) cs.push_back(extract_robust_subgraph(h.link_graph(v), alpha));
    for (std::size_t i = 0; i < cs.size() && pairs < 200; ++i)
      for (std::size_t j = i + 1; j < cs.size() && pairs < 200; ++j) {
        ++pairs;
        auto r = intersection_check(cs[i], cs[j], alpha, 60);
        if (r.verdict == IntersectionResult::Verdict::hypotheses_unmet) continue;
        ++checked;
        if (r.verdict != IntersectionResult::Verdict::pass || r.count < alpha * 60 * 60 / 2)
          return {false, "violation with |E cap E'| = " + str(r.count)};
      }
  }
  return {checked > 0, str(checked) + " of " + str(pairs) + " pairs met the hypotheses, 0 violations"};
}

Outcome pipeline() {
  int ok = 0, bad = 0;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    auto h = random_hypergraph(60, 0.85, s);
    PipelineConfig cfg;
    cfg.seed = s;
    auto r = run_pipeline(h, cfg);
    if (r.outcome == HamResult::Outcome::cycle) {
      if (!r.certificate.accepted || !brute::tight_ok(brute::edge_set(h), 60, r.cycle, true)) ++bad;
      else ++ok;
    }
  }
  PipelineConfig kc;
  auto k = run_pipeline(complete_hypergraph(60), kc);
  bool k_ok = k.ok() && brute::tight_ok(brute::edge_set(complete_hypergraph(60)), 60, k.cycle, true);
  return {bad == 0 && ok >= 10 && k_ok,
          "yield " + str(ok) + "/20, unsound " + str(bad) + ", K60 " + (k_ok ? "cycle" : "failed")};
}

Outcome candidates() {
  long seen = 0, violations = 0;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto h = random_hypergraph(60, 0.85, 100 + s);
    auto fam = RobustFamily::from_hypergraph(h, 0.2);
    PipelineConfig cfg;
    cfg.seed = s;
    cfg.candidate_observer = [&](const ObservedCandidate& o) {
      ++seen;
      violations += !check_candidate(h, fam, o.candidate, o.reservoir, o.rules).ok;
    };
    run_pipeline(h, cfg);
  }
  return {seen > 0 && violations == 0, str(seen) + " candidates, " + str(violations) + " violations"};
}

}  // namespace

int main() {
  run(1, "extremal non-hamiltonicity", extremal);
  run(2, "complete hypergraphs", complete);
  run(3, "degree formulas", degrees);
  run(4, "oracle equivalence", oracle_equivalence);
  run(5, "long path edge bound", faudree_schelp);
  run(6, "absorption soundness", absorption);
  run(7, "connection soundness", connections);
  run(8, "intersection property", intersection);
  run(9, "pipeline soundness and yield", pipeline);
  run(10, "candidate invariants", candidates);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
