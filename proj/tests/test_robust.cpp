#include <algorithm>

#include "doctest.h"
#include "tightham/constructions.hpp"
#include "tightham/errors.hpp"
#include "tightham/robust.hpp"

using namespace tightham;

namespace {

Graph two_cliques(int k, bool bridge) {
  Graph g(2 * k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      g.add_edge(a, b);
      g.add_edge(k + a, k + b);
    }
  if (bridge) g.add_edge(k - 1, k);
  return g;
}

}  // namespace

TEST_SUITE("robust") {

TEST_CASE("two disjoint cliques split along the components") {
  auto g = two_cliques(8, false);
  auto r = extract_robust_subgraph(g, 0.1);
  REQUIRE(r.partition.size() >= 2);
  CHECK(r.U.count() == 8);
  CHECK((r.U == VertexSet::from(16, {0, 1, 2, 3, 4, 5, 6, 7}) || r.U == VertexSet::from(16, {8, 9, 10, 11, 12, 13, 14, 15})));
  CHECK(r.R.edge_count() == 28);
  CHECK(r.crossing_edges() == 0);
}

TEST_CASE("an isolated vertex next to K10 is peeled off") {
  Graph g(11);
  for (int a = 0; a < 10; ++a)
    for (int b = a + 1; b < 10; ++b) g.add_edge(a, b);
  auto r = extract_robust_subgraph(g, 0.2);
  CHECK(r.U == VertexSet::from(11, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
  bool gone = std::count(r.peeled.begin(), r.peeled.end(), 10) + std::count(r.split_peeled.begin(), r.split_peeled.end(), 10);
  CHECK(gone);
  CHECK(r.R.edge_count() == 45);
}

TEST_CASE("inseparability, exhaustive") {
  auto k10 = Graph::complete(10);
  auto v = check_inseparable(k10, 0.2, InseparableMode::exhaustive);
  CHECK(v.status == InseparableVerdict::Status::proved);

  auto g = two_cliques(6, true);
  auto w = check_inseparable(g, 0.3, InseparableMode::exhaustive);
  CHECK(w.status == InseparableVerdict::Status::refuted);
  CHECK(w.cut_edges == 1);
  CHECK(w.cut.count() == 6);
}

TEST_CASE("inseparability, sampled mode finds the bridge cut") {
  auto g = two_cliques(12, true);
  auto v = check_inseparable(g, 0.3, InseparableMode::sampled, 32, 5);
  CHECK(v.status == InseparableVerdict::Status::refuted);
  CHECK(check_inseparable(Graph::complete(30), 0.2, InseparableMode::sampled).status ==
        InseparableVerdict::Status::sampled_ok);
}

TEST_CASE("degree failure is reported") {
  Graph g = Graph::complete(10);
  for (int u = 1; u < 10; ++u) g.remove_edge(0, u);
  auto v = check_inseparable(g, 0.2, InseparableMode::exhaustive);
  CHECK(v.status == InseparableVerdict::Status::refuted);
  CHECK(v.degree_failure);
  CHECK(v.low_vertex == 0);
}

TEST_CASE("robustness of K6 and C6") {
  auto rep = check_robust(Graph::complete(6), 0.3, 3);
  CHECK(rep.robust);
  CHECK(rep.beta_observed == doctest::Approx(12.0 / 36.0));
  Graph c6(6);
  for (int i = 0; i < 6; ++i) c6.add_edge(i, (i + 1) % 6);
  CHECK_FALSE(check_robust(c6, 0.01, 3).robust);
}

TEST_CASE("extracted subgraphs are induced and avoid the peeled vertices") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    auto h = random_hypergraph(30, 0.6, s);
    for (Vertex v = 0; v < 30; v += 7) {
      auto L = h.link_graph(v);
      auto r = extract_robust_subgraph(L, 0.2);
      CHECK(r.R == L.induced(r.U));
      for (Vertex w : r.peeled) CHECK_FALSE(r.U.test(w));
      for (Vertex w : r.split_peeled) CHECK_FALSE(r.U.test(w));
      CHECK_FALSE(r.U.test(v));
      CHECK(r.mu == doctest::Approx(0.2 / 72));
    }
  }
}

TEST_CASE("intersection property on dense random hypergraphs") {
  auto h = random_hypergraph(60, 0.9, 11);
  const double alpha = 0.2;
  std::vector<RobustCandidate> cs;
  for (Vertex v = 0; v < 8; ++v) cs.push_back(extract_robust_subgraph(h.link_graph(v), alpha));
  int checked = 0;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      auto r = intersection_check(cs[i], cs[j], alpha, 60);
      if (r.verdict == IntersectionResult::Verdict::hypotheses_unmet) continue;
      ++checked;
      CHECK(r.verdict == IntersectionResult::Verdict::pass);
      CHECK(r.count >= alpha * 60 * 60 / 2);
    }
  CHECK(checked > 0);
}

}  // TEST_SUITE
