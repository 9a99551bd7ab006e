#include <set>

#include "brute.hpp"
#include "doctest.h"
#include "tightham/connect.hpp"
#include "tightham/constructions.hpp"
#include "tightham/errors.hpp"
#include "tightham/oracle.hpp"
#include "tightham/reservoir.hpp"
#include "tightham/rng.hpp"

using namespace tightham;

namespace {

void check_connection(const Hypergraph3& h, const TightPath& p, OrderedPair s, OrderedPair e, int ell,
                      const VertexSet& avoid) {
  CHECK(p.length() == static_cast<std::size_t>(3 * (ell + 1)));
  CHECK(p.size() == static_cast<std::size_t>(3 * ell + 5));
  CHECK(brute::tight_ok(brute::edge_set(h), h.n(), p.seq(), false));
  CHECK(p.start_pair() == s);
  CHECK(p.end_pair() == e);
  for (std::size_t i = 2; i + 2 < p.size(); ++i)
    if (avoid.universe() == h.n()) CHECK_FALSE(avoid.test(p.seq()[i]));
}

}  // namespace

TEST_SUITE("connect") {

TEST_CASE("complete hypergraph: everything connectable") {
  auto h = complete_hypergraph(12);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  CHECK(fam.consistent());
  CHECK(connectable_pairs(fam, 0.5).size() == 66);
  CHECK(connectable_pairs(fam, 0.0).size() == 66);
  CHECK(count_bad_triples(fam, 0.1) == 0);
  CHECK(fam.holder_count(0, 1) == 10);
}

TEST_CASE("robust family must not hold v in R_v") {
  std::vector<Graph> gs(4, Graph(4));
  gs[0].add_edge(0, 1);
  CHECK_THROWS_AS(RobustFamily{gs}, PreconditionError);
}

TEST_CASE("bad triples in a hand-made family") {
  const int n = 20;
  const double zeta = 0.25;  // floor(zeta n) = 5
  std::vector<Graph> gs;
  for (int v = 0; v < n; ++v) {
    Graph g(n, VertexSet::full(n) - VertexSet(n, {v}));
    if (v >= 2 && v < 6) g.add_edge(0, 1);  // 4 = 5 - 1 holders
    gs.push_back(std::move(g));
  }
  RobustFamily fam(gs);
  CHECK(fam.holder_count(0, 1) == 4);
  CHECK_FALSE(fam.connectable(0, 1, zeta));
  CHECK(count_bad_triples(fam, zeta) == 2 * 4);
  CHECK(count_bad_triples(fam, 0.2) == 0);
}

TEST_CASE("connectable pairs match a naive recount and shrink with zeta") {
  auto h = random_hypergraph(40, 0.9, 2);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  std::set<std::pair<Vertex, Vertex>> naive;
  for (Vertex x = 0; x < 40; ++x)
    for (Vertex y = x + 1; y < 40; ++y) {
      int c = 0;
      for (Vertex u = 0; u < 40; ++u) c += fam.robust_graph(u).has_vertex(x) && fam.robust_graph(u).has_edge(x, y);
      if (c >= 0.25 * 40 - 1e-9) naive.insert({x, y});
    }
  auto got = connectable_pairs(fam, 0.25);
  std::set<std::pair<Vertex, Vertex>> norm;
  for (auto [a, b] : got) norm.insert({std::min(a, b), std::max(a, b)});
  CHECK(norm == naive);
  CHECK(connectable_pairs(fam, 0.6).size() <= got.size());
}

TEST_CASE("connecting path on K14 has 14 vertices") {
  auto h = complete_hypergraph(14);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  ConnectRequest req{{0, 1}, {2, 3}, 0.1, VertexSet(14), 3};
  auto r = find_connecting_path(h, fam, req);
  REQUIRE(r.status == ConnectStatus::found);
  check_connection(h, *r.path, {0, 1}, {2, 3}, 3, req.avoid);
}

TEST_CASE("connecting path preconditions") {
  auto h = complete_hypergraph(14);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  CHECK_THROWS_AS(find_connecting_path(h, fam, {{0, 1}, {1, 2}, 0.1, VertexSet(14), 3}), PreconditionError);
  auto avoid = VertexSet::full(14) - VertexSet(14, {0, 1, 2, 3, 4});
  CHECK(find_connecting_path(h, fam, {{0, 1}, {2, 3}, 0.1, avoid, 3}).status == ConnectStatus::avoid_too_large);
}

TEST_CASE("connections are sound on random dense instances") {
  auto h = random_hypergraph(30, 0.85, 9);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  auto pairs = connectable_pairs(fam, 0.15);
  Rng rng(1);
  int found = 0;
  for (int t = 0; t < 60; ++t) {
    auto a = pairs[rng.below(static_cast<int>(pairs.size()))];
    auto b = pairs[rng.below(static_cast<int>(pairs.size()))];
    std::set<Vertex> s{a.first, a.second, b.first, b.second};
    if (s.size() < 4) continue;
    VertexSet avoid(30);
    for (int k = 0; k < 5; ++k) avoid.set(rng.below(30));
    for (Vertex v : s) avoid.reset(v);
    ConnectRequest req{a, b, 0.15, avoid, 3};
    auto r = find_connecting_path(h, fam, req, {50'000, static_cast<std::uint64_t>(t), 48});
    if (r.status != ConnectStatus::found) continue;
    ++found;
    check_connection(h, *r.path, a, b, 3, avoid);
  }
  CHECK(found > 30);
}

TEST_CASE("length one sanity: found connections are counted by the tight path oracle") {
  auto h = random_hypergraph(16, 0.9, 4);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  ConnectRequest req{{0, 1}, {2, 3}, 0.0, VertexSet(16), 3};
  auto r = find_connecting_path(h, fam, req);
  if (r.status == ConnectStatus::found) CHECK(count_tight_paths(h, {0, 1}, {2, 3}, 12) >= 1);
}

TEST_CASE("extremal (i): from inside X to inside Y is never an invalid path") {
  auto h = extremal_example(ExtremalKind::i, 30);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  ConnectRequest req{{0, 1}, {20, 21}, 0.15, VertexSet(30), 3};
  auto r = find_connecting_path(h, fam, req, {20'000, 1, 48});
  CHECK(r.status != ConnectStatus::found);
}

TEST_CASE("ell = 5 template") {
  auto h = complete_hypergraph(24);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  ConnectRequest req{{0, 1}, {2, 3}, 0.1, VertexSet(24), 5};
  auto r = find_connecting_path(h, fam, req);
  REQUIRE(r.status == ConnectStatus::found);
  check_connection(h, *r.path, {0, 1}, {2, 3}, 5, req.avoid);
}

}  // TEST_SUITE

TEST_SUITE("reservoir") {

TEST_CASE("size window and determinism") {
  Hypergraph3 big(1000, {});
  auto r = sample_reservoir(big, 0.2, 3, 5);
  CHECK(r.members.count() >= 20);
  CHECK(r.members.count() <= 40);
  CHECK(sample_reservoir(big, 0.2, 3, 5).members == r.members);
  CHECK_THROWS_AS(sample_reservoir(Hypergraph3(40, {}), 0.2, 3, 1), PreconditionError);
}

TEST_CASE("different seeds give different reservoirs") {
  Hypergraph3 big(400, {});
  std::set<std::vector<Vertex>> seen;
  for (std::uint64_t s = 0; s < 100; ++s) seen.insert(sample_reservoir(big, 0.3, 3, s).members.to_vector());
  CHECK(seen.size() >= 99);
}

TEST_CASE("validation on complete hypergraph") {
  auto h = complete_hypergraph(60);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  auto res = sample_reservoir(h, 0.6, 3, 2);
  auto v = validate_reservoir(h, fam, res, 0.15, 3, 6, 1);
  CHECK(v.fraction == doctest::Approx(1.0));
  Reservoir tiny = res;
  tiny.members = VertexSet(60, {1, 2, 3, 4, 5});
  auto w = validate_reservoir(h, fam, tiny, 0.15, 3, 4, 1);
  CHECK(w.fraction == doctest::Approx(0.0));
  CHECK_FALSE(w.diagnosis.empty());
}

TEST_CASE("successive reservoir connections use disjoint fresh vertices") {
  auto h = complete_hypergraph(120);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  auto res = sample_reservoir(h, 0.6, 3, 3);
  ReservoirUse use;
  use.used_cap = res.members.count();
  VertexSet outside = VertexSet::full(120) - res.members;
  auto ends = outside.to_vector();
  const int rounds = (res.members.count() - 4) / 10;
  REQUIRE(rounds >= 2);
  VertexSet seen(120);
  for (int i = 0; i < rounds; ++i) {
    int before = res.used.count();
    VertexSet used_before = res.used;
    OrderedPair s{ends[4 * i], ends[4 * i + 1]}, e{ends[4 * i + 2], ends[4 * i + 3]};
    auto p = connect_through_reservoir(h, fam, res, s, e, use);
    CHECK(res.used.count() == before + 10);
    for (std::size_t k = 2; k + 2 < p.size(); ++k) {
      Vertex v = p.seq()[k];
      CHECK(res.members.test(v));
      CHECK_FALSE(used_before.test(v));
      CHECK_FALSE(seen.test(v));
      seen.set(v);
    }
    CHECK(res.used.is_subset_of(res.members));
  }
}

TEST_CASE("a fully used reservoir refuses") {
  auto h = complete_hypergraph(60);
  auto fam = RobustFamily::from_hypergraph(h, 0.2);
  auto res = sample_reservoir(h, 0.6, 3, 2);
  res.used = res.members;
  ReservoirUse use;
  use.used_cap = 1000;
  auto outside = (VertexSet::full(60) - res.members).to_vector();
  CHECK_THROWS_AS(connect_through_reservoir(h, fam, res, {outside[0], outside[1]}, {outside[2], outside[3]}, use),
                  ReservoirError);
  ReservoirUse capped;
  Reservoir fresh = sample_reservoir(h, 0.6, 3, 2);
  fresh.used.set(fresh.members.first());
  capped.used_cap = 0;
  try {
    connect_through_reservoir(h, fam, fresh, {outside[0], outside[1]}, {outside[2], outside[3]}, capped);
    CHECK(false);
  } catch (const ReservoirError& e) {
    CHECK(e.kind() == ReservoirFailure::cap_exceeded);
  }
}

}  // TEST_SUITE
