#include <set>

#include "brute.hpp"
#include "doctest.h"
#include "tightham/constructions.hpp"
#include "tightham/errors.hpp"
#include "tightham/graph.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/io.hpp"
#include "tightham/rng.hpp"
#include "tightham/vertex_set.hpp"

using namespace tightham;

TEST_SUITE("core") {

TEST_CASE("vertex set algebra across word boundaries") {
  VertexSet a(130, {0, 63, 64, 129});
  VertexSet b(130, {63, 100});
  CHECK(a.count() == 4);
  CHECK((a & b).to_vector() == std::vector<Vertex>{63});
  CHECK((a | b).count() == 5);
  CHECK((a - b).to_vector() == std::vector<Vertex>{0, 64, 129});
  CHECK(a.complement().count() == 126);
  CHECK(VertexSet::full(130).count() == 130);
  CHECK(a.nth(2) == 64);
  CHECK(a.first() == 0);
  CHECK(a.intersect_count(b) == 1);
  CHECK(VertexSet(130, {63}).is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
  CHECK(!a.contains(200));
}

TEST_CASE("rng is reproducible and derive_seed separates stages") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, "reservoir") != derive_seed(1, "absorbers"));
  CHECK(derive_seed(1, "x", 0) != derive_seed(1, "x", 1));
  CHECK(derive_seed(7, "x") == derive_seed(7, "x"));
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    int x = r.below(7);
    CHECK((x >= 0 && x < 7));
  }
  auto s = r.sample(VertexSet::full(20), 5);
  CHECK(std::set<Vertex>(s.begin(), s.end()).size() == 5);
}

TEST_CASE("graph basics") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(1, 0));
  CHECK_THROWS_AS(g.add_edge(3, 3), PreconditionError);
  CHECK(g.min_degree() == 0);
  auto t = g.induced(VertexSet(5, {0, 1, 2}));
  CHECK(t.min_degree() == 2);
  CHECK(Graph::complete(6).edge_count() == 15);
  CHECK(Graph::complete(6).edges_between(VertexSet(6, {0, 1}), VertexSet(6, {2, 3, 4, 5})) == 8);
  g.remove_edge(0, 1);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("K5 degrees and link graph") {
  auto h = complete_hypergraph(5);
  CHECK(h.edge_count() == 10);
  CHECK(h.degree(0) == 6);
  CHECK(h.pair_degree(0, 1) == 3);
  CHECK(h.link_graph(0).edge_count() == 6);
  CHECK(h.consistent());
  CHECK_THROWS_AS(h.pair_degree(2, 2), PreconditionError);
}

TEST_CASE("extremal (i) at n = 9 against full enumeration") {
  auto h = extremal_example(ExtremalKind::i, 9);
  auto edges = brute::edge_set(h);
  // X = {0,1,2,3}
  CHECK(h.degree(0) == 13);
  CHECK(brute::degree(edges, 0) == 13);
  CHECK(h.pair_degree(0, 1) == 2);
  CHECK(brute::pair_degree(edges, 0, 1) == 2);
  CHECK(h.link_graph(8).edge_count() == 22);
  CHECK(brute::degree(edges, 8) == 22);
}

TEST_CASE("two consecutive X vertices cannot continue into Y") {
  auto h = extremal_example(ExtremalKind::i, 9);
  std::vector<Vertex> seq{0, 1, 5, 6, 7};
  auto v = validate_tight(h, seq, false);
  CHECK_FALSE(v.ok());
  CHECK(v.failure == TightVerdict::Failure::missing_edge);
  CHECK(v.position == 0);
}

TEST_CASE("tight path validation") {
  auto h = complete_hypergraph(6);
  std::vector<Vertex> cyc{0, 1, 2, 3, 4, 5};
  CHECK(validate_tight(h, cyc, true).ok());
  std::vector<Vertex> rep{0, 1, 0};
  CHECK(validate_tight(h, rep, false).failure == TightVerdict::Failure::repeated_vertex);
  std::vector<Vertex> out{0, 1, 9};
  CHECK(validate_tight(h, out, false).failure == TightVerdict::Failure::out_of_range);
  std::vector<Vertex> tiny{0, 1, 2};
  CHECK(validate_tight(h, tiny, true).failure == TightVerdict::Failure::too_short);
  CHECK(validate_tight(h, std::vector<Vertex>{0, 1}, false).ok());
  CHECK_THROWS_AS(TightPath(h, rep), PreconditionError);
  TightPath p(h, {0, 1, 2, 3});
  CHECK(p.length() == 2);
  CHECK(p.start_pair() == OrderedPair{0, 1});
  CHECK(p.end_pair() == OrderedPair{2, 3});
}

TEST_CASE("hypergraph constructor rejects bad input") {
  CHECK_THROWS(Hypergraph3(4, {{0, 1, 1}}));
  CHECK_THROWS(Hypergraph3(4, {{0, 1, 7}}));
  CHECK_THROWS(Hypergraph3(4, {{0, 1, 2}, {2, 1, 0}}));
}

TEST_CASE("h3 round trip on random instances") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto h = random_hypergraph(8 + static_cast<int>(s % 7), 0.4, s);
    auto text = serialize_h3(h);
    auto back = parse_h3(text);
    CHECK(back.edges() == h.edges());
    CHECK(serialize_h3(back) == text);
  }
}

TEST_CASE("h3 parser errors") {
  auto err = [](const std::string& text) {
    try {
      parse_h3(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(err("h3 5 1\n2 1 0\n").find("unsorted triple at line 2") != std::string::npos);
  CHECK(err("h3 5 1\n0 1 7\n").find("vertex 7") != std::string::npos);
  CHECK(err("h3 5 2\n0 1 2\n0 1 2\n").find("duplicate") != std::string::npos);
  CHECK(err("five\n") != "accepted");
  CHECK(err("h3 5 2\n0 1 2\n") != "accepted");
}

TEST_CASE("cycle and graph files") {
  std::vector<Vertex> c{3, 1, 2, 0};
  CHECK(parse_cycle(serialize_cycle(c)) == c);
  auto g = Graph::complete(5);
  CHECK(parse_g2(serialize_g2(g)) == g);
}

}  // TEST_SUITE
