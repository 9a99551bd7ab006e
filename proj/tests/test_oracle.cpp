#include <algorithm>
#include <cmath>

#include "brute.hpp"
#include "doctest.h"
#include "tightham/constructions.hpp"
#include "tightham/errors.hpp"
#include "tightham/oracle.hpp"

using namespace tightham;

TEST_SUITE("constructions") {

TEST_CASE("part sizes of the three extremal examples") {
  CHECK(extremal_spec(ExtremalKind::i, 9).x_size == 4);
  CHECK(extremal_spec(ExtremalKind::ii, 9).x_size == 6);
  CHECK(extremal_spec(ExtremalKind::iii, 9).x_size == 2);
  CHECK(extremal_spec(ExtremalKind::i, 10).x_size == 4);
  CHECK(extremal_spec(ExtremalKind::ii, 10).x_size == 7);
  CHECK(extremal_spec(ExtremalKind::iii, 10).x_size == 2);
  CHECK_THROWS_AS(extremal_spec(ExtremalKind::i, 6), PreconditionError);
}

TEST_CASE("edge counts and minimum degrees at n = 9") {
  CHECK(extremal_example(ExtremalKind::i, 9).edge_count() == 54);
  CHECK(extremal_example(ExtremalKind::ii, 9).edge_count() == 39);
  CHECK(extremal_example(ExtremalKind::iii, 9).edge_count() == 49);
  auto d = min_degrees(extremal_example(ExtremalKind::i, 9));
  CHECK(d.min_degree == 13);
  CHECK(d.min_pair_degree == 2);
}

TEST_CASE("extremal definitions against direct enumeration") {
  for (auto kind : {ExtremalKind::i, ExtremalKind::ii, ExtremalKind::iii})
    for (int n = 7; n <= 14; ++n) {
      auto h = extremal_example(kind, n);
      int x = extremal_spec(kind, n).x_size;
      auto edges = brute::edge_set(h);
      std::size_t expected = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) {
            int k = (a < x) + (b < x) + (c < x);
            bool in = kind == ExtremalKind::iii ? k >= 1 : k != 2;
            expected += in;
            CHECK(edges.count({a, b, c}) == static_cast<std::size_t>(in));
          }
      CHECK(h.edge_count() == expected);
    }
}

TEST_CASE("minimum degree of the extremal examples approaches five ninths") {
  for (auto kind : {ExtremalKind::i, ExtremalKind::ii, ExtremalKind::iii}) {
    double prev = 0;
    for (int n : {30, 60, 90}) {
      double ratio = min_degrees(extremal_example(kind, n)).min_degree / (n * n / 2.0);
      CHECK(ratio < 5.0 / 9.0);
      CHECK(ratio > 5.0 / 9.0 - 3.0 / n);
      CHECK(ratio > prev);
      prev = ratio;
    }
  }
}

TEST_CASE("random hypergraph is deterministic per seed") {
  CHECK(random_hypergraph(20, 0.5, 3).edges() == random_hypergraph(20, 0.5, 3).edges());
  CHECK(random_hypergraph(20, 0.5, 3).edges() != random_hypergraph(20, 0.5, 4).edges());
  CHECK(random_hypergraph(10, 1.0, 1).edge_count() == 120);
  CHECK(random_hypergraph(10, 0.0, 1).edge_count() == 0);
  CHECK_THROWS_AS(random_hypergraph(10, 1.5, 1), PreconditionError);
}

}  // TEST_SUITE

TEST_SUITE("oracle") {

TEST_CASE("exact solver on complete and extremal inputs") {
  for (int n = 4; n <= 10; ++n) {
    auto r = find_tight_ham_cycle(complete_hypergraph(n));
    REQUIRE(r.status == SearchStatus::found);
    CHECK(validate_tight(complete_hypergraph(n), r.cycle->seq(), true).ok());
  }
  CHECK(find_tight_ham_cycle(extremal_example(ExtremalKind::i, 9)).status == SearchStatus::none);
  CHECK(find_tight_ham_cycle(extremal_example(ExtremalKind::iii, 9)).status == SearchStatus::none);
  CHECK(find_tight_ham_cycle(complete_hypergraph(3)).status == SearchStatus::none);
}

TEST_CASE("exact solver agrees with permutation search on small random inputs") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    int n = 5 + static_cast<int>(s % 4);
    auto h = random_hypergraph(n, 0.55, s);
    auto r = find_tight_ham_cycle(h);
    bool exists = brute::ham_cycle_exists(h);
    CHECK((r.status == SearchStatus::found) == exists);
    if (r.cycle) CHECK(brute::tight_ok(brute::edge_set(h), n, r.cycle->seq(), true));
  }
}

TEST_CASE("exact solver reports the memory budget") {
  ExactOptions tiny;
  tiny.memory_budget_bytes = 16;
  CHECK(find_tight_ham_cycle(complete_hypergraph(10), tiny).status == SearchStatus::budget);
  CHECK(ham_dp_table_bytes(10) > ham_dp_table_bytes(9));
}

TEST_CASE("tight path counts") {
  auto k5 = complete_hypergraph(5);
  CHECK(count_tight_paths(k5, {0, 1}, {3, 4}, 3) == 1);
  auto k6 = complete_hypergraph(6);
  // (0,1) ... (4,5) with two internal vertices from {2,3}
  CHECK(count_tight_paths(k6, {0, 1}, {4, 5}, 4) == 2);
  CHECK_THROWS_AS(count_tight_paths(k6, {0, 1}, {4, 5}, 30), BudgetError);
}

TEST_CASE("walk and path counts on K4") {
  auto k4 = Graph::complete(4);
  CHECK(count_walks(k4, 0, 1, 3) == 7);
  CHECK(count_paths(k4, 0, 1, 3) == 2);
  CHECK(count_paths(k4, 0, 0, 3) == 0);
  CHECK(count_walks(k4, 0, 0, 2) == 3);
}

TEST_CASE("path counts agree with the naive enumeration") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    int n = 4 + static_cast<int>(s % 5);
    auto g = brute::random_graph(n, 0.5, s);
    for (int len = 1; len <= 4; ++len) {
      CHECK(count_paths(g, 0, n - 1, len) == brute::count_paths(g, 0, n - 1, len));
      CHECK(count_walks(g, 0, n - 1, len) == brute::count_walks(g, 0, n - 1, len));
    }
  }
}

TEST_CASE("matching") {
  CHECK(max_matching_size(extremal_example(ExtremalKind::iii, 9)).size == 2);
  CHECK(max_matching_size(complete_hypergraph(9)).size == 3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto h = random_hypergraph(9, 0.1, s);
    auto r = max_matching_size(h);
    CHECK(r.exact);
    CHECK(r.size == brute::matching(h));
  }
}

TEST_CASE("longest path") {
  CHECK(longest_path(Graph::complete(6)) == 5);
  CHECK(longest_path(Graph(5)) == 0);
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto g = brute::random_graph(8, 0.3, s);
    CHECK(longest_path(g) == std::max(0, brute::longest_path(g) - 1));
  }
}

TEST_CASE("long path edge bound") {
  CHECK(fs_bound(2.0 / 3.0, 12) == doctest::Approx(40));
  CHECK(fs_bound(0.8, 10) == doctest::Approx(34));
  CHECK(fs_bound(1.0, 10) == doctest::Approx(50));
  CHECK_THROWS_AS(fs_bound(0.5, 10), PreconditionError);
  CHECK_THROWS_AS(fs_bound(1.1, 10), PreconditionError);
}

}  // TEST_SUITE
