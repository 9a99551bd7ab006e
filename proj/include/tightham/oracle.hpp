#pragma once

#include <cstddef>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "tightham/graph.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

using BigCount = boost::multiprecision::cpp_int;

enum class SearchStatus { found, none, budget };

const char* to_string(SearchStatus s);

struct HamSearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<TightPath> cycle;
  std::size_t states = 0;  // reachable (mask, pair) states touched
};

struct ExactOptions {
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

// bytes of DP table the exact solver would allocate for n vertices
std::size_t ham_dp_table_bytes(int n);

HamSearchResult find_tight_ham_cycle(const Hypergraph3& h, const ExactOptions& opts = {});

// tight paths with `length` edges from start pair to end pair, all vertices distinct
BigCount count_tight_paths(const Hypergraph3& h, OrderedPair start, OrderedPair end, int length, int cap = 14);

// (A^len)[x][y]
BigCount count_walks(const Graph& g, Vertex x, Vertex y, int len);

// simple x-y paths with len edges
BigCount count_paths(const Graph& g, Vertex x, Vertex y, int len, int cap = 7);

struct MatchingResult {
  int size = 0;
  bool exact = true;
};

MatchingResult max_matching_size(const Hypergraph3& h, int exact_cap = 21);

// edge-length of a longest simple path
int longest_path(const Graph& g, int exact_cap = 20);

double fs_bound(double lambda, int n_vertices);

}  // namespace tightham
