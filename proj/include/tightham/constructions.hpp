#pragma once

#include <cstdint>
#include <string>

#include "tightham/hypergraph.hpp"

namespace tightham {

enum class ExtremalKind { i, ii, iii };

ExtremalKind parse_kind(const std::string& s);
std::string to_string(ExtremalKind k);

struct ExtremalSpec {
  ExtremalKind kind;
  int n;
  int x_size;
};

ExtremalSpec extremal_spec(ExtremalKind kind, int n);

// X = {0..x_size-1}; (i),(ii): no edge meets X in exactly two vertices; (iii): every edge meets X
Hypergraph3 extremal_example(ExtremalKind kind, int n);

Hypergraph3 random_hypergraph(int n, double p, std::uint64_t seed);

struct DegreeStats {
  int min_degree;
  int min_pair_degree;
};

DegreeStats min_degrees(const Hypergraph3& h);

}  // namespace tightham
