#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tightham/connect.hpp"
#include "tightham/hypergraph.hpp"
#include "tightham/reservoir.hpp"

namespace tightham {

struct AbsorberTuple {
  Vertex a, b, c, d, z, x, y, y2, x2;

  std::array<Vertex, 9> as_array() const { return {a, b, c, d, z, x, y, y2, x2}; }
  std::vector<Vertex> first_subpath() const { return {a, b, z, c, d}; }
  std::vector<Vertex> second_subpath() const { return {x, y, y2, x2}; }
  auto operator<=>(const AbsorberTuple&) const = default;
};

// eight tuple edges, four connectable pairs, vab vbc vcd, all ten vertices distinct
bool is_v_absorber(const Hypergraph3& h, const RobustFamily& fam, const AbsorberTuple& t, Vertex v, double zeta_star);

// distinct vertices, abz bzc zcd xyy' yy'x' edges, connectable pairs
bool satisfies_family_conditions(const Hypergraph3& h, const RobustFamily& fam, const AbsorberTuple& t,
                                 double zeta_star);

double f_value(const Hypergraph3& h, const Triple& e);
bool is_central(const Hypergraph3& h, const Triple& e);
std::vector<Triple> central_edges(const Hypergraph3& h);

struct Quintuple {
  Vertex x, y, y2, x2, z;
};

struct QuintupleSearch {
  std::vector<Quintuple> quintuples;
  bool degree_hypothesis_met = false;  // delta >= (6/11) n^2/2
};

QuintupleSearch find_central_quintuples(const Hypergraph3& h, std::size_t limit);

struct Quadruple {
  Vertex x, y, y2, x2;
};

struct AbsorbableIndex {
  VertexSet vertices;
  std::vector<std::uint64_t> counts;  // quadruples per z
  double zeta_star = 0;
  double frac = 0;
};

AbsorbableIndex absorbable_index(const Hypergraph3& h, const RobustFamily& fam, double zeta_star, double frac);
VertexSet absorbable_vertices(const Hypergraph3& h, const RobustFamily& fam, double zeta_star, double frac);

// quadruples for z avoiding `avoid`, at most limit, random order
std::vector<Quadruple> absorbable_witnesses(const Hypergraph3& h, const RobustFamily& fam, Vertex z, double zeta_star,
                                            const VertexSet& avoid, std::size_t limit, std::uint64_t seed);

struct AbsorberSearch {
  double frac = 1e-3;
  VertexSet avoid;  // e.g. the reservoir
  std::uint64_t seed = 1;
  std::uint64_t budget = 200'000;
  const AbsorbableIndex* absorbable = nullptr;
};

std::vector<AbsorberTuple> find_v_absorbers(const Hypergraph3& h, const RobustFamily& fam, Vertex v,
                                            double zeta_star, std::size_t limit, const AbsorberSearch& opts = {});

struct AbsorberFamily {
  std::vector<AbsorberTuple> tuples;
  std::vector<std::vector<int>> per_vertex_index;  // v -> tuples absorbing v
  double theta_star = 0;

  void rebuild_index(const Hypergraph3& h, const RobustFamily& fam, double zeta_star);
  VertexSet vertex_set(int n) const;
};

struct FamilyConfig {
  double zeta_star = 0.25;
  double frac = 1e-3;
  double theta_star = 0.35;
  int cover_min = 2;
  std::size_t max_tuples = 0;          // 0: the scaled cap 8 alpha^-5 theta*^2 n
  double alpha = 0.2;
  std::size_t per_vertex = 4;          // candidates sampled per vertex
  double keep_probability = 1.0;       // random selection of candidates
  bool delete_overlapping = false;     // drop both tuples of every overlapping pair
  std::uint64_t seed = 1;
  std::uint64_t budget = 200'000;
};

// stage failure "absorber-family" lists uncovered vertices
AbsorberFamily choose_absorber_family(const Hypergraph3& h, const RobustFamily& fam, const Reservoir& res,
                                      const FamilyConfig& cfg);

struct SubpathPosition {
  std::size_t first = 0;   // start of abzcd
  std::size_t second = 0;  // start of x y y2 x2
};

struct AbsorbingPath {
  TightPath path;
  AbsorberFamily family;
  std::vector<SubpathPosition> subpath_index;
  bool empty_family = false;
};

struct AbsorbingPathConfig {
  double zeta_star = 0.25;
  int ell = 3;
  ConnectOptions search;
};

AbsorbingPath build_absorbing_path(const Hypergraph3& h, const RobustFamily& fam, const Reservoir& res,
                                   const AbsorberFamily& family, const AbsorbingPathConfig& cfg);

// every indexed subpath occurs at its recorded position
bool subpaths_in_place(const AbsorbingPath& p);

// X -> tuple index, by bipartite matching over the family; nullopt if impossible
std::optional<std::vector<int>> assign_absorbers(const AbsorberFamily& family, const std::vector<Vertex>& xs);

struct AbsorbOptions {
  std::optional<int> cap;  // faithful mode: 2 theta*^2 n
};

TightPath absorb_vertices(const Hypergraph3& h, const AbsorbingPath& p, const std::vector<Vertex>& xs,
                          const AbsorbOptions& opts = {});

}  // namespace tightham
