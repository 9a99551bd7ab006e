#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tightham/graph.hpp"
#include "tightham/hypergraph.hpp"

namespace tightham {

// ".h3": "h3 <n> <m>" then m sorted triples, one per line
Hypergraph3 parse_h3(std::string_view text);
std::string serialize_h3(const Hypergraph3& h);

// ".g2": "g2 <n> <m>" then m sorted pairs
Graph parse_g2(std::string_view text);
std::string serialize_g2(const Graph& g);

// one line of space separated vertices
std::vector<Vertex> parse_cycle(std::string_view text);
std::string serialize_cycle(const std::vector<Vertex>& seq);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tightham
