#include "tightham/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "tightham/errors.hpp"

namespace tightham {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InputError(msg + " at line " + std::to_string(line));
}

std::vector<long long> parse_ints(std::string_view line, std::size_t lineno) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ') {
      ++i;
      continue;
    }
    long long v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() || ptr == line.data() + i) fail(lineno, "malformed integer");
    if (v < 0) fail(lineno, "negative value");
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && line[i] != ' ') fail(lineno, "unexpected character");
    out.push_back(v);
  }
  return out;
}

struct Header {
  long long n, m;
};

Header parse_header(const std::vector<std::string_view>& lines, std::string_view magic) {
  if (lines.empty()) fail(1, "missing header");
  std::string_view h = lines[0];
  if (h.substr(0, magic.size()) != magic || h.size() == magic.size() || h[magic.size()] != ' ')
    fail(1, "malformed header");
  auto vals = parse_ints(h.substr(magic.size() + 1), 1);
  if (vals.size() != 2) fail(1, "malformed header");
  if (vals[0] > 1'000'000) fail(1, "vertex count too large");
  if (lines.size() - 1 != static_cast<std::size_t>(vals[1]))
    fail(lines.size() + 1, "expected " + std::to_string(vals[1]) + " records, found " + std::to_string(lines.size() - 1));
  return {vals[0], vals[1]};
}

std::vector<std::string_view> checked_lines(std::string_view text) {
  if (text.find('\r') != std::string_view::npos) throw InputError("CR line ending found");
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].empty()) fail(i + 1, "empty line");
  return lines;
}

}  // namespace

Hypergraph3 parse_h3(std::string_view text) {
  auto lines = checked_lines(text);
  auto [n, m] = parse_header(lines, "h3");
  std::vector<Triple> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::set<Triple> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto v = parse_ints(lines[i], i + 1);
    if (v.size() != 3) fail(i + 1, "expected 3 vertices");
    for (auto x : v)
      if (x >= n) fail(i + 1, "vertex " + std::to_string(x) + " >= n");
    if (!(v[0] < v[1] && v[1] < v[2])) fail(i + 1, "unsorted triple");
    Triple t{static_cast<Vertex>(v[0]), static_cast<Vertex>(v[1]), static_cast<Vertex>(v[2])};
    if (!seen.insert(t).second) fail(i + 1, "duplicate triple");
    edges.push_back(t);
  }
  return Hypergraph3(static_cast<int>(n), std::move(edges));
}

std::string serialize_h3(const Hypergraph3& h) {
  std::ostringstream out;
  out << "h3 " << h.n() << ' ' << h.edge_count() << '\n';
  for (const auto& e : h.edges()) out << e.a << ' ' << e.b << ' ' << e.c << '\n';
  return out.str();
}

Graph parse_g2(std::string_view text) {
  auto lines = checked_lines(text);
  auto [n, m] = parse_header(lines, "g2");
  Graph g(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto v = parse_ints(lines[i], i + 1);
    if (v.size() != 2) fail(i + 1, "expected 2 vertices");
    for (auto x : v)
      if (x >= n) fail(i + 1, "vertex " + std::to_string(x) + " >= n");
    if (!(v[0] < v[1])) fail(i + 1, "unsorted pair");
    if (g.has_edge(static_cast<Vertex>(v[0]), static_cast<Vertex>(v[1]))) fail(i + 1, "duplicate pair");
    g.add_edge(static_cast<Vertex>(v[0]), static_cast<Vertex>(v[1]));
  }
  return g;
}

std::string serialize_g2(const Graph& g) {
  std::ostringstream out;
  out << "g2 " << g.universe() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
  return out.str();
}

std::vector<Vertex> parse_cycle(std::string_view text) {
  auto lines = checked_lines(text);
  if (lines.size() != 1) throw InputError("cycle file must hold exactly one line");
  std::vector<Vertex> seq;
  for (auto v : parse_ints(lines[0], 1)) {
    if (v > 1'000'000) fail(1, "vertex too large");
    seq.push_back(static_cast<Vertex>(v));
  }
  return seq;
}

std::string serialize_cycle(const std::vector<Vertex>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(seq[i]);
  }
  out += '\n';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace tightham
