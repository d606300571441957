#include "mincut/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "mincut/errors.hpp"

namespace mincut {

namespace {

// Splits a line into exactly `count` decimal integers.
bool parse_ints(const std::string& line, std::int64_t* out, int count) {
  const char* p = line.data();
  const char* end = p + line.size();
  for (int i = 0; i < count; ++i) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    const auto [next, ec] = std::from_chars(p, end, out[i]);
    if (ec != std::errc() || next == p) return false;
    p = next;
    if (p < end && *p != ' ' && *p != '\t' && *p != '\r') return false;
  }
  while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p == end;
}

}  // namespace

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

Graph read_edge_list(std::istream& is) {
  std::string line;
  std::int64_t header[2];
  if (!std::getline(is, line) || !parse_ints(line, header, 2)) {
    throw InvalidGraph("line 1: expected header \"n m\"");
  }
  if (header[0] < 0 || header[0] > (1 << 30) || header[1] < 0) throw InvalidGraph("line 1: bad header values");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(header[1]));
  for (std::int64_t i = 0; i < header[1]; ++i) {
    std::int64_t f[3];
    if (!std::getline(is, line)) {
      throw InvalidGraph("expected " + std::to_string(header[1]) + " edges, found " + std::to_string(i));
    }
    if (!parse_ints(line, f, 3)) throw InvalidGraph("line " + std::to_string(i + 2) + ": expected \"u v w\"");
    if (f[0] < 0 || f[0] >= header[0] || f[1] < 0 || f[1] >= header[0]) {
      throw InvalidGraph("line " + std::to_string(i + 2) + ": endpoint out of range");
    }
    edges.push_back(Edge{static_cast<NodeId>(f[0]), static_cast<NodeId>(f[1]), f[2]});
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw InvalidGraph("trailing data after edge list");
  }
  return Graph(static_cast<NodeId>(header[0]), std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream is(text);
  return read_edge_list(is);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidGraph("cannot open " + path);
  return read_edge_list(in);
}

std::string graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mincut
