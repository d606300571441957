#pragma once

#include <iosfwd>
#include <string>

#include "mincut/graph.hpp"

namespace mincut {

/// Edge-list text: a header line "n m" followed by m lines "u v w".
void write_edge_list(std::ostream& os, const Graph& g);
std::string to_edge_list(const Graph& g);

/// Strict parser; malformed input throws InvalidGraph with a line number.
Graph read_edge_list(std::istream& is);
Graph parse_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);

/// 64-bit FNV-1a over the edge-list text, rendered as 16 hex digits.
std::string graph_hash(const Graph& g);

}  // namespace mincut
