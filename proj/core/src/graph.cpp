#include "mincut/graph.hpp"

#include <algorithm>
#include <string>

#include "mincut/errors.hpp"
#include "mincut/union_find.hpp"

namespace mincut {

namespace {

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " + std::to_string(e.w) + ")";
}

}  // namespace

Graph::Graph(NodeId n, std::vector<Edge> edges, Options options)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 2) throw InvalidGraph("graph needs at least 2 nodes, got " + std::to_string(n_));
  const __int128 bound = static_cast<__int128>(n_) * n_ * n_ * n_;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      throw InvalidGraph("edge endpoint out of range: " + edge_text(e));
    }
    if (e.u == e.v) throw InvalidGraph("self-loop: " + edge_text(e));
    if (e.w < 1) throw InvalidGraph("non-positive weight: " + edge_text(e));
    if (options.enforce_weight_bound && e.w > bound) {
      throw InvalidGraph("weight exceeds n^4: " + edge_text(e));
    }
  }

  std::vector<std::size_t> degree(static_cast<std::size_t>(n_) + 1, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (NodeId v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n_]);
  weighted_degree_.assign(n_, 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[fill[e.u]++] = Adjacent{e.v, e.w, i};
    adjacency_[fill[e.v]++] = Adjacent{e.u, e.w, i};
    weighted_degree_[e.u] += e.w;
    weighted_degree_[e.v] += e.w;
    total_weight_ += e.w;
  }
  for (NodeId v = 0; v < n_; ++v) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const Adjacent& a, const Adjacent& b) { return a.neighbor < b.neighbor; });
    auto dup = std::adjacent_find(first, last, [](const Adjacent& a, const Adjacent& b) {
      return a.neighbor == b.neighbor;
    });
    if (dup != last) {
      throw InvalidGraph("repeated edge between " + std::to_string(v) + " and " +
                         std::to_string(dup->neighbor) + "; merge parallel edges into one weight");
    }
  }
  if (!is_connected(n_, edges_)) throw InvalidGraph("graph is disconnected");
}

std::optional<std::size_t> Graph::find_edge(NodeId u, NodeId v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return std::nullopt;
  const auto adj = adjacent(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Adjacent& a, NodeId x) { return a.neighbor < x; });
  if (it == adj.end() || it->neighbor != v) return std::nullopt;
  return it->edge;
}

bool is_connected(NodeId n, std::span<const Edge> edges) {
  if (n <= 1) return true;
  UnionFind uf(static_cast<std::size_t>(n));
  for (const Edge& e : edges) uf.unite(e.u, e.v);
  return uf.set_count() == 1;
}

Weight cut_weight_bits(const Graph& g, std::span<const char> bits) {
  if (bits.size() != static_cast<std::size_t>(g.n())) throw InvalidCut("membership vector has wrong size");
  const auto members = std::count_if(bits.begin(), bits.end(), [](char b) { return b != 0; });
  if (members == 0 || members == g.n()) throw InvalidCut("cut side must be a nonempty proper subset");
  Weight total = 0;
  for (const Edge& e : g.edges()) {
    if ((bits[e.u] != 0) != (bits[e.v] != 0)) total += e.w;
  }
  return total;
}

Weight cut_weight(const Graph& g, std::span<const NodeId> s) {
  std::vector<char> bits(static_cast<std::size_t>(g.n()), 0);
  for (NodeId v : s) {
    if (v < 0 || v >= g.n()) throw InvalidCut("cut side contains unknown node " + std::to_string(v));
    bits[v] = 1;
  }
  return cut_weight_bits(g, bits);
}

Cut make_cut(const Graph& g, std::vector<NodeId> side) {
  std::sort(side.begin(), side.end());
  side.erase(std::unique(side.begin(), side.end()), side.end());
  Cut c;
  c.weight = cut_weight(g, side);
  c.side = std::move(side);
  return c;
}

Cut make_cut_from_bits(const Graph& g, std::span<const char> bits) {
  Cut c;
  c.weight = cut_weight_bits(g, bits);
  for (NodeId v = 0; v < g.n(); ++v) {
    if (bits[v] != 0) c.side.push_back(v);
  }
  return c;
}

Partition Partition::from_labels(std::span<const NodeId> labels) {
  Partition p;
  NodeId max_label = -1;
  for (NodeId l : labels) max_label = std::max(max_label, l);
  std::vector<NodeId> block(static_cast<std::size_t>(max_label) + 1, -1);
  for (NodeId v = 0; v < static_cast<NodeId>(labels.size()); ++v) {
    NodeId& b = block[labels[v]];
    if (b < 0) {
      b = static_cast<NodeId>(p.blocks.size());
      p.blocks.emplace_back();
    }
    p.blocks[b].push_back(v);
  }
  return p;
}

std::vector<NodeId> Partition::block_of(NodeId n) const {
  std::vector<NodeId> out(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (NodeId v : blocks[b]) out[v] = static_cast<NodeId>(b);
  }
  return out;
}

void validate_partition(NodeId n, const Partition& p) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::size_t covered = 0;
  for (const auto& block : p.blocks) {
    if (block.empty()) throw InvalidPartition("empty block");
    for (NodeId v : block) {
      if (v < 0 || v >= n) throw InvalidPartition("unknown node " + std::to_string(v));
      if (seen[v] != 0) throw InvalidPartition("node " + std::to_string(v) + " in two blocks");
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != static_cast<std::size_t>(n)) throw InvalidPartition("blocks do not cover every node");
}

Weight crossing_weight(const Graph& g, const Partition& p) {
  validate_partition(g.n(), p);
  const auto block = p.block_of(g.n());
  Weight total = 0;
  for (const Edge& e : g.edges()) {
    if (block[e.u] != block[e.v]) total += e.w;
  }
  return total;
}

Rational part_val(const Graph& g, const Partition& p) {
  if (p.size() < 2) throw InvalidPartition("partition value needs at least two blocks");
  return Rational(crossing_weight(g, p), static_cast<std::int64_t>(p.size() - 1));
}

}  // namespace mincut
