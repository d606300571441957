#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mincut/rational.hpp"

namespace mincut {

using NodeId = std::int32_t;
using Weight = std::int64_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight w = 1;

  NodeId lo() const { return u < v ? u : v; }
  NodeId hi() const { return u < v ? v : u; }
  NodeId other(NodeId x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected graph on nodes 0..n-1. An edge of weight w stands for
/// w parallel unit edges; parallel pairs in the input must be merged into one
/// weighted edge. Immutable after construction.
class Graph {
 public:
  struct Options {
    /// Reject weights above n^4. Contraction minors built internally turn this off.
    bool enforce_weight_bound = true;
  };

  struct Adjacent {
    NodeId neighbor;
    Weight w;
    std::size_t edge;
  };

  /// Throws InvalidGraph on self-loops, repeated pairs, out-of-range ids,
  /// non-positive or oversized weights, n < 2, or a disconnected graph.
  Graph(NodeId n, std::vector<Edge> edges) : Graph(n, std::move(edges), Options{}) {}
  Graph(NodeId n, std::vector<Edge> edges, Options options);

  NodeId n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  /// Neighbors of v sorted by neighbor id.
  std::span<const Adjacent> adjacent(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  Weight weighted_degree(NodeId v) const { return weighted_degree_[v]; }

  /// Sum of all edge weights, i.e. the multigraph edge count.
  Weight total_weight() const { return total_weight_; }

  std::optional<std::size_t> find_edge(NodeId u, NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  NodeId n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Adjacent> adjacency_;
  std::vector<Weight> weighted_degree_;
  Weight total_weight_ = 0;
};

/// True when the subgraph on all n nodes formed by the selected edges is connected.
bool is_connected(NodeId n, std::span<const Edge> edges);

/// A proper vertex bipartition (S, V \ S) together with its crossing weight.
struct Cut {
  std::vector<NodeId> side;  // sorted, nonempty, not all of V
  Weight weight = 0;
};

/// Builds a Cut from an arbitrary side set, recomputing the weight.
Cut make_cut(const Graph& g, std::vector<NodeId> side);
/// Builds a Cut from per-node membership bits (1 = in S).
Cut make_cut_from_bits(const Graph& g, std::span<const char> bits);

/// Sum of weights crossing (s, V \ s). Throws InvalidCut for empty or full s.
Weight cut_weight(const Graph& g, std::span<const NodeId> s);
Weight cut_weight_bits(const Graph& g, std::span<const char> bits);

/// Disjoint nonempty blocks covering V.
struct Partition {
  std::vector<std::vector<NodeId>> blocks;

  /// Groups nodes by label; blocks ordered by their smallest member.
  static Partition from_labels(std::span<const NodeId> labels);
  /// Per-node block index.
  std::vector<NodeId> block_of(NodeId n) const;
  std::size_t size() const { return blocks.size(); }
};

/// Throws InvalidPartition unless the blocks partition 0..n-1.
void validate_partition(NodeId n, const Partition& p);

/// Total weight of edges between different blocks.
Weight crossing_weight(const Graph& g, const Partition& p);

/// (crossing weight) / (|p| - 1). Requires at least two blocks.
Rational part_val(const Graph& g, const Partition& p);

}  // namespace mincut
