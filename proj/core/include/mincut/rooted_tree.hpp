#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mincut/graph.hpp"

namespace mincut {

inline constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);

/// Spanning tree of a Graph, rooted, with parent pointers and derived
/// children lists, depths, preorder and Euler intervals.
class RootedTree {
 public:
  /// parent[root] must be -1. Throws InvalidGraph when the pointers do not form
  /// a spanning tree of g using edges of g.
  RootedTree(const Graph& g, std::vector<NodeId> parent);

  /// Orients the given graph edges (n-1 of them, forming a spanning tree) away from root.
  static RootedTree from_edges(const Graph& g, std::span<const std::size_t> edge_ids, NodeId root = 0);

  NodeId n() const { return static_cast<NodeId>(parent_.size()); }
  NodeId root() const { return root_; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  const std::vector<NodeId>& parents() const { return parent_; }
  /// Graph edge index joining v to its parent, kNoEdge for the root.
  std::size_t parent_edge(NodeId v) const { return parent_edge_[v]; }
  std::span<const NodeId> children(NodeId v) const {
    return {child_list_.data() + child_offset_[v], child_list_.data() + child_offset_[v + 1]};
  }
  int depth(NodeId v) const { return depth_[v]; }
  int height() const { return height_; }
  /// Preorder; every parent precedes its children.
  std::span<const NodeId> preorder() const { return preorder_; }
  /// Sorted graph edge indices of the tree.
  std::span<const std::size_t> edge_ids() const { return edge_ids_; }

  bool is_ancestor(NodeId a, NodeId v) const { return tin_[a] <= tin_[v] && tout_[v] <= tout_[a]; }
  NodeId lca(NodeId a, NodeId b) const;
  std::size_t subtree_size(NodeId v) const { return tout_[v] - tin_[v]; }

  /// Nodes of v's subtree, sorted.
  std::vector<NodeId> subtree(NodeId v) const;
  std::vector<char> subtree_bits(NodeId v) const;

 private:
  RootedTree() = default;
  void derive(const Graph& g);

  NodeId root_ = -1;
  std::vector<NodeId> parent_;
  std::vector<std::size_t> parent_edge_;
  std::vector<std::size_t> child_offset_;
  std::vector<NodeId> child_list_;
  std::vector<int> depth_;
  std::vector<NodeId> preorder_;
  std::vector<std::size_t> tin_;
  std::vector<std::size_t> tout_;
  std::vector<std::size_t> edge_ids_;
  int height_ = 0;
};

/// Per-node quantities behind the 1-respecting cut values of a tree.
struct CutProfile {
  std::vector<Weight> delta;       // weighted degree
  std::vector<Weight> rho;         // weight of edges whose endpoints' lca is v
  std::vector<Weight> delta_down;  // subtree sums
  std::vector<Weight> rho_down;
  std::vector<Weight> cut;         // delta_down - 2 rho_down; 0 at the root
};

/// Sequential evaluation of w(C_v) for every v via subtree sums and edge lcas.
CutProfile one_respect_profile(const Graph& g, const RootedTree& t);

}  // namespace mincut
