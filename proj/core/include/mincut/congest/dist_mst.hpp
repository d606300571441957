#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mincut/congest/engine.hpp"
#include "mincut/congest/primitives.hpp"
#include "mincut/rooted_tree.hpp"

namespace mincut::congest {

/// A spanning tree as every node sees it, rooted at node 0.
struct DistTree {
  std::vector<TreeLinks> links;
  std::vector<NodeId> parent;      // -1 at the root
  std::vector<int> depth;
  std::vector<std::size_t> edges;  // sorted edge ids
  int phases = 0;                  // merge phases used by the MST
  RoundReport report;

  RootedTree rooted(const Graph& g) const { return RootedTree(g, parent); }
};

/// Minimum spanning tree under (weights[e], lo, hi). Each merge phase elects
/// every fragment's lightest outgoing edge by flooding inside the fragment,
/// adds the elected edges, and relabels fragments by flooding the minimum id.
/// Phase boundaries are taken at network quiescence. Rooted at node 0 by a
/// final orientation wave.
DistTree dist_mst(const Network& net, std::span<const std::int64_t> weights, const RunOptions& options);

/// Roots a tree given by per-node tree-link flags at node 0.
DistTree orient_tree(const Network& net, const std::vector<std::vector<char>>& tree_link, const RunOptions& options);

/// Size-threshold fragments of a rooted spanning tree.
struct Fragments {
  int threshold = 0;                      // ceil(sqrt n)
  std::vector<NodeId> id;                 // per node: smallest node id in its fragment
  std::vector<char> is_root;              // per node: fragment root (node nearest the tree root)
  std::vector<TreeLinks> forest;          // tree links restricted to each fragment
  std::vector<std::vector<int>> child_roots;  // per node: links to children that root other fragments
  std::vector<NodeId> roots;              // fragment root per fragment, ascending fragment id
  std::vector<NodeId> ids;                // fragment ids, ascending
  std::vector<NodeId> parent_fragment;    // per fragment (index into ids): parent fragment id, -1 at the top
  RoundReport report;

  std::size_t count() const { return ids.size(); }
  std::size_t index_of(NodeId fragment) const;
};

/// Closes a fragment at a node once its open subtree reaches ceil(sqrt n)
/// nodes (and always at the root), so every fragment but the top one has at
/// least that many nodes and open branches stay shallower than the threshold.
/// The fragment tree is then broadcast over bfs so every node knows it.
Fragments fragment_decompose(const Network& net, const DistTree& tree, const BfsTree& bfs, const RunOptions& options);

}  // namespace mincut::congest
