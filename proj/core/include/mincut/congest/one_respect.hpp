#pragma once

#include <utility>
#include <vector>

#include "mincut/congest/dist_mst.hpp"
#include "mincut/rooted_tree.hpp"

namespace mincut::congest {

/// What each node learns about its ancestors.
struct AncestorKnowledge {
  /// A(v): ancestors of v in its own fragment and in the parent fragment,
  /// top-down, ending with v.
  std::vector<std::vector<NodeId>> ancestors;
  /// F(v): fragments other than v's own whose root lies in v's subtree, ascending.
  std::vector<std::vector<NodeId>> below;
  /// Per node, per fragment F in F(u) for some ancestor u of v in v's own
  /// fragment: the lowest such u. Sorted by fragment id.
  std::vector<std::vector<std::pair<NodeId, NodeId>>> lowest;
};

/// Tree on fragment roots and merging nodes.
struct MergeStructure {
  std::vector<char> merging;   // per node
  std::vector<NodeId> nodes;   // members, ascending
  std::vector<NodeId> parent;  // per member: lowest proper ancestor that is a member, -1 at the top
};

struct OneRespectResult {
  CutProfile profile;
  std::vector<NodeId> lca;  // per graph edge
  Weight c_star = 0;
  NodeId argmin = -1;       // -1 when no node was a candidate
  Fragments fragments;
  AncestorKnowledge ancestors;
  MergeStructure merge;
  RoundReport report;
};

/// Computes w(C_v) at every node v for the rooted spanning tree `tree`, then
/// the minimum over candidates and its node (smaller id on ties). The root is
/// never a candidate; neither is a node whose entry in `excluded` is set.
/// Rounds are tagged by phase: step1 .. step5 and min.
OneRespectResult one_respect_min_cut(const Network& net, const DistTree& tree, const BfsTree& bfs,
                                     const RunOptions& options, const std::vector<char>* excluded = nullptr);

}  // namespace mincut::congest
