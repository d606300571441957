#pragma once

#include <vector>

#include "mincut/congest/engine.hpp"
#include "mincut/congest/primitives.hpp"

namespace mincut::congest {

struct ComponentCount {
  std::vector<NodeId> labels;  // smallest node id in each node's component
  NodeId count = 0;            // known to every node
  RoundReport report;
};

/// Components of the subgraph of kept edges (one flag per graph edge, known to
/// both endpoints): min-id flooding until quiescence, then a count of nodes
/// whose label is their own id, summed over the BFS tree.
ComponentCount dist_count_components(const Network& net, const BfsTree& bfs, const std::vector<char>& keep_edge,
                                     const RunOptions& options);

struct ComponentCuts {
  std::vector<Weight> value;  // per node: weight leaving its component
  std::vector<char> big;      // per node: component has at least ceil(sqrt n) nodes
  RoundReport report;
};

/// Every node learns the cut weight of its own component. A probe BFS of
/// depth ceil(sqrt n) from each component's smallest node sorts components:
/// small ones sum over the probe tree and broadcast locally, big ones (at
/// most sqrt n of them) aggregate through the global BFS tree.
ComponentCuts component_cut_values(const Network& net, const BfsTree& bfs, const std::vector<NodeId>& labels,
                                   const RunOptions& options);

}  // namespace mincut::congest
