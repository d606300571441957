#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mincut/graph.hpp"
#include "mincut/rooted_tree.hpp"

namespace mincut {

Graph cycle_graph(NodeId n);
Graph complete_graph(NodeId n, Weight w = 1);
Graph path_graph(NodeId n);
/// Center 0 joined to leaves 1..n-1; leaf i gets weights[(i-1) % size].
Graph star_graph(NodeId n, const std::vector<Weight>& weights = {1});
/// Cliques on 0..a-1 and a..a+b-1 joined by the edge (a-1, a) of weight bridge.
Graph two_cliques_bridge(NodeId a, NodeId b, Weight bridge = 1, Weight clique_weight = 1);

/// Two G(n, p_intra) blocks on 0..n1-1 and n1..n1+n2-1 joined by exactly k unit
/// edges. Blocks are redrawn until each has edge connectivity above k, which
/// makes the planted cut the unique minimum cut.
Graph planted_cut(NodeId n1, NodeId n2, int k, double p_intra, std::uint64_t seed);

/// Connected simple d-regular graph from the configuration model with rejection.
Graph random_regular(NodeId n, int d, std::uint64_t seed);

/// Connected G(n, p) with weights uniform in [1, w_max].
Graph weighted_random(NodeId n, double p, Weight w_max, std::uint64_t seed);

/// Spanning tree chosen by Kruskal over random edge priorities, rooted at root.
RootedTree random_spanning_tree(const Graph& g, std::uint64_t seed, NodeId root = 0);

/// Builds a graph from a spec string such as "cycle:8", "complete:5",
/// "path:6", "star:5", "bridge:4,4,1", "planted:10,10,3,0.9", "regular:64,3"
/// or "weighted:12,0.5,5". Throws InfeasibleSpec on bad input.
Graph generate(const std::string& spec, std::uint64_t seed);

}  // namespace mincut
