#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mincut/congest/engine.hpp"

namespace mincut::congest {

/// A node's view of a rooted tree (or forest): link indices into its own link list.
struct TreeLinks {
  int parent = -1;  // -1 at a root
  std::vector<int> children;
};

struct BfsTree {
  std::vector<TreeLinks> links;
  std::vector<NodeId> parent;  // -1 at the root
  std::vector<int> depth;
  RoundReport report;
};

/// Flooding BFS from root: JOIN waves plus CHILD acknowledgements. Ties between
/// simultaneous JOINs go to the smaller sender id. At most D + 1 rounds.
BfsTree bfs_tree(const Network& net, NodeId root, const RunOptions& options);

/// Per-node tree links for the given parent pointers (-1 marks roots).
std::vector<TreeLinks> tree_links_from_parents(const Network& net, const std::vector<NodeId>& parent);

struct KeyedItem {
  std::int64_t key;
  std::int64_t value;
  friend bool operator==(const KeyedItem&, const KeyedItem&) = default;
};

enum class Combine { Sum, Min, Max };

std::int64_t combine(Combine op, std::int64_t x, std::int64_t y);

struct ConvergeResult {
  /// Per node: the ascending stream it passed to its parent, i.e. its subtree's
  /// items combined per key. At a root this is the final aggregate.
  std::vector<std::vector<KeyedItem>> emitted;
  /// Per node: combined value of items carrying the node's absorb key, if any arrived.
  std::vector<std::int64_t> absorbed;
  std::vector<char> has_absorbed;
  RoundReport report;
};

/// Pipelined convergecast. Every node merges its own items with its children's
/// ascending streams and forwards key K once each unfinished child has shown a
/// key >= K, one item per round. A node whose absorb key equals K keeps the
/// combined value instead of forwarding it. O(items + depth) rounds.
ConvergeResult converge_keyed(const Network& net, const std::vector<TreeLinks>& tree,
                              std::vector<std::vector<KeyedItem>> items, Combine op, const RunOptions& options,
                              const std::vector<std::int64_t>* absorb_keys = nullptr);

using Pair = std::pair<std::int64_t, std::int64_t>;

struct BroadcastResult {
  std::vector<std::vector<Pair>> received;  // per node, in root order; roots hold their own list
  RoundReport report;
};

/// Pipelined FIFO downcast of each root's list through its tree.
BroadcastResult broadcast_items(const Network& net, const std::vector<TreeLinks>& tree,
                                std::vector<std::vector<Pair>> at_roots, const RunOptions& options);

struct GatherResult {
  std::vector<std::vector<KeyedItem>> known;  // identical at every node
  RoundReport report;
};

/// Convergecast on a spanning tree followed by broadcast, so every node learns
/// the combined keyed stream.
GatherResult gather_to_all(const Network& net, const BfsTree& bfs, std::vector<std::vector<KeyedItem>> items,
                           Combine op, const RunOptions& options);

enum class PairOp { Sum, Max, LexMin };

struct ReduceResult {
  std::vector<Pair> value;  // per node: the global result
  RoundReport report;
};

/// Aggregates one pair per node up the spanning tree and broadcasts the result.
ReduceResult reduce_to_all(const Network& net, const BfsTree& bfs, const std::vector<Pair>& values, PairOp op,
                           const RunOptions& options);

}  // namespace mincut::congest
