#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mincut/graph.hpp"
#include "mincut/rational.hpp"

namespace mincut {

inline constexpr NodeId kEnumerationLimit = 20;
inline constexpr NodeId kStoerWagnerLimit = 400;

/// Global minimum cut by exhaustive enumeration when n <= 20, otherwise by
/// Stoer-Wagner up to n = 400. Larger inputs throw OracleCapacityError.
Cut brute_force_mincut(const Graph& g);

/// Exhaustive tier only: all 2^(n-1) - 1 bipartitions in Gray-code order.
Cut enumerate_mincut(const Graph& g);

/// Deterministic Stoer-Wagner minimum cut, O(n^3).
Cut stoer_wagner(const Graph& g);

/// Calls visit with a restricted growth string (block index per node) for
/// every set partition of n nodes, in lexicographic order of the strings.
void for_each_partition(NodeId n, const std::function<void(std::span<const NodeId>)>& visit);

struct Strength {
  Rational phi;
  Partition partition;  // lexicographically first optimal partition
};

/// Minimum partition value over all partitions with at least two blocks. n <= 10.
Strength strength(const Graph& g);

}  // namespace mincut
