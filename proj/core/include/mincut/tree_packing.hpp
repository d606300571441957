#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mincut/graph.hpp"
#include "mincut/rational.hpp"

namespace mincut {

/// Loads of the w parallel unit copies behind one weighted edge. Greedy
/// packing always raises a least-loaded copy, so copies never differ by more
/// than one: `high` copies sit at base + 1 and the rest at base.
struct CopyLoad {
  std::int64_t base = 0;
  Weight high = 0;

  std::int64_t min_copy(Weight w) const { return high == w ? base + 1 : base; }
  std::int64_t max_copy() const { return high > 0 ? base + 1 : base; }
  std::int64_t total(Weight w) const { return base * w + high; }
  void add(Weight w) {
    if (++high == w) {
      ++base;
      high = 0;
    }
  }
  friend bool operator==(const CopyLoad&, const CopyLoad&) = default;
};

/// Ordering key shared by every MST computation in the packing: the primary
/// weight (a copy load, or -1 inside a contracted component) then endpoint ids.
struct MstKey {
  std::int64_t weight;
  NodeId lo;
  NodeId hi;
  friend auto operator<=>(const MstKey&, const MstKey&) = default;
};

MstKey mst_key(const Edge& e, std::int64_t weight);

/// Kruskal over the given per-edge primary weights; returns sorted edge ids.
std::vector<std::size_t> kruskal_mst(const Graph& g, std::span<const std::int64_t> weights);

/// Smallest positive root of 2x^2 - 3x + 1 - 1/(1+eps) = 0, rounded down to a
/// multiple of 2^-30 and verified exactly so (1-2x)(1-x)(1+eps) >= 1.
Rational epsilon_prime(const Rational& eps);

/// Ceil(6 lambda ln m / eps^2), at least 1. Throws Error when eps >= 2.
std::int64_t tree_count_for(std::int64_t lambda_bound, double m, const Rational& eps);

/// Exact form of the threshold l_a = (1 - 2 eps') / pack_val = (1 - 2 eps') * max_load / k.
struct LoadThreshold {
  Rational eps_prime;
  std::int64_t trees = 0;
  std::int64_t max_load = 0;

  Rational l_a() const;
  /// True when a copy with this load has relative load strictly below l_a.
  bool below(std::int64_t load) const;
};

/// components > (1 - eps') * nodes, decided exactly.
bool many_components(std::int64_t components, std::int64_t nodes, const Rational& eps_prime);

/// Component labels (smallest member id) of a graph with n nodes restricted to
/// the selected edges.
std::vector<NodeId> component_labels(NodeId n, std::span<const Edge> edges, std::span<const char> keep);

/// A greedy packing on g, optionally on the contraction of g given by
/// `labels`: edges whose endpoints share a label are contracted, keyed -1 in
/// every MST, and never loaded.
struct TreePacking {
  std::vector<NodeId> labels;                 // empty means no contraction
  std::vector<char> contracted;               // per edge
  std::vector<CopyLoad> loads;                // per edge
  std::int64_t size = 0;                      // number of trees
  std::vector<std::vector<std::size_t>> trees;  // full spanning trees of g, when recorded

  /// Largest copy load over non-contracted edges.
  std::int64_t max_load(const Graph& g) const;
  /// size / max_load.
  Rational pack_val(const Graph& g) const;
  /// Relative load of the least- and most-loaded copy of edge e.
  Rational relative_min(const Graph& g, std::size_t e) const;
  Rational relative_max(std::size_t e) const;
};

struct PackOptions {
  std::vector<NodeId> labels;  // empty: no contraction
  bool record_trees = false;
  /// Called after each tree with its edge ids (n-1 edges spanning g, sorted) and index.
  std::function<void(std::span<const std::size_t>, std::int64_t)> on_tree;
};

/// Packs k trees; tree i is the MST under (min copy load, lo, hi) with loads
/// of trees 0..i-1.
TreePacking greedy_pack(const Graph& g, std::int64_t k, const PackOptions& options = {});

/// Adds trees to p until it holds k; greedy packings are prefix-closed, so this
/// equals packing k trees from scratch with the same labels.
void greedy_extend(const Graph& g, TreePacking& p, std::int64_t k, const PackOptions& options = {});

/// Replays recorded trees and returns their loads; also checks each tree is
/// the greedy MST for the loads before it. Throws Error on mismatch.
TreePacking replay_packing(const Graph& g, const std::vector<std::vector<std::size_t>>& trees,
                           const std::vector<NodeId>& labels = {});

/// JSON {"labels": [...], "trees": [[edge ids]...]} for replay.
std::string packing_to_json(const TreePacking& p);
TreePacking packing_from_json(const Graph& g, const std::string& text);

/// Ideal relative loads from the recursive optimal-partition hierarchy. n <= 8.
std::vector<Rational> ideal_loads(const Graph& g);

}  // namespace mincut
