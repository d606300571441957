#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "mincut/graph.hpp"
#include "mincut/rational.hpp"
#include "mincut/rooted_tree.hpp"
#include "mincut/tree_packing.hpp"

namespace mincut {

inline constexpr Weight kNoCut = std::numeric_limits<Weight>::max();

/// One recursion level of the approximation algorithm.
struct LevelTrace {
  int level = 0;
  NodeId nodes = 0;          // nodes of the contracted graph
  Weight edges = 0;          // its multigraph edge count
  std::int64_t trees = 0;
  std::int64_t max_load = 0;
  Rational l_a;
  NodeId components = 0;     // of (V, E_{<l_a}) in the contracted graph
  bool component_branch = false;
  Weight best_one_respect = kNoCut;  // smallest 1-respecting cut over this level's trees
  std::optional<Weight> component_cut;
  std::vector<NodeId> labels;                    // input labels of the level (min id per component)
  std::vector<std::vector<std::size_t>> tree_edges;  // when recorded
};

struct ApproxOptions {
  /// Upper bound on lambda used for tree counts; estimated when absent.
  std::optional<std::int64_t> lambda_bound;
  bool record_trees = false;
};

struct ApproxResult {
  Cut cut;
  Rational eps;
  Rational eps_prime;
  std::int64_t lambda_bound = 0;
  std::int64_t trees_packed = 0;
  std::vector<LevelTrace> levels;
};

/// The 1-respecting minimum over one tree: candidates are non-root nodes whose
/// parent edge is not contracted; ties go to the smaller node id.
struct TreeMin {
  Weight weight = kNoCut;
  NodeId node = -1;
};
TreeMin tree_one_respect_min(const Graph& g, const RootedTree& t, const std::vector<char>& contracted);

/// Minimum over all recorded trees of the packing; earlier trees win ties.
Cut one_respect_all_trees(const Graph& g, const TreePacking& packing);

struct LambdaEstimate {
  std::int64_t upper = 0;   // floor(3 pack_val) at the accepted guess
  std::int64_t guess = 0;   // accepted doubling guess
  std::int64_t trees = 0;
  Rational pack_val;
};

/// Doubling search: pack tree_count_for(guess, m, 1) trees and accept once
/// 3 * pack_val <= guess.
LambdaEstimate estimate_lambda(const Graph& g);

/// Maximum level count before the recursion is declared broken.
int level_cap(NodeId n, const Rational& eps_prime);

/// Sequential greedy-packing approximation with recursive contraction. The
/// seed is accepted for interface symmetry; the algorithm is deterministic.
ApproxResult approx_min_cut(const Graph& g, const Rational& eps, std::uint64_t seed,
                            const ApproxOptions& options = {});

/// Approximation with eps = 1/(U+1), where U bounds lambda from above.
ApproxResult exact_min_cut(const Graph& g, std::uint64_t seed, const ApproxOptions& options = {});

/// min(best 1-respecting cut over the packing, (2+eps) pack_val), tree count from U.
struct ValueEstimate {
  Rational value;
  Weight best_one_respect = kNoCut;
  Rational pack_val;
  std::int64_t trees = 0;
};
ValueEstimate estimate_value(const Graph& g, const Rational& eps, std::optional<std::int64_t> lambda_bound = {});

/// eps' with (1+eps) = (1+eps')^2 / (1-eps'), rounded down to a multiple of 2^-20.
Rational sampling_eps_prime(const Rational& eps);

/// 6 (d+2) ln n / (eps'^2 lambda'), not clamped.
double sampling_probability(NodeId n, const Rational& eps_prime, std::int64_t lambda_bound, int d);

struct SampledResult {
  Cut cut;                  // evaluated in the input graph
  double p = 1.0;           // clamped probability
  bool sampled = false;     // false when p reached 1 and sampling was skipped
  std::uint64_t sample_seed = 0;
  Weight sample_weight = 0;  // total weight of the sampled graph
  ApproxResult inner;
};

SampledResult sampled_approx_min_cut(const Graph& g, const Rational& eps, std::uint64_t seed, int d = 2,
                                     std::optional<std::int64_t> lambda_bound = {});

}  // namespace mincut
