#pragma once

#include <cstdint>
#include <optional>

#include "mincut/congest/engine.hpp"
#include "mincut/graph.hpp"
#include "mincut/rational.hpp"
#include "mincut/seq_mincut.hpp"

namespace mincut::congest {

struct DistOptions {
  RunOptions run;
  /// Upper bound on lambda for tree counts; estimated by doubling when absent.
  std::optional<std::int64_t> lambda_bound;
  bool record_trees = false;
};

struct DistApproxResult {
  ApproxResult approx;  // same fields and level trace as the sequential run
  RoundReport report;
};

/// The distributed counterpart of approx_min_cut: every tree is a distributed
/// MST under the current loads, every tree gets a 1-respecting cut session,
/// and contraction, thresholds and component counts are computed in-network.
/// At the end every node knows whether it lies on the returned side.
DistApproxResult dist_approx_min_cut(const Graph& g, const Rational& eps, std::uint64_t seed,
                                     const DistOptions& options = {});

/// eps = 1/(U+1).
DistApproxResult dist_exact_min_cut(const Graph& g, std::uint64_t seed, const DistOptions& options = {});

struct DistLambdaEstimate {
  LambdaEstimate estimate;
  RoundReport report;
};

DistLambdaEstimate dist_estimate_lambda(const Graph& g, const RunOptions& options = {});

struct DistValueResult {
  ValueEstimate value;
  RoundReport report;
};

/// min(best 1-respecting cut over the packing, (2+eps) pack_val).
DistValueResult dist_estimate_value(const Graph& g, const Rational& eps, std::uint64_t seed,
                                    const DistOptions& options = {});

}  // namespace mincut::congest
