#pragma once

#include <cstdint>
#include <vector>

#include "mincut/graph.hpp"

namespace mincut {

/// Keeps each of the w(e) unit copies of every edge independently with
/// probability p; the surviving count becomes the new weight and edges with no
/// survivors are dropped. Coins for edge {u, v} come from a stream seeded by
/// (seed, min(u,v), max(u,v)), so both endpoints can reproduce them locally.
/// p = 1 returns g unchanged. Throws ResampleNeeded if the result is disconnected.
Graph karger_sample(const Graph& g, double p, std::uint64_t seed);

/// The surviving edges of karger_sample without the connectivity check.
std::vector<Edge> karger_sample_edges(const Graph& g, double p, std::uint64_t seed);

struct SampleResult {
  Graph graph;
  std::uint64_t seed;  // seed that produced a connected sample
  int attempts;
};

/// Retries karger_sample with seeds derived from `seed` until the sample is
/// connected; gives up with ResampleNeeded after max_attempts draws.
SampleResult karger_sample_connected(const Graph& g, double p, std::uint64_t seed, int max_attempts = 100);

}  // namespace mincut
