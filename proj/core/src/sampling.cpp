#include "mincut/sampling.hpp"

#include <string>
#include <vector>

#include "mincut/errors.hpp"
#include "mincut/random.hpp"

namespace mincut {

std::vector<Edge> karger_sample_edges(const Graph& g, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw Error("sampling probability must lie in (0, 1]");
  std::vector<Edge> kept;
  kept.reserve(g.m());
  for (const Edge& e : g.edges()) {
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(e.lo()), static_cast<std::uint64_t>(e.hi())));
    Weight survivors = 0;
    for (Weight i = 0; i < e.w; ++i) {
      if (bernoulli(rng, p)) ++survivors;
    }
    if (survivors > 0) kept.push_back(Edge{e.u, e.v, survivors});
  }
  return kept;
}

Graph karger_sample(const Graph& g, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw Error("sampling probability must lie in (0, 1]");
  if (p == 1.0) return g;
  std::vector<Edge> kept = karger_sample_edges(g, p, seed);
  if (!is_connected(g.n(), kept)) {
    throw ResampleNeeded("sample with p=" + std::to_string(p) + " seed=" + std::to_string(seed) +
                         " is disconnected");
  }
  return Graph(g.n(), std::move(kept), Graph::Options{false});
}

SampleResult karger_sample_connected(const Graph& g, double p, std::uint64_t seed, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : mix_seed(seed, 0x5a3b1e, static_cast<std::uint64_t>(attempt));
    try {
      return SampleResult{karger_sample(g, p, s), s, attempt + 1};
    } catch (const ResampleNeeded&) {
    }
  }
  throw ResampleNeeded("no connected sample after " + std::to_string(max_attempts) + " attempts (n=" +
                       std::to_string(g.n()) + ", total weight=" + std::to_string(g.total_weight()) +
                       ", p=" + std::to_string(p) + ")");
}

}  // namespace mincut
