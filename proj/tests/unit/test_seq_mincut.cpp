#include <doctest.h>

#include <cmath>

#include "mincut/errors.hpp"
#include "mincut/generators.hpp"
#include "mincut/oracle.hpp"
#include "mincut/random.hpp"
#include "mincut/seq_mincut.hpp"

using namespace mincut;

namespace {

Graph small_graph(SplitMix64& rng) {
  const NodeId n = 4 + static_cast<NodeId>(uniform_below(rng, 7));
  switch (uniform_below(rng, 4)) {
    case 0:
      return weighted_random(n, 0.35 + 0.4 * uniform01(rng), 2, rng());
    case 1:
      return cycle_graph(n);
    case 2:
      return two_cliques_bridge(n / 2, n - n / 2, 1 + static_cast<Weight>(uniform_below(rng, 2)));
    default:
      return planted_cut(4, n, 1 + static_cast<int>(uniform_below(rng, 2)), 0.9, rng());
  }
}

void check_geometry(const ApproxResult& r) {
  const int cap = level_cap(r.levels.empty() ? 2 : r.levels.front().nodes, r.eps_prime);
  CHECK(static_cast<int>(r.levels.size()) <= cap - 1);
  for (std::size_t i = 0; i + 1 < r.levels.size(); ++i) {
    const LevelTrace& a = r.levels[i];
    const LevelTrace& b = r.levels[i + 1];
    CHECK_FALSE(a.component_branch);
    // nodes shrink to at most (1 - eps') n_L; edges to at most m_L / (1 + eps')
    CHECK(Rational(b.nodes) <= (Rational(1) - r.eps_prime) * Rational(a.nodes));
    CHECK(Rational(b.edges) * (Rational(1) + r.eps_prime) <= Rational(a.edges));
  }
}

}  // namespace

TEST_CASE("1-respecting minimum over recorded trees matches a direct scan") {
  const Graph g = weighted_random(9, 0.5, 3, 17);
  const TreePacking p = greedy_pack(g, 15, PackOptions{{}, true, {}});
  const Cut c = one_respect_all_trees(g, p);
  CHECK(c.weight == cut_weight(g, c.side));
  Weight best = kNoCut;
  for (const auto& edges : p.trees) {
    const RootedTree t = RootedTree::from_edges(g, edges, 0);
    for (NodeId v = 1; v < g.n(); ++v) best = std::min(best, cut_weight(g, t.subtree(v)));
  }
  CHECK(c.weight == best);
}

TEST_CASE("lambda estimate bounds lambda from above") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = small_graph(rng);
    const LambdaEstimate est = estimate_lambda(g);
    const Weight lambda = brute_force_mincut(g).weight;
    CHECK(est.upper >= lambda);
    CHECK(est.upper <= est.guess);
    CHECK(Rational(lambda) <= Rational(3) * est.pack_val);
  }
}

TEST_CASE("approximation stays within 1 + eps") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = small_graph(rng);
    const Weight lambda = brute_force_mincut(g).weight;
    for (const Rational eps : {Rational(1), Rational(1, 2)}) {
      const ApproxResult r = approx_min_cut(g, eps, 0);
      CHECK(r.cut.weight == cut_weight(g, r.cut.side));
      CHECK(Rational(r.cut.weight) <= (Rational(1) + eps) * Rational(lambda));
      check_geometry(r);
    }
  }
}

TEST_CASE("exact mode reproduces the minimum cut") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = small_graph(rng);
    const Weight lambda = brute_force_mincut(g).weight;
    if (lambda > 3) continue;
    const ApproxResult r = exact_min_cut(g, 0, ApproxOptions{lambda, false});
    CHECK(r.cut.weight == lambda);
    check_geometry(r);
  }
}

TEST_CASE("known graphs") {
  CHECK(exact_min_cut(cycle_graph(8), 0).cut.weight == 2);
  CHECK(exact_min_cut(two_cliques_bridge(4, 5, 1), 0).cut.weight == 1);
  const ApproxResult star = approx_min_cut(star_graph(6, {3}), Rational(1), 0);
  CHECK(star.cut.weight == 3);
  const ApproxResult path = approx_min_cut(path_graph(5), Rational(1, 2), 0);
  CHECK(path.cut.weight == 1);
}

TEST_CASE("recorded levels carry their trees") {
  const Graph g = planted_cut(6, 6, 1, 1.0, 4);
  const ApproxResult r = approx_min_cut(g, Rational(1), 0, ApproxOptions{std::nullopt, true});
  REQUIRE_FALSE(r.levels.empty());
  for (const LevelTrace& level : r.levels) {
    CHECK(static_cast<std::int64_t>(level.tree_edges.size()) == level.trees);
    const TreePacking replay = replay_packing(g, level.tree_edges, level.labels);
    CHECK(replay.max_load(g) == level.max_load);
  }
}

TEST_CASE("value estimate sandwich") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = small_graph(rng);
    const Weight lambda = brute_force_mincut(g).weight;
    const Rational eps(1, 2);
    const ValueEstimate v = estimate_value(g, eps, lambda);
    CHECK(Rational(lambda) <= (Rational(2) + eps) * v.pack_val);
    CHECK(v.value >= Rational(lambda));
    CHECK(v.value <= (Rational(1) + eps / Rational(2)) * Rational(lambda));
  }
}

TEST_CASE("sampling parameters") {
  const Rational ep = sampling_eps_prime(Rational(1, 2));
  const double x = ep.to_double();
  CHECK((1 + x) * (1 + x) / (1 - x) <= 1.5 + 1e-12);
  CHECK((1 + x + 1e-5) * (1 + x + 1e-5) / (1 - x - 1e-5) > 1.5);
  CHECK(sampling_probability(12, Rational(1, 2), 11, 2) == doctest::Approx(24.0 * std::log(12.0) / (0.25 * 11.0)));
}

TEST_CASE("sampled approximation") {
  // small lambda: p clamps to 1 and sampling is skipped
  const Graph k12 = complete_graph(12);
  const SampledResult skip = sampled_approx_min_cut(k12, Rational(1), 1);
  CHECK_FALSE(skip.sampled);
  CHECK(skip.cut.weight <= 22);

  // a heavy triangle keeps the sampled packing cheap
  const Graph heavy(3, {{0, 1, 3000}, {1, 2, 2000}, {0, 2, 2000}}, Graph::Options{false});
  const SampledResult s = sampled_approx_min_cut(heavy, Rational(1), 8, 1, 4000);
  CHECK(s.sampled);
  CHECK(s.p < 1.0);
  CHECK(s.cut.weight == cut_weight(heavy, s.cut.side));
  CHECK(Rational(s.cut.weight) <= Rational(2) * Rational(4000));
}
