#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "mincut/errors.hpp"
#include "mincut/generators.hpp"
#include "mincut/graph.hpp"
#include "mincut/graph_io.hpp"
#include "mincut/oracle.hpp"
#include "mincut/random.hpp"
#include "mincut/rational.hpp"
#include "mincut/sampling.hpp"

using namespace mincut;

namespace {

// Independent cut evaluation straight from the edge list, no Graph helpers.
Weight naive_cut(const std::vector<Edge>& edges, const std::set<NodeId>& s) {
  Weight total = 0;
  for (const Edge& e : edges) {
    if (s.count(e.u) != s.count(e.v)) total += e.w;
  }
  return total;
}

std::vector<Edge> to_vector(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

Graph random_small_graph(SplitMix64& rng, NodeId n) {
  const double p = 0.3 + 0.6 * uniform01(rng);
  const Weight wmax = 1 + static_cast<Weight>(uniform_below(rng, 4));
  return weighted_random(n, p, wmax, rng());
}

}  // namespace

TEST_CASE("rational arithmetic stays exact") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(-4, -6) == Rational(2, 3));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK(Rational::parse("3/9") == Rational(1, 3));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("graph construction rejects invalid input") {
  CHECK_THROWS_AS(Graph(1, {}), InvalidGraph);
  CHECK_THROWS_AS(Graph(3, {{0, 1, 1}}), InvalidGraph);                       // disconnected
  CHECK_THROWS_AS(Graph(2, {{0, 0, 1}, {0, 1, 1}}), InvalidGraph);            // self-loop
  CHECK_THROWS_AS(Graph(2, {{0, 1, 1}, {1, 0, 2}}), InvalidGraph);            // repeated pair
  CHECK_THROWS_AS(Graph(2, {{0, 1, 0}}), InvalidGraph);                       // zero weight
  CHECK_THROWS_AS(Graph(2, {{0, 2, 1}}), InvalidGraph);                       // id out of range
  CHECK_THROWS_AS(Graph(2, {{0, 1, 17}}), InvalidGraph);                      // 17 > 2^4
  CHECK_NOTHROW(Graph(2, {{0, 1, 16}}));
  CHECK_NOTHROW(Graph(2, {{0, 1, 17}}, Graph::Options{false}));
}

TEST_CASE("adjacency is derived and sorted") {
  const Graph g(4, {{3, 0, 2}, {0, 1, 1}, {2, 1, 5}, {1, 3, 1}});
  CHECK(g.total_weight() == 9);
  CHECK(g.weighted_degree(1) == 7);
  const auto adj = g.adjacent(1);
  REQUIRE(adj.size() == 3);
  CHECK(adj[0].neighbor == 0);
  CHECK(adj[1].neighbor == 2);
  CHECK(adj[2].neighbor == 3);
  CHECK(g.find_edge(1, 2) == std::optional<std::size_t>{2});
  CHECK(!g.find_edge(0, 2));
}

TEST_CASE("cut_weight examples") {
  const Graph path = path_graph(3);
  CHECK(cut_weight(path, std::vector<NodeId>{0}) == 1);

  const Graph k4 = complete_graph(4);
  CHECK(cut_weight(k4, std::vector<NodeId>{0, 1}) == naive_cut(to_vector(k4), {0, 1}));
  CHECK(cut_weight(k4, std::vector<NodeId>{1, 3}) == 4);

  const Graph star = star_graph(5, {3});
  CHECK(cut_weight(star, std::vector<NodeId>{2}) == 3);

  CHECK_THROWS_AS(cut_weight(k4, std::vector<NodeId>{}), InvalidCut);
  CHECK_THROWS_AS(cut_weight(k4, std::vector<NodeId>{0, 1, 2, 3}), InvalidCut);
}

TEST_CASE("cut_weight is symmetric and matches the naive sum") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const NodeId n = 2 + static_cast<NodeId>(uniform_below(rng, 10));
    const Graph g = random_small_graph(rng, n);
    std::set<NodeId> s;
    std::vector<NodeId> side;
    std::vector<NodeId> rest;
    while (s.empty() || static_cast<NodeId>(s.size()) == n) {
      s.clear();
      for (NodeId v = 0; v < n; ++v) {
        if (bernoulli(rng, 0.5)) s.insert(v);
      }
    }
    for (NodeId v = 0; v < n; ++v) (s.count(v) ? side : rest).push_back(v);
    CHECK(cut_weight(g, side) == cut_weight(g, rest));
    CHECK(cut_weight(g, side) == naive_cut(to_vector(g), s));
  }
}

TEST_CASE("part_val examples") {
  const Graph k4 = complete_graph(4);
  CHECK(part_val(k4, Partition{{{0}, {1}, {2}, {3}}}) == Rational(2));
  CHECK(part_val(k4, Partition{{{0}, {1, 2, 3}}}) == Rational(3));
  CHECK_THROWS_AS(part_val(k4, Partition{{{0, 1, 2, 3}}}), InvalidPartition);
  CHECK_THROWS_AS(part_val(k4, Partition{{{0, 1}, {1, 2, 3}}}), InvalidPartition);

  // strength of K_4 by enumeration: min over partitions is 2
  const Strength s = strength(k4);
  CHECK(s.phi == Rational(2));
  CHECK(s.partition.size() == 4);

  // a minimum cut viewed as a partition has value exactly lambda
  const Graph g = two_cliques_bridge(4, 4, 1);
  const Cut c = brute_force_mincut(g);
  std::vector<NodeId> labels(g.n(), 1);
  for (NodeId v : c.side) labels[v] = 0;
  CHECK(part_val(g, Partition::from_labels(labels)) == Rational(c.weight));
}

TEST_CASE("partition enumeration counts Bell numbers") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (NodeId n = 1; n <= 8; ++n) {
    std::size_t count = 0;
    std::set<std::vector<NodeId>> seen;
    for_each_partition(n, [&](std::span<const NodeId> rgs) {
      ++count;
      seen.insert(std::vector<NodeId>(rgs.begin(), rgs.end()));
    });
    CHECK(count == bell[n]);
    CHECK(seen.size() == count);
  }
}

TEST_CASE("brute force oracle examples") {
  CHECK(brute_force_mincut(cycle_graph(5)).weight == 2);
  CHECK(brute_force_mincut(complete_graph(4)).weight == 3);
  const Cut bridge = brute_force_mincut(two_cliques_bridge(4, 4, 1));
  CHECK(bridge.weight == 1);
  const std::vector<NodeId> first{0, 1, 2, 3};
  const std::vector<NodeId> second{4, 5, 6, 7};
  CHECK((bridge.side == first || bridge.side == second));
  CHECK_THROWS_AS(enumerate_mincut(cycle_graph(21)), OracleCapacityError);
  CHECK_THROWS_AS(brute_force_mincut(cycle_graph(401)), OracleCapacityError);
  CHECK(brute_force_mincut(cycle_graph(30)).weight == 2);
}

TEST_CASE("enumeration and Stoer-Wagner agree on random graphs") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const NodeId n = 2 + static_cast<NodeId>(uniform_below(rng, 11));
    const Graph g = random_small_graph(rng, n);
    const Cut a = enumerate_mincut(g);
    const Cut b = stoer_wagner(g);
    CHECK(a.weight == b.weight);
    CHECK(cut_weight(g, a.side) == a.weight);
    CHECK(cut_weight(g, b.side) == b.weight);
  }
}

TEST_CASE("edge list round trip is bit exact") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_small_graph(rng, 2 + static_cast<NodeId>(uniform_below(rng, 15)));
    const std::string text = to_edge_list(g);
    const Graph back = parse_edge_list(text);
    CHECK(back == g);
    CHECK(to_edge_list(back) == text);
    CHECK(graph_hash(back) == graph_hash(g));
  }
  CHECK_THROWS_AS(parse_edge_list("3 2\n0 1 1\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_edge_list("2 1\n0 1 x\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_edge_list("2 1\n0 1 1 4\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_edge_list("2 1\n0 1 1\n0 1 1\n"), InvalidGraph);
}

TEST_CASE("generators") {
  const Graph c4 = generate("cycle:4", 0);
  CHECK(c4.m() == 4);
  CHECK(brute_force_mincut(c4).weight == 2);
  CHECK(generate("complete:5", 0).m() == 10);

  const Graph planted = generate("planted:10,10,3,0.8", 1);
  const Cut c = brute_force_mincut(planted);
  CHECK(c.weight == 3);
  std::vector<NodeId> block_a(10);
  std::vector<NodeId> block_b(10);
  for (NodeId v = 0; v < 10; ++v) {
    block_a[v] = v;
    block_b[v] = v + 10;
  }
  CHECK((c.side == block_a || c.side == block_b));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph r = generate("regular:20,3", seed);
    for (NodeId v = 0; v < r.n(); ++v) CHECK(r.degree(v) == 3);
  }
  CHECK(generate("weighted:12,0.5,5", 9) == generate("weighted:12,0.5,5", 9));
  CHECK_THROWS_AS(generate("planted:3,3,3,1.0", 0), InfeasibleSpec);
  CHECK_THROWS_AS(generate("regular:5,3", 0), InfeasibleSpec);
  CHECK_THROWS_AS(generate("bogus:1", 0), InfeasibleSpec);
  CHECK_THROWS_AS(generate("cycle:x", 0), InfeasibleSpec);
}

TEST_CASE("karger sampling") {
  const Graph k6 = complete_graph(6);
  CHECK(karger_sample(k6, 1.0, 17) == k6);
  CHECK(karger_sample_connected(k6, 0.5, 4).graph == karger_sample_connected(k6, 0.5, 4).graph);

  auto kept_weight = [](const std::vector<Edge>& edges) {
    Weight w = 0;
    for (const Edge& e : edges) w += e.w;
    return static_cast<double>(w);
  };
  double total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) total += kept_weight(karger_sample_edges(k6, 0.5, seed));
  CHECK(std::abs(total / 1000 - 7.5) <= 0.05 * 7.5);

  const Graph heavy(2, {{0, 1, 10}});
  double kept = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) kept += kept_weight(karger_sample_edges(heavy, 0.5, seed));
  CHECK(std::abs(kept / 1000 - 5.0) <= 0.05 * 5.0);
  CHECK_THROWS_AS(karger_sample(path_graph(5), 0.01, 1), ResampleNeeded);
  CHECK_THROWS_AS(karger_sample_connected(path_graph(30), 0.01, 1), ResampleNeeded);
}
