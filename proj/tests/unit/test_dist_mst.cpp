#include <doctest.h>

#include <cmath>
#include <queue>
#include <set>

#include "mincut/congest/dist_mst.hpp"
#include "mincut/generators.hpp"
#include "mincut/random.hpp"
#include "mincut/tree_packing.hpp"

using namespace mincut;
using namespace mincut::congest;

namespace {

Graph any_graph(SplitMix64& rng) {
  const NodeId n = 2 + static_cast<NodeId>(uniform_below(rng, 40));
  const std::string kinds[] = {"cycle", "path", "star", "weighted", "regular", "complete"};
  const std::string kind = kinds[uniform_below(rng, 6)];
  if (kind == "cycle" && n >= 3) return cycle_graph(n);
  if (kind == "star") return star_graph(n);
  if (kind == "complete" && n <= 12) return complete_graph(n);
  if (kind == "regular" && n >= 6 && n % 2 == 0) return random_regular(n, 3, rng());
  if (kind == "weighted") return weighted_random(n, 0.2, 3, rng());
  return path_graph(n);
}

std::vector<std::int64_t> random_keys(SplitMix64& rng, const Graph& g) {
  std::vector<std::int64_t> w(g.m());
  for (auto& x : w) x = static_cast<std::int64_t>(uniform_below(rng, 4)) - 1;
  return w;
}

// Longest shortest path inside the fragment, using tree edges only.
int fragment_diameter(const Graph& g, const DistTree& t, const std::vector<NodeId>& frag, NodeId f) {
  std::vector<std::vector<NodeId>> adj(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    const NodeId p = t.parent[v];
    if (p >= 0 && frag[p] == f && frag[v] == f) {
      adj[v].push_back(p);
      adj[p].push_back(v);
    }
  }
  int best = 0;
  for (NodeId s = 0; s < g.n(); ++s) {
    if (frag[s] != f) continue;
    std::vector<int> dist(g.n(), -1);
    std::queue<NodeId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId x = q.front();
      q.pop();
      best = std::max(best, dist[x]);
      for (NodeId y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push(y);
        }
      }
    }
    for (NodeId v = 0; v < g.n(); ++v) {
      if (frag[v] == f && dist[v] < 0) return -1;  // not connected
    }
  }
  return best;
}

}  // namespace

TEST_CASE("MST drops the heaviest cycle edge") {
  const Graph g = cycle_graph(4);
  const Network net(g);
  std::vector<std::int64_t> w{1, 2, 4, 8};
  const DistTree t = dist_mst(net, w, {});
  CHECK(t.edges == std::vector<std::size_t>{0, 1, 2});
  CHECK(t.parent[0] == -1);
  CHECK(t.report.max_msgs_per_edge_per_round <= 1);
}

TEST_CASE("MST matches Kruskal under lexicographic keys") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 120; ++trial) {
    const Graph g = any_graph(rng);
    const Network net(g);
    const auto w = random_keys(rng, g);
    const DistTree t = dist_mst(net, w, {});
    REQUIRE(t.edges == kruskal_mst(g, w));
    CHECK(t.report.max_msgs_per_edge_per_round <= 1);
    CHECK(t.phases <= static_cast<int>(std::ceil(std::log2(g.n()))) + 1);
    const RootedTree rt = t.rooted(g);
    for (NodeId v = 0; v < g.n(); ++v) CHECK(rt.depth(v) == t.depth[v]);
  }
}

TEST_CASE("contracted components are spanned by their own edges") {
  const Graph g = two_cliques_bridge(5, 5, 1);
  const Network net(g);
  std::vector<std::int64_t> w(g.m(), 3);
  for (std::size_t e = 0; e < g.m(); ++e) {
    if (g.edge(e).hi() < 5) w[e] = -1;
  }
  const DistTree t = dist_mst(net, w, {});
  int inside = 0;
  for (std::size_t e : t.edges) inside += w[e] == -1;
  CHECK(inside == 4);
}

TEST_CASE("fragments of a path") {
  const Graph g = path_graph(9);
  const Network net(g);
  const DistTree t = dist_mst(net, std::vector<std::int64_t>(g.m(), 0), {});
  const BfsTree bfs = bfs_tree(net, 0, {});
  const Fragments f = fragment_decompose(net, t, bfs, {});
  CHECK(f.threshold == 3);
  CHECK(f.ids == std::vector<NodeId>{0, 3, 6});
  CHECK(f.roots == std::vector<NodeId>{0, 3, 6});
  CHECK(f.parent_fragment == std::vector<NodeId>{-1, 0, 3});
  CHECK(f.id == std::vector<NodeId>{0, 0, 0, 3, 3, 3, 6, 6, 6});
}

TEST_CASE("fragments of a star and of a tiny graph") {
  const Graph star = star_graph(10);
  const Network net(star);
  const DistTree t = dist_mst(net, std::vector<std::int64_t>(star.m(), 0), {});
  const Fragments f = fragment_decompose(net, t, bfs_tree(net, 0, {}), {});
  CHECK(f.count() == 1);
  CHECK(fragment_diameter(star, t, f.id, 0) == 2);

  const Graph small = cycle_graph(4);
  const Network net4(small);
  const DistTree t4 = dist_mst(net4, std::vector<std::int64_t>(small.m(), 0), {});
  const Fragments f4 = fragment_decompose(net4, t4, bfs_tree(net4, 0, {}), {});
  CHECK(f4.count() <= 2);
}

TEST_CASE("fragment invariants on random trees") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    const Graph g = any_graph(rng);
    const Network net(g);
    const DistTree t = dist_mst(net, random_keys(rng, g), {});
    const Fragments f = fragment_decompose(net, t, bfs_tree(net, 0, {}), {});
    const auto k = static_cast<std::size_t>(std::ceil(std::sqrt(g.n())));
    CHECK(f.count() <= k + 1);
    std::set<NodeId> seen;
    for (std::size_t i = 0; i < f.count(); ++i) {
      const NodeId id = f.ids[i];
      NodeId smallest = g.n();
      for (NodeId v = 0; v < g.n(); ++v) {
        if (f.id[v] == id) smallest = std::min(smallest, v);
      }
      CHECK(smallest == id);
      CHECK(f.id[f.roots[i]] == id);
      // the fragment root is the member nearest the tree root
      const NodeId p = t.parent[f.roots[i]];
      CHECK((p < 0 ? -1 : f.id[p]) == f.parent_fragment[i]);
      const int diam = fragment_diameter(g, t, f.id, id);
      CHECK(diam >= 0);
      CHECK(diam <= 2 * f.threshold);
      seen.insert(id);
    }
    CHECK(seen.size() == f.count());
    // walking parent fragments always reaches the top, so T_F is a tree
    for (std::size_t i = 0; i < f.count(); ++i) {
      NodeId cur = f.ids[i];
      std::size_t steps = 0;
      while (cur >= 0 && steps <= f.count()) {
        cur = f.parent_fragment[f.index_of(cur)];
        ++steps;
      }
      CHECK(cur == -1);
    }
    CHECK(f.report.max_msgs_per_edge_per_round <= 1);
  }
}
