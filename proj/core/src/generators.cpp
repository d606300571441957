#include "mincut/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "mincut/errors.hpp"
#include "mincut/oracle.hpp"
#include "mincut/random.hpp"
#include "mincut/union_find.hpp"

namespace mincut {

namespace {

std::vector<Edge> gnp_edges(NodeId offset, NodeId n, double p, SplitMix64& rng) {
  std::vector<Edge> out;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (bernoulli(rng, p)) out.push_back(Edge{offset + i, offset + j, 1});
    }
  }
  return out;
}

Weight block_connectivity(NodeId n, const std::vector<Edge>& edges) {
  if (!is_connected(n, edges)) return 0;
  return brute_force_mincut(Graph(n, edges)).weight;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

long long to_int(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw InfeasibleSpec("bad integer '" + s + "' in " + spec);
  }
  if (used != s.size()) throw InfeasibleSpec("bad integer '" + s + "' in " + spec);
  return v;
}

double to_double(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InfeasibleSpec("bad number '" + s + "' in " + spec);
  }
  if (used != s.size()) throw InfeasibleSpec("bad number '" + s + "' in " + spec);
  return v;
}

NodeId node_count(long long v, const std::string& spec) {
  if (v < 2 || v > (1 << 24)) throw InfeasibleSpec("node count out of range in " + spec);
  return static_cast<NodeId>(v);
}

}  // namespace

Graph cycle_graph(NodeId n) {
  if (n < 3) throw InfeasibleSpec("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) edges.push_back(Edge{i, (i + 1) % n, 1});
  return Graph(n, std::move(edges));
}

Graph complete_graph(NodeId n, Weight w) {
  if (n < 2) throw InfeasibleSpec("complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.push_back(Edge{i, j, w});
  }
  return Graph(n, std::move(edges));
}

Graph path_graph(NodeId n) {
  if (n < 2) throw InfeasibleSpec("path needs n >= 2");
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1, 1});
  return Graph(n, std::move(edges));
}

Graph star_graph(NodeId n, const std::vector<Weight>& weights) {
  if (n < 2 || weights.empty()) throw InfeasibleSpec("star needs n >= 2 and at least one weight");
  std::vector<Edge> edges;
  for (NodeId i = 1; i < n; ++i) edges.push_back(Edge{0, i, weights[(i - 1) % weights.size()]});
  return Graph(n, std::move(edges));
}

Graph two_cliques_bridge(NodeId a, NodeId b, Weight bridge, Weight clique_weight) {
  if (a < 1 || b < 1) throw InfeasibleSpec("bridge graph needs nonempty cliques");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < a; ++i) {
    for (NodeId j = i + 1; j < a; ++j) edges.push_back(Edge{i, j, clique_weight});
  }
  for (NodeId i = 0; i < b; ++i) {
    for (NodeId j = i + 1; j < b; ++j) edges.push_back(Edge{a + i, a + j, clique_weight});
  }
  edges.push_back(Edge{a - 1, a, bridge});
  return Graph(a + b, std::move(edges));
}

Graph planted_cut(NodeId n1, NodeId n2, int k, double p_intra, std::uint64_t seed) {
  if (n1 < 2 || n2 < 2 || k < 1) throw InfeasibleSpec("planted cut needs blocks of size >= 2 and k >= 1");
  if (n1 - 1 <= k || n2 - 1 <= k) throw InfeasibleSpec("blocks too small to exceed connectivity k");
  if (static_cast<long long>(k) > static_cast<long long>(n1) * n2) throw InfeasibleSpec("k exceeds n1*n2");
  if (!(p_intra > 0.0 && p_intra <= 1.0)) throw InfeasibleSpec("p_intra must lie in (0, 1]");
  SplitMix64 rng(mix_seed(seed, 0x91a7ed));
  constexpr int kAttempts = 1000;
  std::vector<Edge> a;
  std::vector<Edge> b;
  bool ok = false;
  for (int attempt = 0; attempt < kAttempts && !ok; ++attempt) {
    a = gnp_edges(0, n1, p_intra, rng);
    ok = block_connectivity(n1, a) > k;
  }
  if (!ok) throw InfeasibleSpec("could not draw a first block with connectivity above k");
  ok = false;
  for (int attempt = 0; attempt < kAttempts && !ok; ++attempt) {
    b = gnp_edges(0, n2, p_intra, rng);
    ok = block_connectivity(n2, b) > k;
  }
  if (!ok) throw InfeasibleSpec("could not draw a second block with connectivity above k");

  std::vector<Edge> edges = std::move(a);
  for (const Edge& e : b) edges.push_back(Edge{e.u + n1, e.v + n1, 1});
  std::set<std::pair<NodeId, NodeId>> chosen;
  while (static_cast<int>(chosen.size()) < k) {
    const auto u = static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n1)));
    const auto v = static_cast<NodeId>(n1 + uniform_below(rng, static_cast<std::uint64_t>(n2)));
    if (chosen.insert({u, v}).second) edges.push_back(Edge{u, v, 1});
  }
  return Graph(n1 + n2, std::move(edges));
}

Graph random_regular(NodeId n, int d, std::uint64_t seed) {
  if (d < 1 || d >= n || (static_cast<long long>(n) * d) % 2 != 0) {
    throw InfeasibleSpec("regular graph needs 1 <= d < n and n*d even");
  }
  if (d == 1 && n > 2) throw InfeasibleSpec("1-regular graph on more than 2 nodes is disconnected");
  SplitMix64 rng(mix_seed(seed, 0x7e6a1a));
  std::vector<NodeId> stubs;
  for (NodeId v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  constexpr int kAttempts = 100000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    for (std::size_t i = stubs.size(); i > 1; --i) {
      std::swap(stubs[i - 1], stubs[uniform_below(rng, i)]);
    }
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      const NodeId u = std::min(stubs[i], stubs[i + 1]);
      const NodeId v = std::max(stubs[i], stubs[i + 1]);
      simple = u != v && seen.insert({u, v}).second;
      edges.push_back(Edge{u, v, 1});
    }
    if (!simple || !is_connected(n, edges)) continue;
    std::sort(edges.begin(), edges.end(),
              [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
    return Graph(n, std::move(edges));
  }
  throw InfeasibleSpec("configuration model did not produce a simple connected graph");
}

Graph weighted_random(NodeId n, double p, Weight w_max, std::uint64_t seed) {
  if (n < 2 || !(p > 0.0 && p <= 1.0) || w_max < 1) throw InfeasibleSpec("weighted graph needs n >= 2, p in (0,1], w_max >= 1");
  const __int128 bound = static_cast<__int128>(n) * n * n * n;
  if (w_max > bound) throw InfeasibleSpec("w_max exceeds n^4");
  SplitMix64 rng(mix_seed(seed, 0x3e160));
  constexpr int kAttempts = 10000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Edge> edges = gnp_edges(0, n, p, rng);
    if (!is_connected(n, edges)) continue;
    for (Edge& e : edges) e.w = 1 + static_cast<Weight>(uniform_below(rng, static_cast<std::uint64_t>(w_max)));
    return Graph(n, std::move(edges));
  }
  throw InfeasibleSpec("G(n, p) stayed disconnected; raise p");
}

RootedTree random_spanning_tree(const Graph& g, std::uint64_t seed, NodeId root) {
  SplitMix64 rng(mix_seed(seed, 0x5a77ee));
  std::vector<std::size_t> order(g.m());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
  UnionFind uf(static_cast<std::size_t>(g.n()));
  std::vector<std::size_t> chosen;
  for (std::size_t id : order) {
    if (uf.unite(g.edge(id).u, g.edge(id).v)) chosen.push_back(id);
  }
  return RootedTree::from_edges(g, chosen, root);
}

Graph generate(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InfeasibleSpec("generator spec needs 'name:args': " + spec);
  const std::string name = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ',');
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw InfeasibleSpec(name + " takes " + std::to_string(count) + " arguments: " + spec);
    }
  };
  if (name == "cycle") {
    expect(1);
    return cycle_graph(node_count(to_int(args[0], spec), spec));
  }
  if (name == "complete") {
    expect(1);
    return complete_graph(node_count(to_int(args[0], spec), spec));
  }
  if (name == "path") {
    expect(1);
    return path_graph(node_count(to_int(args[0], spec), spec));
  }
  if (name == "star") {
    expect(1);
    return star_graph(node_count(to_int(args[0], spec), spec));
  }
  if (name == "bridge") {
    expect(3);
    return two_cliques_bridge(static_cast<NodeId>(to_int(args[0], spec)), static_cast<NodeId>(to_int(args[1], spec)),
                              to_int(args[2], spec));
  }
  if (name == "planted") {
    expect(4);
    return planted_cut(static_cast<NodeId>(to_int(args[0], spec)), static_cast<NodeId>(to_int(args[1], spec)),
                       static_cast<int>(to_int(args[2], spec)), to_double(args[3], spec), seed);
  }
  if (name == "regular") {
    expect(2);
    return random_regular(node_count(to_int(args[0], spec), spec), static_cast<int>(to_int(args[1], spec)), seed);
  }
  if (name == "weighted") {
    expect(3);
    return weighted_random(node_count(to_int(args[0], spec), spec), to_double(args[1], spec),
                           to_int(args[2], spec), seed);
  }
  throw InfeasibleSpec("unknown generator '" + name + "'");
}

}  // namespace mincut
