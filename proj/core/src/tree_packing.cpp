#include "mincut/tree_packing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "mincut/errors.hpp"
#include "mincut/oracle.hpp"
#include "mincut/union_find.hpp"

namespace mincut {

namespace {

void kruskal_into(const Graph& g, std::span<const std::int64_t> weights, std::vector<std::size_t>& order,
                  UnionFind& uf, std::vector<std::size_t>& out) {
  order.resize(g.m());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return mst_key(g.edge(x), weights[x]) < mst_key(g.edge(y), weights[y]);
  });
  uf = UnionFind(static_cast<std::size_t>(g.n()));
  out.clear();
  for (std::size_t id : order) {
    if (uf.unite(g.edge(id).u, g.edge(id).v)) {
      out.push_back(id);
      if (out.size() + 1 == static_cast<std::size_t>(g.n())) break;
    }
  }
  std::sort(out.begin(), out.end());
}

std::vector<char> contracted_flags(const Graph& g, const std::vector<NodeId>& labels) {
  std::vector<char> flags(g.m(), 0);
  if (labels.empty()) return flags;
  if (labels.size() != static_cast<std::size_t>(g.n())) throw Error("one label per node required");
  for (std::size_t i = 0; i < g.m(); ++i) flags[i] = labels[g.edge(i).u] == labels[g.edge(i).v] ? 1 : 0;
  return flags;
}

Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes, std::vector<std::size_t>& edge_map) {
  std::vector<NodeId> local(g.n(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  edge_map.clear();
  for (std::size_t i = 0; i < g.m(); ++i) {
    const Edge& e = g.edge(i);
    if (local[e.u] >= 0 && local[e.v] >= 0) {
      edges.push_back(Edge{local[e.u], local[e.v], e.w});
      edge_map.push_back(i);
    }
  }
  return Graph(static_cast<NodeId>(nodes.size()), std::move(edges), Graph::Options{false});
}

void ideal_recurse(const Graph& g, const std::vector<std::size_t>& to_parent, std::vector<Rational>& out) {
  const Strength s = strength(g);
  const auto block = s.partition.block_of(g.n());
  const Rational inv = Rational(1) / s.phi;
  for (std::size_t i = 0; i < g.m(); ++i) {
    if (block[g.edge(i).u] != block[g.edge(i).v]) out[to_parent[i]] = inv;
  }
  for (const auto& nodes : s.partition.blocks) {
    if (nodes.size() < 2) continue;
    std::vector<std::size_t> local_map;
    const Graph sub = induced_subgraph(g, nodes, local_map);
    for (std::size_t& id : local_map) id = to_parent[id];
    ideal_recurse(sub, local_map, out);
  }
}

}  // namespace

MstKey mst_key(const Edge& e, std::int64_t weight) { return MstKey{weight, e.lo(), e.hi()}; }

std::vector<std::size_t> kruskal_mst(const Graph& g, std::span<const std::int64_t> weights) {
  if (weights.size() != g.m()) throw Error("one weight per edge required");
  std::vector<std::size_t> order;
  UnionFind uf;
  std::vector<std::size_t> out;
  kruskal_into(g, weights, order, uf, out);
  return out;
}

Rational epsilon_prime(const Rational& eps) {
  if (!(eps > Rational(0))) throw Error("eps must be positive");
  constexpr std::int64_t kDen = std::int64_t{1} << 30;
  const double e = eps.to_double();
  const double root = (3.0 - std::sqrt(1.0 + 8.0 / (1.0 + e))) / 4.0;
  auto n = static_cast<std::int64_t>(std::floor(root * static_cast<double>(kDen)));
  n = std::min(n, kDen / 2 - 1);
  // (1-2x)(1-x)(1+eps) >= 1 with x = n/D, eps = p/q:
  // (D-2n)(D-n)(q+p) >= D^2 q
  const __int128 d = kDen;
  const __int128 p = eps.num();
  const __int128 q = eps.den();
  auto holds = [&](std::int64_t x) { return (d - 2 * x) * (d - x) * (q + p) >= d * d * q; };
  while (n > 0 && !holds(n)) --n;
  if (n <= 0) throw Error("eps too small for a positive eps'");
  return Rational(n, kDen);
}

std::int64_t tree_count_for(std::int64_t lambda_bound, double m, const Rational& eps) {
  if (eps >= Rational(2)) throw Error("tree count requires eps < 2");
  if (!(eps > Rational(0))) throw Error("tree count requires eps > 0");
  if (lambda_bound < 1) throw Error("lambda bound must be positive");
  const long double e = static_cast<long double>(eps.num()) / static_cast<long double>(eps.den());
  const long double ln_m = m > 1.0 ? std::log(static_cast<long double>(m)) : 0.0L;
  const long double raw = 6.0L * static_cast<long double>(lambda_bound) * ln_m / (e * e);
  const auto count = static_cast<std::int64_t>(std::ceil(raw - 1e-9L));
  return std::max<std::int64_t>(count, 1);
}

Rational LoadThreshold::l_a() const {
  return (Rational(1) - Rational(2) * eps_prime) * Rational(max_load) / Rational(trees);
}

bool LoadThreshold::below(std::int64_t load) const {
  const __int128 p = eps_prime.num();
  const __int128 q = eps_prime.den();
  return static_cast<__int128>(load) * q < (q - 2 * p) * max_load;
}

bool many_components(std::int64_t components, std::int64_t nodes, const Rational& eps_prime) {
  const __int128 p = eps_prime.num();
  const __int128 q = eps_prime.den();
  return static_cast<__int128>(components) * q > (q - p) * nodes;
}

std::vector<NodeId> component_labels(NodeId n, std::span<const Edge> edges, std::span<const char> keep) {
  UnionFind uf(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (keep[i]) uf.unite(edges[i].u, edges[i].v);
  }
  std::vector<NodeId> smallest(n, -1);
  std::vector<NodeId> labels(n);
  for (NodeId v = 0; v < n; ++v) {
    NodeId& s = smallest[uf.find(v)];
    if (s < 0) s = v;
    labels[v] = s;
  }
  return labels;
}

std::int64_t TreePacking::max_load(const Graph& g) const {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < g.m(); ++i) {
    if (!contracted[i]) best = std::max(best, loads[i].max_copy());
  }
  return best;
}

Rational TreePacking::pack_val(const Graph& g) const {
  const std::int64_t ml = max_load(g);
  if (ml == 0) throw Error("pack_val of an empty packing");
  return Rational(size, ml);
}

Rational TreePacking::relative_min(const Graph& g, std::size_t e) const {
  return Rational(loads[e].min_copy(g.edge(e).w), size);
}

Rational TreePacking::relative_max(std::size_t e) const { return Rational(loads[e].max_copy(), size); }

TreePacking greedy_pack(const Graph& g, std::int64_t k, const PackOptions& options) {
  if (k < 0) throw Error("tree count must be non-negative");
  TreePacking p;
  p.labels = options.labels;
  p.contracted = contracted_flags(g, options.labels);
  p.loads.assign(g.m(), CopyLoad{});
  greedy_extend(g, p, k, options);
  return p;
}

void greedy_extend(const Graph& g, TreePacking& p, std::int64_t k, const PackOptions& options) {
  std::vector<std::int64_t> weights(g.m(), 0);
  std::vector<std::size_t> order;
  std::vector<std::size_t> tree;
  UnionFind uf;
  while (p.size < k) {
    for (std::size_t e = 0; e < g.m(); ++e) weights[e] = p.contracted[e] ? -1 : p.loads[e].min_copy(g.edge(e).w);
    kruskal_into(g, weights, order, uf, tree);
    for (std::size_t e : tree) {
      if (!p.contracted[e]) p.loads[e].add(g.edge(e).w);
    }
    if (options.record_trees) p.trees.push_back(tree);
    if (options.on_tree) options.on_tree(tree, p.size);
    ++p.size;
  }
}

TreePacking replay_packing(const Graph& g, const std::vector<std::vector<std::size_t>>& trees,
                           const std::vector<NodeId>& labels) {
  TreePacking p;
  p.labels = labels;
  p.contracted = contracted_flags(g, labels);
  p.loads.assign(g.m(), CopyLoad{});
  std::vector<std::int64_t> weights(g.m(), 0);
  for (const auto& t : trees) {
    for (std::size_t e = 0; e < g.m(); ++e) weights[e] = p.contracted[e] ? -1 : p.loads[e].min_copy(g.edge(e).w);
    if (kruskal_mst(g, weights) != t) {
      throw Error("tree " + std::to_string(p.size) + " is not the greedy minimum spanning tree");
    }
    for (std::size_t e : t) {
      if (!p.contracted[e]) p.loads[e].add(g.edge(e).w);
    }
    ++p.size;
    p.trees.push_back(t);
  }
  return p;
}

std::string packing_to_json(const TreePacking& p) {
  nlohmann::json j;
  j["labels"] = p.labels;
  j["trees"] = p.trees;
  return j.dump();
}

TreePacking packing_from_json(const Graph& g, const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  return replay_packing(g, j.at("trees").get<std::vector<std::vector<std::size_t>>>(),
                        j.at("labels").get<std::vector<NodeId>>());
}

std::vector<Rational> ideal_loads(const Graph& g) {
  if (g.n() > 8) throw OracleCapacityError("ideal loads are enumerated for n <= 8 only");
  std::vector<Rational> out(g.m(), Rational(0));
  std::vector<std::size_t> identity(g.m());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  ideal_recurse(g, identity, out);
  return out;
}

}  // namespace mincut
