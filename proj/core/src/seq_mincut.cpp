#include "mincut/seq_mincut.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mincut/errors.hpp"
#include "mincut/sampling.hpp"

namespace mincut {

namespace {

NodeId distinct_labels(const std::vector<NodeId>& labels) {
  NodeId count = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(labels.size()); ++v) {
    if (labels[v] == v) ++count;
  }
  return count;
}

Weight contracted_edge_count(const Graph& g, const std::vector<NodeId>& labels) {
  Weight total = 0;
  for (const Edge& e : g.edges()) {
    if (labels[e.u] != labels[e.v]) total += e.w;
  }
  return total;
}

}  // namespace

TreeMin tree_one_respect_min(const Graph& g, const RootedTree& t, const std::vector<char>& contracted) {
  const CutProfile profile = one_respect_profile(g, t);
  TreeMin best;
  for (NodeId v = 0; v < g.n(); ++v) {
    if (v == t.root()) continue;
    if (!contracted.empty() && contracted[t.parent_edge(v)]) continue;
    if (profile.cut[v] < best.weight) best = TreeMin{profile.cut[v], v};
  }
  return best;
}

Cut one_respect_all_trees(const Graph& g, const TreePacking& packing) {
  if (packing.trees.empty()) throw Error("packing has no recorded trees");
  Weight best = kNoCut;
  std::vector<NodeId> side;
  for (const auto& edges : packing.trees) {
    const RootedTree t = RootedTree::from_edges(g, edges, 0);
    const TreeMin m = tree_one_respect_min(g, t, packing.contracted);
    if (m.weight < best) {
      best = m.weight;
      side = t.subtree(m.node);
    }
  }
  if (best == kNoCut) throw Error("no tree has a 1-respecting candidate");
  return Cut{std::move(side), best};
}

LambdaEstimate estimate_lambda(const Graph& g) {
  const double m = static_cast<double>(g.total_weight());
  TreePacking p = greedy_pack(g, 0);
  for (std::int64_t guess = 1;; guess *= 2) {
    const std::int64_t k = tree_count_for(guess, m, Rational(1));
    greedy_extend(g, p, k);
    const Rational u = Rational(3) * p.pack_val(g);
    if (u <= Rational(guess)) {
      return LambdaEstimate{std::max<std::int64_t>(1, u.floor()), guess, k, p.pack_val(g)};
    }
    if (guess > (std::int64_t{1} << 40)) throw InternalInvariantError("lambda estimate did not converge");
  }
}

int level_cap(NodeId n, const Rational& eps_prime) {
  return static_cast<int>(std::ceil(std::log(static_cast<double>(n)) / eps_prime.to_double())) + 2;
}

ApproxResult approx_min_cut(const Graph& g, const Rational& eps, std::uint64_t /*seed*/, const ApproxOptions& options) {
  if (!(eps > Rational(0)) || eps > Rational(1)) throw Error("eps must lie in (0, 1]");
  ApproxResult result;
  result.eps = eps;
  result.eps_prime = epsilon_prime(eps);
  result.lambda_bound = options.lambda_bound ? *options.lambda_bound : estimate_lambda(g).upper;
  const Rational& ep = result.eps_prime;
  const int cap = level_cap(g.n(), ep);

  Weight best = kNoCut;
  std::vector<NodeId> best_side;
  std::vector<NodeId> labels(g.n());
  for (NodeId v = 0; v < g.n(); ++v) labels[v] = v;

  for (int level = 0;; ++level) {
    const NodeId nodes = distinct_labels(labels);
    if (nodes <= 1) break;
    if (level >= cap) throw InternalInvariantError("recursion exceeded " + std::to_string(cap) + " levels");
    LevelTrace trace;
    trace.level = level;
    trace.nodes = nodes;
    trace.edges = contracted_edge_count(g, labels);
    trace.labels = labels;
    trace.trees = tree_count_for(result.lambda_bound, static_cast<double>(trace.edges), ep);

    PackOptions pack;
    pack.labels = labels;
    pack.record_trees = options.record_trees;
    std::vector<char> contracted(g.m(), 0);
    for (std::size_t i = 0; i < g.m(); ++i) contracted[i] = labels[g.edge(i).u] == labels[g.edge(i).v];
    pack.on_tree = [&](std::span<const std::size_t> edges, std::int64_t) {
      const RootedTree t = RootedTree::from_edges(g, edges, 0);
      const TreeMin m = tree_one_respect_min(g, t, contracted);
      trace.best_one_respect = std::min(trace.best_one_respect, m.weight);
      if (m.weight < best) {
        best = m.weight;
        best_side = t.subtree(m.node);
      }
    };
    TreePacking packing = greedy_pack(g, trace.trees, pack);
    result.trees_packed += packing.size;
    if (options.record_trees) trace.tree_edges = std::move(packing.trees);

    const LoadThreshold threshold{ep, packing.size, packing.max_load(g)};
    trace.max_load = threshold.max_load;
    trace.l_a = threshold.l_a();
    std::vector<char> keep(g.m(), 0);
    for (std::size_t i = 0; i < g.m(); ++i) {
      keep[i] = contracted[i] || threshold.below(packing.loads[i].min_copy(g.edge(i).w));
    }
    std::vector<NodeId> next = component_labels(g.n(), g.edges(), keep);
    trace.components = distinct_labels(next);

    if (many_components(trace.components, nodes, ep)) {
      trace.component_branch = true;
      std::vector<Weight> boundary(g.n(), 0);
      for (const Edge& e : g.edges()) {
        if (next[e.u] != next[e.v]) {
          boundary[next[e.u]] += e.w;
          boundary[next[e.v]] += e.w;
        }
      }
      NodeId chosen = -1;
      for (NodeId c = 0; c < g.n(); ++c) {
        if (next[c] != c) continue;
        if (chosen < 0 || boundary[c] < boundary[chosen]) chosen = c;
      }
      if (trace.components >= 2) {
        trace.component_cut = boundary[chosen];
        if (boundary[chosen] < best) {
          best = boundary[chosen];
          best_side.clear();
          for (NodeId v = 0; v < g.n(); ++v) {
            if (next[v] == chosen) best_side.push_back(v);
          }
        }
      }
      result.levels.push_back(std::move(trace));
      break;
    }
    result.levels.push_back(std::move(trace));
    labels = std::move(next);
  }
  if (best == kNoCut) throw InternalInvariantError("no candidate cut was found");
  result.cut = Cut{std::move(best_side), best};
  return result;
}

ApproxResult exact_min_cut(const Graph& g, std::uint64_t seed, const ApproxOptions& options) {
  ApproxOptions opts = options;
  if (!opts.lambda_bound) opts.lambda_bound = estimate_lambda(g).upper;
  return approx_min_cut(g, Rational(1, *opts.lambda_bound + 1), seed, opts);
}

ValueEstimate estimate_value(const Graph& g, const Rational& eps, std::optional<std::int64_t> lambda_bound) {
  const std::int64_t u = lambda_bound ? *lambda_bound : estimate_lambda(g).upper;
  ValueEstimate out;
  out.trees = tree_count_for(u, static_cast<double>(g.total_weight()), eps);
  PackOptions pack;
  const std::vector<char> none;
  pack.on_tree = [&](std::span<const std::size_t> edges, std::int64_t) {
    const RootedTree t = RootedTree::from_edges(g, edges, 0);
    out.best_one_respect = std::min(out.best_one_respect, tree_one_respect_min(g, t, none).weight);
  };
  const TreePacking p = greedy_pack(g, out.trees, pack);
  out.pack_val = p.pack_val(g);
  const Rational bound = (Rational(2) + eps) * out.pack_val;
  out.value = std::min(Rational(out.best_one_respect), bound);
  return out;
}

Rational sampling_eps_prime(const Rational& eps) {
  const double e = eps.to_double();
  const double root = (-(3.0 + e) + std::sqrt((3.0 + e) * (3.0 + e) + 4.0 * e)) / 2.0;
  constexpr std::int64_t kDen = std::int64_t{1} << 20;
  const auto n = static_cast<std::int64_t>(std::floor(root * static_cast<double>(kDen)));
  if (n <= 0) throw Error("eps too small for sampling");
  return Rational(n, kDen);
}

double sampling_probability(NodeId n, const Rational& eps_prime, std::int64_t lambda_bound, int d) {
  const double e = eps_prime.to_double();
  return 6.0 * (d + 2) * std::log(static_cast<double>(n)) / (e * e * static_cast<double>(lambda_bound));
}

SampledResult sampled_approx_min_cut(const Graph& g, const Rational& eps, std::uint64_t seed, int d,
                                     std::optional<std::int64_t> lambda_bound) {
  const std::int64_t u = lambda_bound ? *lambda_bound : estimate_lambda(g).upper;
  const Rational ep = sampling_eps_prime(eps);
  SampledResult out;
  out.p = std::min(1.0, sampling_probability(g.n(), ep, u, d));
  if (out.p >= 1.0) {
    out.inner = approx_min_cut(g, eps, seed, ApproxOptions{u, false});
    out.cut = out.inner.cut;
    out.sample_weight = g.total_weight();
    return out;
  }
  SampleResult sample = karger_sample_connected(g, out.p, seed);
  out.sampled = true;
  out.sample_seed = sample.seed;
  out.sample_weight = sample.graph.total_weight();
  out.inner = approx_min_cut(sample.graph, ep, seed);
  out.cut = make_cut(g, out.inner.cut.side);
  return out;
}

}  // namespace mincut
