#include "mincut/congest/dist_mincut.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mincut/congest/components.hpp"
#include "mincut/congest/dist_mst.hpp"
#include "mincut/congest/one_respect.hpp"
#include "mincut/congest/primitives.hpp"
#include "mincut/errors.hpp"
#include "mincut/tree_packing.hpp"

namespace mincut::congest {

namespace {

enum Tag : std::uint8_t { kLabel = 1 };

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();

RunOptions with_phase(const RunOptions& options, const std::string& phase) {
  RunOptions o = options;
  o.phase = phase;
  return o;
}

struct ExchangeProgram {
  struct State {
    NodeId label = 0;
    std::vector<NodeId> neighbor_label;
  };
  void init(Context& ctx, State& s) const {
    s.neighbor_label.assign(ctx.degree(), -1);
    ctx.send_all({kLabel, s.label, 0});
    ctx.halt();
  }
  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) s.neighbor_label[e.link] = static_cast<NodeId>(e.msg.a);
    ctx.halt();
  }
};

// Per-node view of the current contraction and loads. Both endpoints of an
// edge hold the same load, since both see the same trees; one copy per edge
// stands for the pair.
class Packer {
 public:
  Packer(const Graph& g, const RunOptions& options)
      : g_(g), net_(g), options_(options), loads_(g.m()), contracted_(g.m(), 0) {
    bfs_ = bfs_tree(net_, 0, with_phase(options, "bfs"));
    report_.merge(bfs_.report);
  }

  const Network& net() const { return net_; }
  const BfsTree& bfs() const { return bfs_; }
  RoundReport& report() { return report_; }
  const std::vector<CopyLoad>& loads() const { return loads_; }
  const std::vector<char>& contracted() const { return contracted_; }

  /// Labels are learned by a one-round exchange; contracted edges follow.
  void set_labels(const std::vector<NodeId>& labels) {
    std::vector<ExchangeProgram::State> st(g_.n());
    for (NodeId v = 0; v < g_.n(); ++v) st[v].label = labels[v];
    report_.merge(run(net_, ExchangeProgram{}, st, with_phase(options_, "contract")));
    for (NodeId v = 0; v < g_.n(); ++v) {
      const auto links = net_.links(v);
      for (std::size_t i = 0; i < links.size(); ++i) contracted_[links[i].edge] = st[v].neighbor_label[i] == labels[v];
    }
    loads_.assign(g_.m(), CopyLoad{});
  }

  DistTree next_tree() {
    std::vector<std::int64_t> w(g_.m());
    for (std::size_t e = 0; e < g_.m(); ++e) w[e] = contracted_[e] ? -1 : loads_[e].min_copy(g_.edge(e).w);
    DistTree t = dist_mst(net_, w, with_phase(options_, "mst"));
    report_.merge(t.report);
    for (std::size_t e : t.edges) {
      if (!contracted_[e]) loads_[e].add(g_.edge(e).w);
    }
    return t;
  }

  /// Every node learns the largest copy load on a non-contracted edge.
  std::int64_t max_load() {
    std::vector<Pair> local(g_.n(), Pair{0, 0});
    for (NodeId v = 0; v < g_.n(); ++v) {
      for (const Link& l : net_.links(v)) {
        if (!contracted_[l.edge]) local[v].first = std::max(local[v].first, loads_[l.edge].max_copy());
      }
    }
    ReduceResult r = reduce_to_all(net_, bfs_, local, PairOp::Max, with_phase(options_, "maxload"));
    report_.merge(r.report);
    return r.value[0].first;
  }

  /// Every node learns (sum of a, sum of b).
  Pair sum(const std::vector<Pair>& values, const std::string& phase) {
    ReduceResult r = reduce_to_all(net_, bfs_, values, PairOp::Sum, with_phase(options_, phase));
    report_.merge(r.report);
    return r.value[0];
  }

  ComponentCount components(const std::vector<char>& keep_edge) {
    ComponentCount c = dist_count_components(net_, bfs_, keep_edge, options_);
    report_.merge(c.report);
    return c;
  }

  /// Every node learns the lexicographically smallest (cut value, label)
  /// over the components.
  Pair lightest_component(const std::vector<NodeId>& labels) {
    ComponentCuts cuts = component_cut_values(net_, bfs_, labels, options_);
    report_.merge(cuts.report);
    std::vector<Pair> local(g_.n(), Pair{kNone, kNone});
    for (NodeId v = 0; v < g_.n(); ++v) {
      if (labels[v] == v) local[v] = Pair{cuts.value[v], v};
    }
    ReduceResult r = reduce_to_all(net_, bfs_, local, PairOp::LexMin, with_phase(options_, "component_cuts"));
    report_.merge(r.report);
    return r.value[0];
  }

  /// Side bits of the 1-respecting cut at `winner`: u is below the winner when
  /// the winner is in A(u) or u's fragment is in F(winner). The winner
  /// broadcasts its id and F(winner).
  std::vector<char> subtree_bits(const OneRespectResult& s, NodeId winner) {
    std::vector<std::vector<KeyedItem>> items(g_.n());
    items[winner].push_back({-1, winner});
    for (NodeId f : s.ancestors.below[winner]) items[winner].push_back({f, 1});
    GatherResult all = gather_to_all(net_, bfs_, std::move(items), Combine::Max, with_phase(options_, "side"));
    report_.merge(all.report);
    std::vector<char> bits(g_.n(), 0);
    for (NodeId u = 0; u < g_.n(); ++u) {
      const auto& known = all.known[u];
      const auto& a = s.ancestors.ancestors[u];
      const NodeId w = static_cast<NodeId>(known.front().value);
      bool inside = std::find(a.begin(), a.end(), w) != a.end();
      const NodeId f = s.fragments.id[u];
      for (std::size_t i = 1; i < known.size() && !inside; ++i) inside = known[i].key == f;
      bits[u] = inside ? 1 : 0;
    }
    return bits;
  }

  OneRespectResult session(const DistTree& t) {
    std::vector<char> excluded(g_.n(), 0);
    for (NodeId v = 0; v < g_.n(); ++v) {
      if (t.links[v].parent >= 0) excluded[v] = contracted_[net_.links(v)[t.links[v].parent].edge];
    }
    OneRespectResult r = one_respect_min_cut(net_, t, bfs_, options_, &excluded);
    report_.merge(r.report);
    return r;
  }

 private:
  const Graph& g_;
  Network net_;
  RunOptions options_;
  BfsTree bfs_;
  RoundReport report_;
  std::vector<CopyLoad> loads_;
  std::vector<char> contracted_;
};

LambdaEstimate estimate_with(Packer& p, const Graph& g) {
  const double m = static_cast<double>(g.total_weight());
  std::vector<NodeId> labels(g.n());
  for (NodeId v = 0; v < g.n(); ++v) labels[v] = v;
  p.set_labels(labels);
  std::int64_t packed = 0;
  for (std::int64_t guess = 1;; guess *= 2) {
    const std::int64_t k = tree_count_for(guess, m, Rational(1));
    for (; packed < k; ++packed) p.next_tree();
    const Rational pack_val(k, p.max_load());
    const Rational u = Rational(3) * pack_val;
    if (u <= Rational(guess)) return LambdaEstimate{std::max<std::int64_t>(1, u.floor()), guess, k, pack_val};
    if (guess > (std::int64_t{1} << 40)) throw InternalInvariantError("lambda estimate did not converge");
  }
}

}  // namespace

DistLambdaEstimate dist_estimate_lambda(const Graph& g, const RunOptions& options) {
  Packer p(g, options);
  DistLambdaEstimate out;
  out.estimate = estimate_with(p, g);
  out.report = p.report();
  return out;
}

DistApproxResult dist_approx_min_cut(const Graph& g, const Rational& eps, std::uint64_t /*seed*/,
                                     const DistOptions& options) {
  if (!(eps > Rational(0)) || eps > Rational(1)) throw Error("eps must lie in (0, 1]");
  Packer p(g, options.run);
  const NodeId n = g.n();
  DistApproxResult out;
  ApproxResult& res = out.approx;
  res.eps = eps;
  res.eps_prime = epsilon_prime(eps);
  res.lambda_bound = options.lambda_bound ? *options.lambda_bound : estimate_with(p, g).upper;
  const Rational& ep = res.eps_prime;
  const int cap = level_cap(n, ep);

  Weight best = kNoCut;
  std::vector<char> side(n, 0);
  std::vector<NodeId> labels(n);
  for (NodeId v = 0; v < n; ++v) labels[v] = v;

  for (int level = 0;; ++level) {
    p.set_labels(labels);
    const auto& contracted = p.contracted();
    std::vector<Pair> counts(n, Pair{0, 0});
    for (NodeId v = 0; v < n; ++v) {
      counts[v].first = labels[v] == v ? 1 : 0;
      for (const Link& l : p.net().links(v)) {
        if (!contracted[l.edge]) counts[v].second += l.weight;
      }
    }
    const Pair totals = p.sum(counts, "count");
    const auto nodes = static_cast<NodeId>(totals.first);
    if (nodes <= 1) break;
    if (level >= cap) throw InternalInvariantError("recursion exceeded " + std::to_string(cap) + " levels");
    LevelTrace trace;
    trace.level = level;
    trace.nodes = nodes;
    trace.edges = totals.second / 2;
    trace.labels = labels;
    trace.trees = tree_count_for(res.lambda_bound, static_cast<double>(trace.edges), ep);

    for (std::int64_t i = 0; i < trace.trees; ++i) {
      const DistTree t = p.next_tree();
      if (options.record_trees) trace.tree_edges.push_back(t.edges);
      const OneRespectResult s = p.session(t);
      if (s.argmin < 0) continue;
      trace.best_one_respect = std::min(trace.best_one_respect, s.c_star);
      if (s.c_star < best) {
        best = s.c_star;
        side = p.subtree_bits(s, s.argmin);
      }
    }
    res.trees_packed += trace.trees;

    const LoadThreshold threshold{ep, trace.trees, p.max_load()};
    trace.max_load = threshold.max_load;
    trace.l_a = threshold.l_a();
    std::vector<char> keep(g.m(), 0);
    for (std::size_t e = 0; e < g.m(); ++e) {
      keep[e] = contracted[e] || threshold.below(p.loads()[e].min_copy(g.edge(e).w));
    }
    const ComponentCount comp = p.components(keep);
    const std::vector<NodeId>& next = comp.labels;
    trace.components = comp.count;

    if (many_components(trace.components, nodes, ep)) {
      trace.component_branch = true;
      if (trace.components >= 2) {
        const Pair chosen = p.lightest_component(next);
        trace.component_cut = chosen.first;
        if (chosen.first < best) {
          best = chosen.first;
          for (NodeId v = 0; v < n; ++v) side[v] = next[v] == chosen.second ? 1 : 0;
        }
      }
      res.levels.push_back(std::move(trace));
      break;
    }
    res.levels.push_back(std::move(trace));
    labels = next;
  }
  if (best == kNoCut) throw InternalInvariantError("no candidate cut was found");
  res.cut = make_cut_from_bits(g, side);
  if (res.cut.weight != best) throw InternalInvariantError("side bits disagree with the reported cut value");
  out.report = p.report();
  return out;
}

DistApproxResult dist_exact_min_cut(const Graph& g, std::uint64_t seed, const DistOptions& options) {
  DistOptions opts = options;
  RoundReport pre;
  if (!opts.lambda_bound) {
    DistLambdaEstimate est = dist_estimate_lambda(g, options.run);
    opts.lambda_bound = est.estimate.upper;
    pre = est.report;
  }
  DistApproxResult out = dist_approx_min_cut(g, Rational(1, *opts.lambda_bound + 1), seed, opts);
  pre.merge(out.report);
  out.report = pre;
  return out;
}

DistValueResult dist_estimate_value(const Graph& g, const Rational& eps, std::uint64_t /*seed*/,
                                    const DistOptions& options) {
  Packer p(g, options.run);
  DistValueResult out;
  const std::int64_t u = options.lambda_bound ? *options.lambda_bound : estimate_with(p, g).upper;
  std::vector<NodeId> labels(g.n());
  for (NodeId v = 0; v < g.n(); ++v) labels[v] = v;
  p.set_labels(labels);
  ValueEstimate& v = out.value;
  v.trees = tree_count_for(u, static_cast<double>(g.total_weight()), eps);
  for (std::int64_t i = 0; i < v.trees; ++i) {
    const OneRespectResult s = p.session(p.next_tree());
    v.best_one_respect = std::min(v.best_one_respect, s.c_star);
  }
  v.pack_val = Rational(v.trees, p.max_load());
  v.value = std::min(Rational(v.best_one_respect), (Rational(2) + eps) * v.pack_val);
  out.report = p.report();
  return out;
}

}  // namespace mincut::congest
