#include "mincut/congest/components.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mincut::congest {

namespace {

enum Tag : std::uint8_t { kLabel = 1, kJoin = 2, kChild = 3 };

RunOptions with_phase(const RunOptions& options, const std::string& phase) {
  RunOptions o = options;
  o.phase = phase;
  return o;
}

struct FloodProgram {
  struct State {
    NodeId label = 0;
    std::vector<char> keep;  // per link
  };
  static void spread(Context& ctx, const State& s) {
    for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
      if (s.keep[i]) ctx.send(i, {kLabel, s.label, 0});
    }
  }
  void init(Context& ctx, State& s) const {
    spread(ctx, s);
    ctx.halt();
  }
  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    NodeId best = s.label;
    for (const Envelope& e : inbox) best = std::min(best, static_cast<NodeId>(e.msg.a));
    if (best < s.label) {
      s.label = best;
      spread(ctx, s);
    }
    ctx.halt();
  }
};

// Depth-limited BFS from each component's leader over same-label links.
struct ProbeProgram {
  int limit;
  struct State {
    NodeId label = 0;
    std::vector<char> same;  // per link
    bool joined = false;
    int depth = -1;
    TreeLinks tree;
  };

  void init(Context& ctx, State& s) const {
    if (s.label == ctx.id()) {
      s.joined = true;
      s.depth = 0;
      for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
        if (s.same[i]) ctx.send(i, {kJoin, 0, 0});
      }
    }
    ctx.halt();
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag == kChild) s.tree.children.push_back(e.link);
    }
    if (!s.joined) {
      for (const Envelope& e : inbox) {
        if (e.msg.tag != kJoin) continue;
        s.joined = true;
        s.depth = static_cast<int>(e.msg.a) + 1;
        s.tree.parent = e.link;
        ctx.send(e.link, {kChild, 0, 0});
        if (s.depth < limit) {
          for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
            if (s.same[i] && i != e.link) ctx.send(i, {kJoin, s.depth, 0});
          }
        }
        break;
      }
    }
    std::sort(s.tree.children.begin(), s.tree.children.end());
    ctx.halt();
  }
};

}  // namespace

ComponentCount dist_count_components(const Network& net, const BfsTree& bfs, const std::vector<char>& keep_edge,
                                     const RunOptions& options) {
  const NodeId n = net.n();
  const RunOptions opts = with_phase(options, "components");
  std::vector<FloodProgram::State> st(n);
  for (NodeId v = 0; v < n; ++v) {
    st[v].label = v;
    for (const Link& l : net.links(v)) st[v].keep.push_back(keep_edge[l.edge]);
  }
  ComponentCount out;
  out.report = run(net, FloodProgram{}, st, opts);
  out.labels.resize(n);
  std::vector<Pair> heads(n, Pair{0, 0});
  for (NodeId v = 0; v < n; ++v) {
    out.labels[v] = st[v].label;
    heads[v].first = st[v].label == v ? 1 : 0;
  }
  ReduceResult total = reduce_to_all(net, bfs, heads, PairOp::Sum, opts);
  out.report.merge(total.report);
  out.count = static_cast<NodeId>(total.value[0].first);
  return out;
}

ComponentCuts component_cut_values(const Network& net, const BfsTree& bfs, const std::vector<NodeId>& labels,
                                   const RunOptions& options) {
  const NodeId n = net.n();
  const RunOptions opts = with_phase(options, "component_cuts");
  const int s = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));

  std::vector<Weight> boundary(n, 0);
  std::vector<ProbeProgram::State> probe(n);
  for (NodeId v = 0; v < n; ++v) {
    probe[v].label = labels[v];
    for (const Link& l : net.links(v)) {
      const bool same = labels[l.neighbor] == labels[v];
      probe[v].same.push_back(same ? 1 : 0);
      if (!same) boundary[v] += l.weight;
    }
  }
  ComponentCuts out;
  out.report = run(net, ProbeProgram{s}, probe, opts);

  // key 0: members reached, key 1: boundary weight, key 2: members at the depth limit
  std::vector<TreeLinks> forest(n);
  std::vector<std::vector<KeyedItem>> items(n);
  for (NodeId v = 0; v < n; ++v) {
    if (!probe[v].joined) continue;
    forest[v] = probe[v].tree;
    items[v] = {{0, 1}, {1, boundary[v]}, {2, probe[v].depth >= s ? 1 : 0}};
  }
  ConvergeResult up = converge_keyed(net, forest, std::move(items), Combine::Sum, opts);
  out.report.merge(up.report);
  std::vector<std::vector<Pair>> verdict(n);
  for (NodeId v = 0; v < n; ++v) {
    if (labels[v] != v) continue;
    const auto& e = up.emitted[v];
    const bool small = e[0].value < s && e[2].value == 0;
    verdict[v] = {{small ? 1 : 0, e[1].value}};
  }
  BroadcastResult down = broadcast_items(net, forest, std::move(verdict), opts);
  out.report.merge(down.report);

  out.value.assign(n, 0);
  out.big.assign(n, 1);
  std::vector<std::vector<KeyedItem>> big_items(n);
  for (NodeId v = 0; v < n; ++v) {
    if (probe[v].joined && down.received[v].front().first == 1) {
      out.big[v] = 0;
      out.value[v] = down.received[v].front().second;
    } else {
      big_items[v] = {{labels[v], boundary[v]}};
    }
  }
  GatherResult all = gather_to_all(net, bfs, std::move(big_items), Combine::Sum, opts);
  out.report.merge(all.report);
  for (NodeId v = 0; v < n; ++v) {
    if (!out.big[v]) continue;
    const auto& known = all.known[v];
    const auto it = std::lower_bound(known.begin(), known.end(), labels[v],
                                     [](const KeyedItem& x, NodeId key) { return x.key < key; });
    out.value[v] = it->value;
  }
  return out;
}

}  // namespace mincut::congest
