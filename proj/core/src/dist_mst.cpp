#include "mincut/congest/dist_mst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mincut::congest {

namespace {

enum Tag : std::uint8_t { kLabel = 1, kBest = 2, kAdd = 3, kParent = 4, kSize = 5, kFragment = 6 };

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();

// (weight, lo * n + hi) orders exactly like (weight, lo, hi).
struct EdgeKey {
  std::int64_t a = kNone;
  std::int64_t b = kNone;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct Knowledge {
  NodeId label = 0;
  std::vector<char> tree;  // per link
  EdgeKey best;            // fragment's lightest outgoing edge after election
};

struct ElectProgram {
  std::span<const std::int64_t> weights;
  struct State {
    Knowledge* k = nullptr;
  };

  void init(Context& ctx, State& s) const {
    s.k->best = EdgeKey{};
    ctx.send_all({kLabel, s.k->label, 0});
    ctx.halt();
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    Knowledge& k = *s.k;
    bool improved = false;
    const auto links = ctx.links();
    for (const Envelope& e : inbox) {
      if (e.msg.tag == kLabel) {
        if (e.msg.a == k.label) continue;
        const Link& l = links[e.link];
        const NodeId lo = std::min(ctx.id(), l.neighbor);
        const NodeId hi = std::max(ctx.id(), l.neighbor);
        const EdgeKey key{weights[l.edge], static_cast<std::int64_t>(lo) * ctx.n() + hi};
        if (key < k.best) {
          k.best = key;
          improved = true;
        }
      } else if (e.msg.tag == kBest) {
        const EdgeKey key{e.msg.a, e.msg.b};
        if (key < k.best) {
          k.best = key;
          improved = true;
        }
      }
    }
    if (improved) {
      for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
        if (k.tree[i]) ctx.send(i, {kBest, k.best.a, k.best.b});
      }
    }
    ctx.halt();
  }
};

struct MergeProgram {
  struct State {
    Knowledge* k = nullptr;
  };

  void init(Context& ctx, State& s) const {
    Knowledge& k = *s.k;
    if (k.best.a == kNone) return;
    const NodeId lo = static_cast<NodeId>(k.best.b / ctx.n());
    const NodeId hi = static_cast<NodeId>(k.best.b % ctx.n());
    if (ctx.id() != lo && ctx.id() != hi) return;
    const NodeId other = ctx.id() == lo ? hi : lo;
    const auto links = ctx.links();
    for (int i = 0; i < static_cast<int>(links.size()); ++i) {
      if (links[i].neighbor == other) {
        k.tree[i] = 1;
        ctx.send(i, {kAdd, 0, 0});
      }
    }
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    Knowledge& k = *s.k;
    bool improved = false;
    for (const Envelope& e : inbox) {
      if (e.msg.tag == kAdd) k.tree[e.link] = 1;
      if (e.msg.tag == kLabel && e.msg.a < k.label) {
        k.label = static_cast<NodeId>(e.msg.a);
        improved = true;
      }
    }
    if (ctx.round() == 1 || improved) {
      for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
        if (k.tree[i]) ctx.send(i, {kLabel, k.label, 0});
      }
    }
    ctx.halt();
  }
};

struct OrientProgram {
  struct State {
    const std::vector<char>* tree = nullptr;
    int parent = -1;
    int depth = -1;
  };

  void init(Context& ctx, State& s) const {
    if (ctx.id() == 0) {
      s.depth = 0;
      for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
        if ((*s.tree)[i]) ctx.send(i, {kParent, 0, 0});
      }
    }
    ctx.halt();
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag != kParent || s.depth >= 0) continue;
      s.parent = e.link;
      s.depth = static_cast<int>(e.msg.a) + 1;
      for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
        if ((*s.tree)[i] && i != s.parent) ctx.send(i, {kParent, s.depth, 0});
      }
    }
    ctx.halt();
  }
};

struct SizeProgram {
  int threshold;
  struct State {
    const TreeLinks* tree = nullptr;
    std::size_t waiting = 0;
    std::int64_t open = 1;
    bool closed = false;
    std::vector<int> child_roots;
  };

  void init(Context& ctx, State& s) const {
    s.waiting = s.tree->children.size();
    finish_if_ready(ctx, s);
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag != kSize) continue;
      if (e.msg.b != 0) {
        s.child_roots.push_back(e.link);
      } else {
        s.open += e.msg.a;
      }
      --s.waiting;
    }
    finish_if_ready(ctx, s);
  }

  void finish_if_ready(Context& ctx, State& s) const {
    if (s.waiting == 0) {
      s.closed = s.open >= threshold || s.tree->parent < 0;
      if (s.tree->parent >= 0) ctx.send(s.tree->parent, {kSize, s.closed ? 0 : s.open, s.closed ? 1 : 0});
      std::sort(s.child_roots.begin(), s.child_roots.end());
    }
    ctx.halt();
  }
};

// Fragment ids flow from each parent to the children that root other fragments.
struct AnnounceProgram {
  struct State {
    const std::vector<int>* child_roots = nullptr;
    NodeId fragment = -1;
    NodeId parent_fragment = -1;
  };

  void init(Context& ctx, State& s) const {
    for (int c : *s.child_roots) ctx.send(c, {kFragment, s.fragment, 0});
    ctx.halt();
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag == kFragment) s.parent_fragment = static_cast<NodeId>(e.msg.a);
    }
    ctx.halt();
  }
};

RunOptions with_phase(const RunOptions& options, const std::string& phase) {
  RunOptions o = options;
  o.phase = phase;
  return o;
}

}  // namespace

DistTree orient_tree(const Network& net, const std::vector<std::vector<char>>& tree_link, const RunOptions& options) {
  const NodeId n = net.n();
  std::vector<OrientProgram::State> states(n);
  for (NodeId v = 0; v < n; ++v) states[v].tree = &tree_link[v];
  DistTree out;
  out.report = run(net, OrientProgram{}, states, with_phase(options, "orient"));
  out.links.resize(n);
  out.parent.assign(n, -1);
  out.depth.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto links = net.links(v);
    if (states[v].depth < 0) throw InternalInvariantError("tree does not span node " + std::to_string(v));
    out.depth[v] = states[v].depth;
    out.links[v].parent = states[v].parent;
    for (int i = 0; i < static_cast<int>(links.size()); ++i) {
      if (!tree_link[v][i]) continue;
      if (i == states[v].parent) {
        out.parent[v] = links[i].neighbor;
        out.edges.push_back(links[i].edge);
      } else {
        out.links[v].children.push_back(i);
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

DistTree dist_mst(const Network& net, std::span<const std::int64_t> weights, const RunOptions& options) {
  const NodeId n = net.n();
  if (weights.size() != net.graph().m()) throw Error("one weight per edge required");
  std::vector<Knowledge> know(n);
  for (NodeId v = 0; v < n; ++v) {
    know[v].label = v;
    know[v].tree.assign(net.links(v).size(), 0);
  }
  RoundReport report;
  const int cap = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
  int phases = 0;
  for (;; ++phases) {
    std::vector<ElectProgram::State> elect(n);
    for (NodeId v = 0; v < n; ++v) elect[v].k = &know[v];
    report.merge(run(net, ElectProgram{weights}, elect, with_phase(options, "mst")));
    // the network is connected, so no outgoing edge anywhere means one fragment
    bool any = false;
    for (NodeId v = 0; v < n; ++v) any = any || know[v].best.a != kNone;
    if (!any) break;
    if (phases >= cap) throw InternalInvariantError("MST exceeded " + std::to_string(cap) + " merge phases");
    std::vector<MergeProgram::State> merge(n);
    for (NodeId v = 0; v < n; ++v) merge[v].k = &know[v];
    report.merge(run(net, MergeProgram{}, merge, with_phase(options, "mst")));
  }
  std::vector<std::vector<char>> tree(n);
  for (NodeId v = 0; v < n; ++v) tree[v] = std::move(know[v].tree);
  DistTree out = orient_tree(net, tree, options);
  report.merge(out.report);
  out.report = report;
  out.phases = phases;
  return out;
}

std::size_t Fragments::index_of(NodeId fragment) const {
  const auto it = std::lower_bound(ids.begin(), ids.end(), fragment);
  if (it == ids.end() || *it != fragment) throw Error("unknown fragment " + std::to_string(fragment));
  return static_cast<std::size_t>(it - ids.begin());
}

Fragments fragment_decompose(const Network& net, const DistTree& tree, const BfsTree& bfs, const RunOptions& options) {
  const NodeId n = net.n();
  const RunOptions opts = with_phase(options, "fragments");
  Fragments out;
  out.threshold = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));

  std::vector<SizeProgram::State> size(n);
  for (NodeId v = 0; v < n; ++v) size[v].tree = &tree.links[v];
  out.report = run(net, SizeProgram{out.threshold}, size, opts);
  out.is_root.resize(n);
  out.forest.resize(n);
  out.child_roots.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    out.is_root[v] = size[v].closed ? 1 : 0;
    out.child_roots[v] = size[v].child_roots;
    out.forest[v].parent = size[v].closed ? -1 : tree.links[v].parent;
    for (int c : tree.links[v].children) {
      if (!std::binary_search(size[v].child_roots.begin(), size[v].child_roots.end(), c)) {
        out.forest[v].children.push_back(c);
      }
    }
  }

  std::vector<std::vector<KeyedItem>> own(n);
  for (NodeId v = 0; v < n; ++v) own[v] = {{0, v}};
  ConvergeResult up = converge_keyed(net, out.forest, std::move(own), Combine::Min, opts);
  std::vector<std::vector<Pair>> at_roots(n);
  for (NodeId v = 0; v < n; ++v) {
    if (out.is_root[v]) at_roots[v] = {{0, up.emitted[v].front().value}};
  }
  BroadcastResult down = broadcast_items(net, out.forest, std::move(at_roots), opts);
  out.report.merge(up.report);
  out.report.merge(down.report);
  out.id.resize(n);
  for (NodeId v = 0; v < n; ++v) out.id[v] = static_cast<NodeId>(down.received[v].front().second);

  std::vector<AnnounceProgram::State> announce(n);
  for (NodeId v = 0; v < n; ++v) {
    announce[v].child_roots = &out.child_roots[v];
    announce[v].fragment = out.id[v];
  }
  out.report.merge(run(net, AnnounceProgram{}, announce, opts));

  // every node learns (fragment id, parent fragment id, fragment root)
  std::vector<std::vector<KeyedItem>> items(n);
  for (NodeId v = 0; v < n; ++v) {
    if (out.is_root[v]) {
      items[v] = {{out.id[v], (static_cast<std::int64_t>(announce[v].parent_fragment) + 1) * n + v}};
    }
  }
  GatherResult all = gather_to_all(net, bfs, std::move(items), Combine::Max, opts);
  out.report.merge(all.report);
  for (const KeyedItem& it : all.known[0]) {
    out.ids.push_back(static_cast<NodeId>(it.key));
    out.parent_fragment.push_back(static_cast<NodeId>(it.value / n - 1));
    out.roots.push_back(static_cast<NodeId>(it.value % n));
  }
  for (NodeId v = 1; v < n; ++v) {
    if (all.known[v] != all.known[0]) throw InternalInvariantError("fragment tree differs between nodes");
  }
  return out;
}

}  // namespace mincut::congest
