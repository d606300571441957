#include "mincut/congest/one_respect.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace mincut::congest {

namespace {

enum Tag : std::uint8_t { kFrag = 1, kItem = 2, kEnd = 3, kUpper = 4, kEndUpper = 5 };

constexpr std::int64_t kNoCandidate = std::numeric_limits<std::int64_t>::max();

RunOptions with_phase(const RunOptions& options, const std::string& phase) {
  RunOptions o = options;
  o.phase = phase;
  return o;
}

// Structures every node holds an identical copy of after the broadcasts.
struct Shared {
  const Fragments* frag = nullptr;
  std::vector<int> frag_depth;          // per fragment index
  const MergeStructure* merge = nullptr;
  std::vector<int> member_depth;        // per member index

  std::size_t member_index(NodeId v) const {
    return static_cast<std::size_t>(std::lower_bound(merge->nodes.begin(), merge->nodes.end(), v) -
                                    merge->nodes.begin());
  }

  NodeId fragment_lca(NodeId a, NodeId b) const {
    std::size_t x = frag->index_of(a);
    std::size_t y = frag->index_of(b);
    while (frag_depth[x] > frag_depth[y]) x = frag->index_of(frag->parent_fragment[x]);
    while (frag_depth[y] > frag_depth[x]) y = frag->index_of(frag->parent_fragment[y]);
    while (x != y) {
      x = frag->index_of(frag->parent_fragment[x]);
      y = frag->index_of(frag->parent_fragment[y]);
    }
    return frag->ids[x];
  }

  NodeId member_lca(NodeId a, NodeId b) const {
    std::size_t x = member_index(a);
    std::size_t y = member_index(b);
    while (member_depth[x] > member_depth[y]) x = member_index(merge->parent[x]);
    while (member_depth[y] > member_depth[x]) y = member_index(merge->parent[y]);
    while (x != y) {
      x = member_index(merge->parent[x]);
      y = member_index(merge->parent[y]);
    }
    return merge->nodes[x];
  }
};

// A FIFO stream to a fixed set of links, one item per round, then kEnd.
struct Stream {
  std::deque<Pair> queue;
  bool source_done = false;
  bool end_sent = false;

  bool finished(const std::vector<int>& links) const { return end_sent || (links.empty() && source_done); }

  void pump(Context& ctx, const std::vector<int>& links) {
    if (links.empty()) {
      queue.clear();
      return;
    }
    if (!queue.empty()) {
      for (int l : links) ctx.send(l, {kItem, queue.front().first, queue.front().second});
      queue.pop_front();
    } else if (source_done && !end_sent) {
      for (int l : links) ctx.send(l, {kEnd, 0, 0});
      end_sent = true;
    }
  }
};

struct NeighborProgram {
  struct State {
    NodeId frag = -1;
    std::vector<NodeId> neighbor_frag;
  };
  void init(Context& ctx, State& s) const {
    s.neighbor_frag.assign(ctx.degree(), -1);
    ctx.send_all({kFrag, s.frag, 0});
    ctx.halt();
  }
  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag == kFrag) s.neighbor_frag[e.link] = static_cast<NodeId>(e.msg.a);
    }
    ctx.halt();
  }
};

// Ancestor lists. Every fragment root starts its own-fragment chain at once;
// the parent-fragment part arrives at the fragment root from its tree parent
// and is relayed down tagged kUpper, interleaved with the chain in one queue.
struct AncestorProgram {
  struct State {
    int forest_parent = -1;
    int tree_parent = -1;
    std::vector<int> inner;   // same-fragment children
    std::vector<int> outer;   // children rooting other fragments
    std::deque<Message> to_inner;
    std::deque<Message> to_outer;
    std::vector<NodeId> upper;
    std::vector<NodeId> chain;
    bool chain_done = false;
    bool upper_done = false;
  };

  void init(Context& ctx, State& s) const {
    if (s.forest_parent < 0) close_chain(ctx, s);
    if (s.tree_parent < 0) close_upper(s);
    step(ctx, s);
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      const Message& m = e.msg;
      if (e.link == s.forest_parent) {
        if (m.tag == kItem) {
          s.chain.push_back(static_cast<NodeId>(m.a));
          s.to_inner.push_back(m);
          s.to_outer.push_back(m);
        } else if (m.tag == kEnd) {
          close_chain(ctx, s);
        } else if (m.tag == kUpper) {
          s.upper.push_back(static_cast<NodeId>(m.a));
          s.to_inner.push_back(m);
        } else if (m.tag == kEndUpper) {
          close_upper(s);
        }
      } else if (s.forest_parent < 0 && e.link == s.tree_parent) {
        if (m.tag == kItem) {
          s.upper.push_back(static_cast<NodeId>(m.a));
          s.to_inner.push_back({kUpper, m.a, 0});
        } else if (m.tag == kEnd) {
          close_upper(s);
        }
      }
    }
    step(ctx, s);
  }

  static void close_chain(Context& ctx, State& s) {
    s.chain.push_back(ctx.id());
    s.to_inner.push_back({kItem, ctx.id(), 0});
    s.to_inner.push_back({kEnd, 0, 0});
    s.to_outer.push_back({kItem, ctx.id(), 0});
    s.to_outer.push_back({kEnd, 0, 0});
    s.chain_done = true;
  }

  static void close_upper(State& s) {
    s.to_inner.push_back({kEndUpper, 0, 0});
    s.upper_done = true;
  }

  static void pump(Context& ctx, std::deque<Message>& q, const std::vector<int>& links) {
    if (q.empty()) return;
    for (int l : links) ctx.send(l, q.front());
    q.pop_front();
  }

  static void step(Context& ctx, State& s) {
    pump(ctx, s.to_inner, s.inner);
    pump(ctx, s.to_outer, s.outer);
    if (s.chain_done && s.upper_done && s.to_inner.empty() && s.to_outer.empty()) ctx.halt();
  }
};

// Downcast inside each fragment of (fragment F, lowest ancestor u with F in F(u)).
struct LowestProgram {
  struct State {
    const TreeLinks* forest = nullptr;
    const std::vector<NodeId>* below = nullptr;
    Stream down;
    std::vector<std::pair<NodeId, NodeId>> lowest;
  };

  void init(Context& ctx, State& s) const {
    for (NodeId f : *s.below) {
      s.lowest.push_back({f, ctx.id()});
      s.down.queue.push_back({f, ctx.id()});
    }
    if (s.forest->parent < 0) s.down.source_done = true;
    step(ctx, s);
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.link != s.forest->parent) continue;
      if (e.msg.tag == kItem) {
        const auto f = static_cast<NodeId>(e.msg.a);
        // a fragment already below this node has a lower witness: this node
        if (std::binary_search(s.below->begin(), s.below->end(), f)) continue;
        s.lowest.push_back({f, static_cast<NodeId>(e.msg.b)});
        s.down.queue.push_back({e.msg.a, e.msg.b});
      } else if (e.msg.tag == kEnd) {
        s.down.source_done = true;
      }
    }
    step(ctx, s);
  }

  static void step(Context& ctx, State& s) {
    s.down.pump(ctx, s.forest->children);
    if (s.down.finished(s.forest->children)) ctx.halt();
  }
};

// Per-edge lca assignment. Same-fragment endpoints swap their own-fragment
// ancestor lists; cross-fragment edges are resolved from the fragment tree,
// the merge tree and the lowest-ancestor map without further messages.
struct LcaProgram {
  const Shared* shared;
  struct State {
    NodeId frag = -1;
    const std::vector<NodeId>* neighbor_frag = nullptr;
    std::vector<NodeId> chain;  // own-fragment ancestors, top-down, ending with v
    const std::vector<std::pair<NodeId, NodeId>>* lowest = nullptr;
    std::vector<int> inner;     // links to same-fragment neighbors
    Stream out;
    std::vector<std::vector<NodeId>> received;  // per link
    std::vector<char> done;                     // per link
    std::vector<char> resolved;                 // per link
    std::vector<KeyedItem> inside;   // (z, w) with z in this node's fragment
    std::vector<KeyedItem> merged;   // (z, w) with z a merging node outside both fragments
    std::vector<std::pair<std::size_t, NodeId>> lca;  // (edge, z) for edges this node reports
  };

  void init(Context& ctx, State& s) const {
    const auto links = ctx.links();
    s.received.assign(links.size(), {});
    s.done.assign(links.size(), 0);
    s.resolved.assign(links.size(), 0);
    for (int i = 0; i < static_cast<int>(links.size()); ++i) {
      const NodeId other = (*s.neighbor_frag)[i];
      if (other == s.frag) {
        s.inner.push_back(i);
        continue;
      }
      s.resolved[i] = 1;
      const Link& l = links[i];
      const NodeId top = shared->fragment_lca(s.frag, other);
      if (top == s.frag) {
        const auto it = std::lower_bound(s.lowest->begin(), s.lowest->end(), std::pair<NodeId, NodeId>{other, -1});
        if (it == s.lowest->end() || it->first != other) throw InternalInvariantError("missing lowest ancestor");
        s.inside.push_back({it->second, l.weight});
        s.lca.push_back({l.edge, it->second});
      } else if (top != other && ctx.id() < l.neighbor) {
        const Fragments& f = *shared->frag;
        const NodeId z = shared->member_lca(f.roots[f.index_of(s.frag)], f.roots[f.index_of(other)]);
        s.merged.push_back({z, l.weight});
        s.lca.push_back({l.edge, z});
      }
    }
    for (NodeId a : s.chain) s.out.queue.push_back({a, 0});
    s.out.source_done = true;
    step(ctx, s);
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag == kItem) s.received[e.link].push_back(static_cast<NodeId>(e.msg.a));
      if (e.msg.tag == kEnd) s.done[e.link] = 1;
    }
    step(ctx, s);
  }

  static void step(Context& ctx, State& s) {
    s.out.pump(ctx, s.inner);
    bool all = s.out.finished(s.inner);
    const auto links = ctx.links();
    for (int i : s.inner) {
      if (s.resolved[i]) continue;
      if (!s.done[i]) {
        all = false;
        continue;
      }
      s.resolved[i] = 1;
      if (ctx.id() > links[i].neighbor) continue;
      const auto& theirs = s.received[i];
      std::size_t k = 0;
      while (k < s.chain.size() && k < theirs.size() && s.chain[k] == theirs[k]) ++k;
      if (k == 0) throw InternalInvariantError("same-fragment endpoints share no ancestor");
      s.inside.push_back({s.chain[k - 1], links[i].weight});
      s.lca.push_back({links[i].edge, s.chain[k - 1]});
    }
    if (all) ctx.halt();
  }
};

std::vector<NodeId> closure_below(const Fragments& f, const std::vector<KeyedItem>& direct) {
  // T_F descendants of the directly hanging fragments
  std::vector<std::vector<NodeId>> kids(f.count());
  for (std::size_t i = 0; i < f.count(); ++i) {
    if (f.parent_fragment[i] >= 0) kids[f.index_of(f.parent_fragment[i])].push_back(f.ids[i]);
  }
  std::vector<NodeId> out;
  std::vector<NodeId> stack;
  for (const KeyedItem& it : direct) stack.push_back(static_cast<NodeId>(it.key));
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (NodeId c : kids[f.index_of(x)]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Sum over v's own-fragment subtree plus whole fragments below v.
std::vector<Weight> subtree_sums(const Network& net, const Fragments& f, const AncestorKnowledge& anc,
                                 const BfsTree& bfs, const std::vector<Weight>& per_node, const RunOptions& opts,
                                 RoundReport& report) {
  const NodeId n = net.n();
  std::vector<std::vector<KeyedItem>> items(n);
  for (NodeId v = 0; v < n; ++v) items[v] = {{0, per_node[v]}};
  ConvergeResult up = converge_keyed(net, f.forest, std::move(items), Combine::Sum, opts);
  report.merge(up.report);
  std::vector<std::vector<KeyedItem>> totals(n);
  for (NodeId v = 0; v < n; ++v) {
    if (f.is_root[v]) totals[v] = {{f.id[v], up.emitted[v].front().value}};
  }
  GatherResult all = gather_to_all(net, bfs, std::move(totals), Combine::Sum, opts);
  report.merge(all.report);
  std::vector<Weight> out(n);
  for (NodeId v = 0; v < n; ++v) {
    out[v] = up.emitted[v].front().value;
    const auto& known = all.known[v];
    for (NodeId fr : anc.below[v]) {
      const auto it = std::lower_bound(known.begin(), known.end(), fr,
                                       [](const KeyedItem& x, NodeId key) { return x.key < key; });
      out[v] += it->value;
    }
  }
  return out;
}

}  // namespace

OneRespectResult one_respect_min_cut(const Network& net, const DistTree& tree, const BfsTree& bfs,
                                     const RunOptions& options, const std::vector<char>* excluded) {
  const NodeId n = net.n();
  const Graph& g = net.graph();
  OneRespectResult out;
  RoundReport& report = out.report;

  // Step 1: fragments, the fragment tree, and neighbors' fragment ids.
  const RunOptions step1 = with_phase(options, "step1");
  out.fragments = fragment_decompose(net, tree, bfs, step1);
  const Fragments& f = out.fragments;
  report.merge(f.report);
  std::vector<NeighborProgram::State> nb(n);
  for (NodeId v = 0; v < n; ++v) nb[v].frag = f.id[v];
  report.merge(run(net, NeighborProgram{}, nb, step1));

  // Step 2: ancestor lists, fragments below each node, lowest witnesses.
  const RunOptions step2 = with_phase(options, "step2");
  std::vector<AncestorProgram::State> anc(n);
  for (NodeId v = 0; v < n; ++v) {
    anc[v].forest_parent = f.forest[v].parent;
    anc[v].tree_parent = tree.links[v].parent;
    anc[v].inner = f.forest[v].children;
    anc[v].outer = f.child_roots[v];
  }
  report.merge(run(net, AncestorProgram{}, anc, step2));
  AncestorKnowledge& know = out.ancestors;
  know.ancestors.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    know.ancestors[v] = anc[v].upper;
    know.ancestors[v].insert(know.ancestors[v].end(), anc[v].chain.begin(), anc[v].chain.end());
  }

  std::vector<std::vector<KeyedItem>> hanging(n);
  for (NodeId v = 0; v < n; ++v) {
    for (int c : f.child_roots[v]) hanging[v].push_back({nb[v].neighbor_frag[c], 1});
  }
  ConvergeResult direct = converge_keyed(net, f.forest, std::move(hanging), Combine::Sum, step2);
  report.merge(direct.report);
  know.below.resize(n);
  for (NodeId v = 0; v < n; ++v) know.below[v] = closure_below(f, direct.emitted[v]);

  std::vector<LowestProgram::State> low(n);
  for (NodeId v = 0; v < n; ++v) {
    low[v].forest = &f.forest[v];
    low[v].below = &know.below[v];
  }
  report.merge(run(net, LowestProgram{}, low, step2));
  know.lowest.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    know.lowest[v] = std::move(low[v].lowest);
    std::sort(know.lowest[v].begin(), know.lowest[v].end());
  }

  // Step 3: delta down.
  CutProfile& prof = out.profile;
  prof.delta.resize(n);
  for (NodeId v = 0; v < n; ++v) prof.delta[v] = g.weighted_degree(v);
  prof.delta_down = subtree_sums(net, f, know, bfs, prof.delta, with_phase(options, "step3"), report);

  // Step 4: merging nodes and the tree on fragment roots and merging nodes.
  const RunOptions step4 = with_phase(options, "step4");
  MergeStructure& merge = out.merge;
  merge.merging.assign(n, 0);
  std::vector<std::vector<KeyedItem>> members(n);
  for (NodeId v = 0; v < n; ++v) {
    // a child's subtree holds a whole fragment if it roots one or reported one
    int full = static_cast<int>(f.child_roots[v].size());
    for (int c : f.forest[v].children) {
      if (!direct.emitted[net.links(v)[c].neighbor].empty()) ++full;
    }
    merge.merging[v] = full >= 2 ? 1 : 0;
    if (merge.merging[v] || f.is_root[v]) members[v] = {{v, 1}};
  }
  GatherResult member_list = gather_to_all(net, bfs, std::move(members), Combine::Max, step4);
  report.merge(member_list.report);
  std::vector<std::vector<KeyedItem>> parents(n);
  for (NodeId v = 0; v < n; ++v) {
    if (!merge.merging[v] && !f.is_root[v]) continue;
    const auto& known = member_list.known[v];
    NodeId up = -1;
    const auto& a = know.ancestors[v];
    for (std::size_t i = a.size() - 1; i-- > 0;) {
      const bool member = std::binary_search(known.begin(), known.end(), KeyedItem{a[i], 1},
                                             [](const KeyedItem& x, const KeyedItem& y) { return x.key < y.key; });
      if (member) {
        up = a[i];
        break;
      }
    }
    if (up < 0 && tree.parent[v] >= 0) {
      throw InternalInvariantError("member without member ancestor");
    }
    parents[v] = {{v, up}};
  }
  GatherResult parent_list = gather_to_all(net, bfs, std::move(parents), Combine::Max, step4);
  report.merge(parent_list.report);
  for (const KeyedItem& it : parent_list.known[0]) {
    merge.nodes.push_back(static_cast<NodeId>(it.key));
    merge.parent.push_back(static_cast<NodeId>(it.value));
  }

  Shared shared;
  shared.frag = &f;
  shared.merge = &merge;
  shared.frag_depth.assign(f.count(), -1);
  for (std::size_t i = 0; i < f.count(); ++i) {
    int d = 0;
    for (NodeId p = f.parent_fragment[i]; p >= 0; p = f.parent_fragment[f.index_of(p)]) ++d;
    shared.frag_depth[i] = d;
  }
  shared.member_depth.assign(merge.nodes.size(), 0);
  for (std::size_t i = 0; i < merge.nodes.size(); ++i) {
    int d = 0;
    for (NodeId p = merge.parent[i]; p >= 0; p = merge.parent[shared.member_index(p)]) ++d;
    shared.member_depth[i] = d;
  }

  // Step 5: lca of every edge, then rho and rho down.
  const RunOptions step5 = with_phase(options, "step5");
  std::vector<LcaProgram::State> lca(n);
  for (NodeId v = 0; v < n; ++v) {
    lca[v].frag = f.id[v];
    lca[v].neighbor_frag = &nb[v].neighbor_frag;
    lca[v].lowest = &know.lowest[v];
    for (NodeId a : know.ancestors[v]) {
      if (f.id[a] == f.id[v]) lca[v].chain.push_back(a);
    }
  }
  report.merge(run(net, LcaProgram{&shared}, lca, step5));
  out.lca.assign(g.m(), -1);
  std::vector<std::vector<KeyedItem>> inside(n);
  std::vector<std::vector<KeyedItem>> outside(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& [e, z] : lca[v].lca) out.lca[e] = z;
    inside[v] = std::move(lca[v].inside);
    outside[v] = std::move(lca[v].merged);
  }
  std::vector<std::int64_t> self(n);
  for (NodeId v = 0; v < n; ++v) self[v] = v;
  ConvergeResult counted = converge_keyed(net, f.forest, std::move(inside), Combine::Sum, step5, &self);
  report.merge(counted.report);
  GatherResult crossing = gather_to_all(net, bfs, std::move(outside), Combine::Sum, step5);
  report.merge(crossing.report);
  prof.rho.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (counted.has_absorbed[v]) prof.rho[v] += counted.absorbed[v];
    if (!merge.merging[v]) continue;
    const auto& known = crossing.known[v];
    const auto it = std::lower_bound(known.begin(), known.end(), v,
                                     [](const KeyedItem& x, NodeId key) { return x.key < key; });
    if (it != known.end() && it->key == v) prof.rho[v] += it->value;
  }
  prof.rho_down = subtree_sums(net, f, know, bfs, prof.rho, step5, report);

  prof.cut.resize(n);
  std::vector<Pair> candidates(n);
  for (NodeId v = 0; v < n; ++v) {
    prof.cut[v] = prof.delta_down[v] - 2 * prof.rho_down[v];
    const bool eligible = tree.parent[v] >= 0 && (excluded == nullptr || !(*excluded)[v]);
    candidates[v] = {eligible ? prof.cut[v] : kNoCandidate, v};
  }
  if (prof.cut[0] != 0) throw InternalInvariantError("root cut is not empty");
  ReduceResult best = reduce_to_all(net, bfs, candidates, PairOp::LexMin, with_phase(options, "min"));
  report.merge(best.report);
  if (best.value[0].first == kNoCandidate) {
    out.c_star = kNoCandidate;
    out.argmin = -1;
  } else {
    out.c_star = best.value[0].first;
    out.argmin = static_cast<NodeId>(best.value[0].second);
  }
  return out;
}

}  // namespace mincut::congest
