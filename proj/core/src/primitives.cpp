#include "mincut/congest/primitives.hpp"

#include <algorithm>
#include <deque>

namespace mincut::congest {

namespace {

enum Tag : std::uint8_t { kJoin = 1, kChild = 2, kItem = 3, kLast = 4, kDone = 5, kEnd = 6 };

struct BfsProgram {
  NodeId root;
  struct State {
    int parent = -1;
    int depth = -1;
    bool joined = false;
    std::vector<int> children;
  };

  void init(Context& ctx, State& s) const {
    if (ctx.id() == root) {
      s.joined = true;
      s.depth = 0;
      ctx.send_all({kJoin, 0, 0});
    }
    ctx.halt();
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag == kChild) s.children.push_back(e.link);
    }
    if (!s.joined) {
      for (const Envelope& e : inbox) {
        if (e.msg.tag != kJoin) continue;
        s.joined = true;
        s.parent = e.link;
        s.depth = static_cast<int>(e.msg.a) + 1;
        for (int i = 0; i < static_cast<int>(ctx.degree()); ++i) {
          if (i == s.parent) {
            ctx.send(i, {kChild, 0, 0});
          } else {
            ctx.send(i, {kJoin, s.depth, 0});
          }
        }
        break;
      }
    }
    ctx.halt();
  }
};

struct ConvergeProgram {
  Combine op;
  struct State {
    const TreeLinks* tree = nullptr;
    std::vector<KeyedItem> own;
    std::size_t own_pos = 0;
    std::vector<int> child_of_link;  // link -> child slot, -1 otherwise
    std::vector<std::deque<KeyedItem>> queue;
    std::vector<char> child_done;
    bool has_absorb_key = false;
    std::int64_t absorb_key = 0;
    bool has_absorbed = false;
    std::int64_t absorbed = 0;
    bool finished = false;
    std::vector<KeyedItem> emitted;
  };

  void init(Context& ctx, State& s) const {
    s.child_of_link.assign(ctx.degree(), -1);
    for (std::size_t c = 0; c < s.tree->children.size(); ++c) s.child_of_link[s.tree->children[c]] = static_cast<int>(c);
    s.queue.assign(s.tree->children.size(), {});
    s.child_done.assign(s.tree->children.size(), 0);
    step(ctx, s);
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      const int c = s.child_of_link[e.link];
      if (c < 0) continue;
      if (e.msg.tag == kItem || e.msg.tag == kLast) s.queue[c].push_back({e.msg.a, e.msg.b});
      if (e.msg.tag == kLast || e.msg.tag == kDone) s.child_done[c] = 1;
    }
    step(ctx, s);
  }

  static bool all_drained(const State& s) {
    if (s.own_pos < s.own.size()) return false;
    for (std::size_t c = 0; c < s.queue.size(); ++c) {
      if (!s.child_done[c] || !s.queue[c].empty()) return false;
    }
    return true;
  }

  void step(Context& ctx, State& s) const {
    const bool is_root = s.tree->parent < 0;
    for (;;) {
      if (s.finished) {
        ctx.halt();
        return;
      }
      if (all_drained(s)) {
        if (!is_root) ctx.send(s.tree->parent, {kDone, 0, 0});
        s.finished = true;
        continue;
      }
      // the next key is safe only when every unfinished child has something queued
      bool ready = true;
      std::int64_t key = 0;
      bool have_key = false;
      if (s.own_pos < s.own.size()) {
        key = s.own[s.own_pos].key;
        have_key = true;
      }
      for (std::size_t c = 0; c < s.queue.size(); ++c) {
        if (s.queue[c].empty()) {
          if (!s.child_done[c]) ready = false;
          continue;
        }
        if (!have_key || s.queue[c].front().key < key) key = s.queue[c].front().key;
        have_key = true;
      }
      if (!ready) {
        ctx.halt();
        return;
      }
      bool first = true;
      std::int64_t value = 0;
      auto take = [&](std::int64_t v) {
        value = first ? v : combine(op, value, v);
        first = false;
      };
      while (s.own_pos < s.own.size() && s.own[s.own_pos].key == key) take(s.own[s.own_pos++].value);
      for (auto& q : s.queue) {
        while (!q.empty() && q.front().key == key) {
          take(q.front().value);
          q.pop_front();
        }
      }
      if (s.has_absorb_key && key == s.absorb_key) {
        s.absorbed = s.has_absorbed ? combine(op, s.absorbed, value) : value;
        s.has_absorbed = true;
        continue;
      }
      s.emitted.push_back({key, value});
      if (is_root) continue;
      const bool last = all_drained(s);
      ctx.send(s.tree->parent, {last ? kLast : kItem, key, value});
      if (last) {
        s.finished = true;
        ctx.halt();
      }
      return;
    }
  }
};

struct BroadcastProgram {
  struct State {
    const TreeLinks* tree = nullptr;
    std::deque<Pair> pending;
    bool end_known = false;
    bool end_sent = false;
    std::vector<Pair> received;
  };

  void init(Context& ctx, State& s) const {
    if (s.tree->parent < 0) {
      s.received.assign(s.pending.begin(), s.pending.end());
      s.end_known = true;
    }
    step(ctx, s);
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.link != s.tree->parent) continue;
      if (e.msg.tag == kItem || e.msg.tag == kLast) {
        s.pending.push_back({e.msg.a, e.msg.b});
        s.received.push_back({e.msg.a, e.msg.b});
      }
      if (e.msg.tag == kLast || e.msg.tag == kEnd) s.end_known = true;
    }
    step(ctx, s);
  }

  static void step(Context& ctx, State& s) {
    if (s.tree->children.empty()) {
      s.pending.clear();
      ctx.halt();
      return;
    }
    if (!s.pending.empty()) {
      const Pair item = s.pending.front();
      s.pending.pop_front();
      const bool last = s.pending.empty() && s.end_known;
      for (int c : s.tree->children) ctx.send(c, {last ? kLast : kItem, item.first, item.second});
      if (last) {
        s.end_sent = true;
        ctx.halt();
      }
      return;
    }
    if (s.end_known && !s.end_sent) {
      for (int c : s.tree->children) ctx.send(c, {kEnd, 0, 0});
      s.end_sent = true;
    }
    ctx.halt();
  }
};

struct ReduceProgram {
  PairOp op;
  struct State {
    const TreeLinks* tree = nullptr;
    Pair value{};
    std::size_t waiting = 0;
  };

  Pair merge(const Pair& x, const Pair& y) const {
    switch (op) {
      case PairOp::Sum:
        return {x.first + y.first, x.second + y.second};
      case PairOp::Max:
        return {std::max(x.first, y.first), std::max(x.second, y.second)};
      case PairOp::LexMin:
        return std::min(x, y);
    }
    return x;
  }

  void init(Context& ctx, State& s) const {
    s.waiting = s.tree->children.size();
    finish_if_ready(ctx, s);
  }

  void on_round(Context& ctx, State& s, std::span<const Envelope> inbox) const {
    for (const Envelope& e : inbox) {
      if (e.msg.tag != kItem) continue;
      s.value = merge(s.value, {e.msg.a, e.msg.b});
      --s.waiting;
    }
    finish_if_ready(ctx, s);
  }

  static void finish_if_ready(Context& ctx, State& s) {
    if (s.waiting == 0 && s.tree->parent >= 0) ctx.send(s.tree->parent, {kItem, s.value.first, s.value.second});
    ctx.halt();
  }
};

}  // namespace

std::int64_t combine(Combine op, std::int64_t x, std::int64_t y) {
  switch (op) {
    case Combine::Sum:
      return x + y;
    case Combine::Min:
      return std::min(x, y);
    case Combine::Max:
      return std::max(x, y);
  }
  return x;
}

BfsTree bfs_tree(const Network& net, NodeId root, const RunOptions& options) {
  std::vector<BfsProgram::State> states(net.n());
  BfsTree out;
  out.report = run(net, BfsProgram{root}, states, options);
  out.links.resize(net.n());
  out.parent.resize(net.n());
  out.depth.resize(net.n());
  for (NodeId v = 0; v < net.n(); ++v) {
    auto& s = states[v];
    std::sort(s.children.begin(), s.children.end());
    out.links[v] = TreeLinks{s.parent, std::move(s.children)};
    out.parent[v] = s.parent < 0 ? -1 : net.links(v)[s.parent].neighbor;
    out.depth[v] = s.depth;
  }
  return out;
}

std::vector<TreeLinks> tree_links_from_parents(const Network& net, const std::vector<NodeId>& parent) {
  std::vector<TreeLinks> out(net.n());
  for (NodeId v = 0; v < net.n(); ++v) {
    const auto links = net.links(v);
    for (int i = 0; i < static_cast<int>(links.size()); ++i) {
      const NodeId u = links[i].neighbor;
      if (u == parent[v]) out[v].parent = i;
      if (parent[u] == v) out[v].children.push_back(i);
    }
  }
  return out;
}

ConvergeResult converge_keyed(const Network& net, const std::vector<TreeLinks>& tree,
                              std::vector<std::vector<KeyedItem>> items, Combine op, const RunOptions& options,
                              const std::vector<std::int64_t>* absorb_keys) {
  const NodeId n = net.n();
  std::vector<ConvergeProgram::State> states(n);
  for (NodeId v = 0; v < n; ++v) {
    auto& s = states[v];
    s.tree = &tree[v];
    auto& own = items[v];
    std::stable_sort(own.begin(), own.end(), [](const KeyedItem& x, const KeyedItem& y) { return x.key < y.key; });
    for (const KeyedItem& it : own) {
      if (!s.own.empty() && s.own.back().key == it.key) {
        s.own.back().value = combine(op, s.own.back().value, it.value);
      } else {
        s.own.push_back(it);
      }
    }
    if (absorb_keys != nullptr) {
      s.has_absorb_key = true;
      s.absorb_key = (*absorb_keys)[v];
    }
  }
  ConvergeResult out;
  out.report = run(net, ConvergeProgram{op}, states, options);
  out.emitted.resize(n);
  out.absorbed.assign(n, 0);
  out.has_absorbed.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    out.emitted[v] = std::move(states[v].emitted);
    out.absorbed[v] = states[v].absorbed;
    out.has_absorbed[v] = states[v].has_absorbed ? 1 : 0;
  }
  return out;
}

BroadcastResult broadcast_items(const Network& net, const std::vector<TreeLinks>& tree,
                                std::vector<std::vector<Pair>> at_roots, const RunOptions& options) {
  const NodeId n = net.n();
  std::vector<BroadcastProgram::State> states(n);
  for (NodeId v = 0; v < n; ++v) {
    states[v].tree = &tree[v];
    if (tree[v].parent < 0) states[v].pending.assign(at_roots[v].begin(), at_roots[v].end());
  }
  BroadcastResult out;
  out.report = run(net, BroadcastProgram{}, states, options);
  out.received.resize(n);
  for (NodeId v = 0; v < n; ++v) out.received[v] = std::move(states[v].received);
  return out;
}

GatherResult gather_to_all(const Network& net, const BfsTree& bfs, std::vector<std::vector<KeyedItem>> items,
                           Combine op, const RunOptions& options) {
  const NodeId n = net.n();
  ConvergeResult up = converge_keyed(net, bfs.links, std::move(items), op, options);
  std::vector<std::vector<Pair>> roots(n);
  for (NodeId v = 0; v < n; ++v) {
    if (bfs.links[v].parent >= 0) continue;
    for (const KeyedItem& it : up.emitted[v]) roots[v].push_back({it.key, it.value});
  }
  BroadcastResult down = broadcast_items(net, bfs.links, std::move(roots), options);
  GatherResult out;
  out.report = up.report;
  out.report.merge(down.report);
  out.known.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const Pair& p : down.received[v]) out.known[v].push_back({p.first, p.second});
  }
  return out;
}

ReduceResult reduce_to_all(const Network& net, const BfsTree& bfs, const std::vector<Pair>& values, PairOp op,
                           const RunOptions& options) {
  const NodeId n = net.n();
  std::vector<ReduceProgram::State> states(n);
  for (NodeId v = 0; v < n; ++v) {
    states[v].tree = &bfs.links[v];
    states[v].value = values[v];
  }
  ReduceResult out;
  out.report = run(net, ReduceProgram{op}, states, options);
  std::vector<std::vector<Pair>> roots(n);
  for (NodeId v = 0; v < n; ++v) {
    if (bfs.links[v].parent < 0) roots[v] = {states[v].value};
  }
  BroadcastResult down = broadcast_items(net, bfs.links, std::move(roots), options);
  out.report.merge(down.report);
  out.value.resize(n);
  for (NodeId v = 0; v < n; ++v) out.value[v] = down.received[v].front();
  return out;
}

}  // namespace mincut::congest
