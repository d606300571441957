#include "mincut/rooted_tree.hpp"

#include <algorithm>
#include <string>

#include "mincut/errors.hpp"

namespace mincut {

RootedTree::RootedTree(const Graph& g, std::vector<NodeId> parent) : parent_(std::move(parent)) {
  if (parent_.size() != static_cast<std::size_t>(g.n())) throw InvalidGraph("parent vector has wrong size");
  derive(g);
}

RootedTree RootedTree::from_edges(const Graph& g, std::span<const std::size_t> edge_ids, NodeId root) {
  const NodeId n = g.n();
  if (edge_ids.size() != static_cast<std::size_t>(n - 1)) {
    throw InvalidGraph("spanning tree needs n-1 edges, got " + std::to_string(edge_ids.size()));
  }
  if (root < 0 || root >= n) throw InvalidGraph("tree root out of range");
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> adj(n);
  for (std::size_t id : edge_ids) {
    if (id >= g.m()) throw InvalidGraph("tree edge index out of range");
    const Edge& e = g.edge(id);
    adj[e.u].push_back({e.v, id});
    adj[e.v].push_back({e.u, id});
  }
  std::vector<NodeId> parent(n, -2);
  parent[root] = -1;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (auto [u, id] : adj[v]) {
      if (parent[u] != -2) continue;
      parent[u] = v;
      stack.push_back(u);
    }
  }
  if (std::find(parent.begin(), parent.end(), -2) != parent.end()) {
    throw InvalidGraph("tree edges do not span the graph");
  }
  RootedTree t;
  t.parent_ = std::move(parent);
  t.derive(g);
  return t;
}

void RootedTree::derive(const Graph& g) {
  const NodeId n = g.n();
  root_ = -1;
  for (NodeId v = 0; v < n; ++v) {
    const NodeId p = parent_[v];
    if (p == -1) {
      if (root_ >= 0) throw InvalidGraph("tree has two roots");
      root_ = v;
    } else if (p < 0 || p >= n || p == v) {
      throw InvalidGraph("bad parent pointer at node " + std::to_string(v));
    }
  }
  if (root_ < 0) throw InvalidGraph("tree has no root");

  parent_edge_.assign(n, kNoEdge);
  child_offset_.assign(static_cast<std::size_t>(n) + 1, 0);
  edge_ids_.clear();
  for (NodeId v = 0; v < n; ++v) {
    if (v == root_) continue;
    const auto e = g.find_edge(v, parent_[v]);
    if (!e) {
      throw InvalidGraph("tree edge (" + std::to_string(v) + ", " + std::to_string(parent_[v]) +
                         ") is not a graph edge");
    }
    parent_edge_[v] = *e;
    edge_ids_.push_back(*e);
    ++child_offset_[parent_[v] + 1];
  }
  std::sort(edge_ids_.begin(), edge_ids_.end());
  for (NodeId v = 0; v < n; ++v) child_offset_[v + 1] += child_offset_[v];
  child_list_.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0);
  std::vector<std::size_t> fill(child_offset_.begin(), child_offset_.end() - 1);
  for (NodeId v = 0; v < n; ++v) {
    if (v != root_) child_list_[fill[parent_[v]]++] = v;
  }

  depth_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  preorder_.clear();
  preorder_.reserve(n);
  height_ = 0;
  // iterative dfs; children visited in increasing id order
  std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
  tin_[root_] = 0;
  preorder_.push_back(root_);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto kids = children(v);
    if (next < kids.size()) {
      const NodeId c = kids[next++];
      depth_[c] = depth_[v] + 1;
      height_ = std::max(height_, depth_[c]);
      tin_[c] = preorder_.size();
      preorder_.push_back(c);
      stack.push_back({c, 0});
    } else {
      tout_[v] = preorder_.size();
      stack.pop_back();
    }
  }
  if (preorder_.size() != static_cast<std::size_t>(n)) throw InvalidGraph("parent pointers contain a cycle");
}

NodeId RootedTree::lca(NodeId a, NodeId b) const {
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

std::vector<NodeId> RootedTree::subtree(NodeId v) const {
  std::vector<NodeId> out(preorder_.begin() + static_cast<std::ptrdiff_t>(tin_[v]),
                          preorder_.begin() + static_cast<std::ptrdiff_t>(tout_[v]));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<char> RootedTree::subtree_bits(NodeId v) const {
  std::vector<char> bits(parent_.size(), 0);
  for (std::size_t i = tin_[v]; i < tout_[v]; ++i) bits[preorder_[i]] = 1;
  return bits;
}

CutProfile one_respect_profile(const Graph& g, const RootedTree& t) {
  const NodeId n = g.n();
  CutProfile p;
  p.delta.assign(n, 0);
  p.rho.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) p.delta[v] = g.weighted_degree(v);
  for (const Edge& e : g.edges()) p.rho[t.lca(e.u, e.v)] += e.w;
  p.delta_down = p.delta;
  p.rho_down = p.rho;
  const auto order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (v == t.root()) continue;
    p.delta_down[t.parent(v)] += p.delta_down[v];
    p.rho_down[t.parent(v)] += p.rho_down[v];
  }
  p.cut.resize(n);
  for (NodeId v = 0; v < n; ++v) p.cut[v] = p.delta_down[v] - 2 * p.rho_down[v];
  return p;
}

}  // namespace mincut
