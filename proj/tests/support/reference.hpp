#pragma once

// Sequential references for the distributed session, built only from a
// RootedTree and the fragment labels.

#include <algorithm>
#include <map>
#include <vector>

#include "mincut/congest/one_respect.hpp"
#include "mincut/rooted_tree.hpp"

namespace mincut::reference {

inline std::vector<NodeId> fragments_below(const RootedTree& t, const congest::Fragments& f, NodeId v) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < f.count(); ++i) {
    if (f.ids[i] != f.id[v] && t.is_ancestor(v, f.roots[i])) out.push_back(f.ids[i]);
  }
  return out;
}

inline congest::AncestorKnowledge ancestors(const RootedTree& t, const congest::Fragments& f) {
  const NodeId n = t.n();
  congest::AncestorKnowledge k;
  k.ancestors.resize(n);
  k.below.resize(n);
  k.lowest.resize(n);
  for (NodeId v = 0; v < n; ++v) k.below[v] = fragments_below(t, f, v);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId own = f.id[v];
    const NodeId up = f.parent_fragment[f.index_of(own)];
    std::vector<NodeId> chain;
    for (NodeId u = v; u >= 0; u = t.parent(u)) {
      if (f.id[u] == own || f.id[u] == up) chain.push_back(u);
    }
    std::reverse(chain.begin(), chain.end());
    k.ancestors[v] = chain;
    std::map<NodeId, NodeId> lowest;
    for (NodeId u : chain) {
      if (f.id[u] != own) continue;
      for (NodeId fr : k.below[u]) lowest[fr] = u;  // later entries are lower
    }
    k.lowest[v].assign(lowest.begin(), lowest.end());
  }
  return k;
}

inline congest::MergeStructure merge_structure(const RootedTree& t, const congest::Fragments& f) {
  const NodeId n = t.n();
  congest::MergeStructure m;
  m.merging.assign(n, 0);
  auto holds_fragment = [&](NodeId c) {
    for (NodeId r : f.roots) {
      if (t.is_ancestor(c, r)) return true;
    }
    return false;
  };
  for (NodeId v = 0; v < n; ++v) {
    int count = 0;
    for (NodeId c : t.children(v)) count += holds_fragment(c) ? 1 : 0;
    m.merging[v] = count >= 2 ? 1 : 0;
  }
  auto member = [&](NodeId v) { return m.merging[v] || f.is_root[v]; };
  for (NodeId v = 0; v < n; ++v) {
    if (!member(v)) continue;
    m.nodes.push_back(v);
    NodeId p = t.parent(v);
    while (p >= 0 && !member(p)) p = t.parent(p);
    m.parent.push_back(p);
  }
  return m;
}

}  // namespace mincut::reference
