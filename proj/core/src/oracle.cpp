#include "mincut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <string>

#include "mincut/errors.hpp"

namespace mincut {

Cut enumerate_mincut(const Graph& g) {
  const NodeId n = g.n();
  if (n > kEnumerationLimit) {
    throw OracleCapacityError("enumeration oracle handles n <= " + std::to_string(kEnumerationLimit) +
                              ", got " + std::to_string(n));
  }
  // node n-1 stays outside S, so each bipartition is visited once
  const std::uint32_t count = std::uint32_t{1} << (n - 1);
  std::vector<char> in(n, 0);
  Weight current = 0;
  Weight best = std::numeric_limits<Weight>::max();
  std::uint32_t best_code = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    const std::uint32_t code = i ^ (i >> 1);
    const NodeId flip = std::countr_zero(i);
    const bool joining = in[flip] == 0;
    for (const auto& a : g.adjacent(flip)) {
      const bool other_in = in[a.neighbor] != 0;
      current += (joining != other_in) ? a.w : -a.w;
    }
    in[flip] = joining ? 1 : 0;
    if (current < best) {
      best = current;
      best_code = code;
    }
  }
  Cut c;
  c.weight = best;
  for (NodeId v = 0; v + 1 < n; ++v) {
    if ((best_code >> v) & 1U) c.side.push_back(v);
  }
  return c;
}

Cut stoer_wagner(const Graph& g) {
  const NodeId n = g.n();
  if (n > kStoerWagnerLimit) {
    throw OracleCapacityError("polynomial oracle handles n <= " + std::to_string(kStoerWagnerLimit) +
                              ", got " + std::to_string(n));
  }
  std::vector<std::vector<Weight>> w(n, std::vector<Weight>(n, 0));
  for (const Edge& e : g.edges()) {
    w[e.u][e.v] += e.w;
    w[e.v][e.u] += e.w;
  }
  std::vector<std::vector<NodeId>> members(n);
  for (NodeId v = 0; v < n; ++v) members[v] = {v};
  std::vector<char> merged(n, 0);
  Weight best = std::numeric_limits<Weight>::max();
  std::vector<NodeId> best_side;

  std::vector<Weight> key(n);
  std::vector<char> added(n);
  for (NodeId phase = n; phase > 1; --phase) {
    std::fill(key.begin(), key.end(), 0);
    std::fill(added.begin(), added.end(), 0);
    NodeId prev = -1;
    NodeId last = -1;
    for (NodeId step = 0; step < phase; ++step) {
      NodeId pick = -1;
      for (NodeId v = 0; v < n; ++v) {
        if (merged[v] || added[v]) continue;
        if (pick < 0 || key[v] > key[pick]) pick = v;
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step + 1 == phase) break;
      for (NodeId v = 0; v < n; ++v) {
        if (!merged[v] && !added[v]) key[v] += w[pick][v];
      }
    }
    if (key[last] < best) {
      best = key[last];
      best_side = members[last];
    }
    // merge last into prev
    for (NodeId v = 0; v < n; ++v) {
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    w[prev][prev] = 0;
    merged[last] = 1;
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
  }
  std::sort(best_side.begin(), best_side.end());
  return Cut{std::move(best_side), best};
}

Cut brute_force_mincut(const Graph& g) {
  if (g.n() <= kEnumerationLimit) return enumerate_mincut(g);
  return stoer_wagner(g);
}

void for_each_partition(NodeId n, const std::function<void(std::span<const NodeId>)>& visit) {
  if (n <= 0) return;
  std::vector<NodeId> rgs(n, 0);
  std::vector<NodeId> prefix_max(n, 0);  // max of rgs[0..i]
  for (;;) {
    visit(rgs);
    NodeId i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (NodeId j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

Strength strength(const Graph& g) {
  const NodeId n = g.n();
  if (n > 10) throw OracleCapacityError("partition enumeration handles n <= 10");
  std::optional<Rational> best;
  std::vector<NodeId> best_rgs;
  for_each_partition(n, [&](std::span<const NodeId> rgs) {
    NodeId blocks = 0;
    for (NodeId b : rgs) blocks = std::max(blocks, static_cast<NodeId>(b + 1));
    if (blocks < 2) return;
    Weight crossing = 0;
    for (const Edge& e : g.edges()) {
      if (rgs[e.u] != rgs[e.v]) crossing += e.w;
    }
    const Rational value(crossing, blocks - 1);
    if (!best || value < *best) {
      best = value;
      best_rgs.assign(rgs.begin(), rgs.end());
    }
  });
  return Strength{*best, Partition::from_labels(best_rgs)};
}

}  // namespace mincut
