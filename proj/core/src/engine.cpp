#include "mincut/congest/engine.hpp"

#include <deque>

namespace mincut::congest {

namespace {

std::vector<int> bfs_distances(const Network& net, NodeId source) {
  std::vector<int> dist(net.n(), -1);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const Link& l : net.links(v)) {
      if (dist[l.neighbor] < 0) {
        dist[l.neighbor] = dist[v] + 1;
        queue.push_back(l.neighbor);
      }
    }
  }
  return dist;
}

}  // namespace

Network::Network(const Graph& g) : graph_(&g) {
  const NodeId n = g.n();
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + g.degree(v);
  links_.resize(offsets_[n]);
  for (NodeId v = 0; v < n; ++v) {
    std::size_t i = offsets_[v];
    for (const auto& a : g.adjacent(v)) links_[i++] = Link{a.neighbor, a.w, a.edge, -1};
  }
  for (NodeId v = 0; v < n; ++v) {
    const auto mine = links(v);
    for (std::size_t i = 0; i < mine.size(); ++i) {
      const auto theirs = links(mine[i].neighbor);
      const auto it = std::lower_bound(theirs.begin(), theirs.end(), v,
                                       [](const Link& l, NodeId x) { return l.neighbor < x; });
      links_[offsets_[v] + i].reverse = static_cast<int>(it - theirs.begin());
    }
  }
  const auto dist = bfs_distances(*this, 0);
  diameter_bound_ = 2 * *std::max_element(dist.begin(), dist.end());
}

int Network::diameter() const {
  if (diameter_ < 0) {
    int d = 0;
    for (NodeId v = 0; v < n(); ++v) {
      const auto dist = bfs_distances(*this, v);
      d = std::max(d, *std::max_element(dist.begin(), dist.end()));
    }
    diameter_ = d;
  }
  return diameter_;
}

void RoundReport::merge(const RoundReport& other) {
  rounds += other.rounds;
  max_msgs_per_edge_per_round = std::max(max_msgs_per_edge_per_round, other.max_msgs_per_edge_per_round);
  total_messages += other.total_messages;
  for (const auto& [phase, r] : other.phase_rounds) phase_rounds[phase] += r;
}

BudgetViolation::BudgetViolation(long round, NodeId from, NodeId to, int count, int budget)
    : Error("congestion budget " + std::to_string(budget) + " exceeded in round " + std::to_string(round) +
            " on edge " + std::to_string(from) + "->" + std::to_string(to) + ": " + std::to_string(count) +
            " messages"),
      round(round),
      from(from),
      to(to),
      count(count) {}

RoundLimitExceeded::RoundLimitExceeded(long max_rounds, RoundReport partial)
    : Error("round limit " + std::to_string(max_rounds) + " exceeded"), partial(std::move(partial)) {}

namespace detail {

Buffers& thread_buffers() {
  thread_local Buffers buffers;
  return buffers;
}

void write_trace(std::ostream& os, const std::string& phase, long round, NodeId from, NodeId to,
                 const Message& m) {
  os << "{\"schema\":1,\"phase\":\"" << phase << "\",\"round\":" << round << ",\"edge\":["
     << std::min(from, to) << ',' << std::max(from, to) << "],\"direction\":\"" << (from < to ? "fwd" : "rev")
     << "\",\"from\":" << from << ",\"to\":" << to << ",\"tag\":" << static_cast<int>(m.tag)
     << ",\"payload\":[" << m.a << ',' << m.b << "]}\n";
}

}  // namespace detail

}  // namespace mincut::congest
