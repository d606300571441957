#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mincut/errors.hpp"
#include "mincut/graph.hpp"
#include "mincut/random.hpp"

namespace mincut::congest {

/// One CONGEST message: a small tag and two integers of O(log n) bits.
struct Message {
  std::uint8_t tag = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
};

struct Envelope {
  NodeId from;
  int link;  // receiver's link index leading back to the sender
  Message msg;
};

struct Link {
  NodeId neighbor;
  Weight weight;
  std::size_t edge;  // index into Graph::edges()
  int reverse;       // index of this link in the neighbor's list
};

/// Communication topology derived from a Graph. Links of each node are sorted
/// by neighbor id.
class Network {
 public:
  explicit Network(const Graph& g);

  const Graph& graph() const { return *graph_; }
  NodeId n() const { return graph_->n(); }
  std::span<const Link> links(NodeId v) const {
    return {links_.data() + offsets_[v], links_.data() + offsets_[v + 1]};
  }
  /// Global index of v's link i; ranges over [0, 2m).
  std::size_t link_index(NodeId v, int i) const { return offsets_[v] + static_cast<std::size_t>(i); }
  std::size_t link_count() const { return links_.size(); }

  /// What programs see: 2 * ecc(0), which lies in [D, 2D].
  int diameter_bound() const { return diameter_bound_; }
  /// Exact diameter, for test assertions only.
  int diameter() const;

 private:
  const Graph* graph_;
  std::vector<std::size_t> offsets_;
  std::vector<Link> links_;
  int diameter_bound_ = 0;
  mutable int diameter_ = -1;
};

struct RoundReport {
  long rounds = 0;
  int max_msgs_per_edge_per_round = 0;
  long total_messages = 0;
  std::map<std::string, long> phase_rounds;

  /// Sequential composition: rounds and messages add, congestion takes the max.
  void merge(const RoundReport& other);
};

class BudgetViolation : public Error {
 public:
  BudgetViolation(long round, NodeId from, NodeId to, int count, int budget);
  long round;
  NodeId from;
  NodeId to;
  int count;
};

class RoundLimitExceeded : public Error {
 public:
  RoundLimitExceeded(long max_rounds, RoundReport partial);
  RoundReport partial;
};

struct RunOptions {
  int budget = 1;  // messages per edge per direction per round
  long max_rounds = 1'000'000;
  std::uint64_t seed = 0;
  std::string phase = "run";
  std::ostream* trace = nullptr;  // JSON lines, one per delivered message
};

namespace detail {

struct Outgoing {
  NodeId to;
  Envelope env;
};

struct Buffers {
  std::vector<Outgoing> out;
  std::vector<Envelope> inbox;
  std::vector<std::size_t> inbox_start;
  std::vector<std::size_t> fill;
  std::vector<int> link_count;
  std::vector<std::size_t> touched;
  std::vector<char> halted;
  std::vector<char> scheduled;
  std::vector<NodeId> active;
  std::vector<NodeId> next_active;
  std::vector<SplitMix64> rng;
};

Buffers& thread_buffers();
void write_trace(std::ostream& os, const std::string& phase, long round, NodeId from, NodeId to,
                 const Message& m);

}  // namespace detail

/// The per-node view handed to program handlers.
class Context {
 public:
  NodeId id() const { return id_; }
  NodeId n() const { return net_->n(); }
  int diameter_bound() const { return net_->diameter_bound(); }
  std::span<const Link> links() const { return net_->links(id_); }
  std::size_t degree() const { return links().size(); }
  /// 0 during init; r while handling round r.
  long round() const { return round_; }

  void send(int link, const Message& m) {
    const std::size_t idx = net_->link_index(id_, link);
    int& c = buf_->link_count[idx];
    if (c == 0) buf_->touched.push_back(idx);
    ++c;
    if (c > budget_) throw BudgetViolation(round_, id_, links()[link].neighbor, c, budget_);
    const Link& l = links()[link];
    buf_->out.push_back({l.neighbor, Envelope{id_, l.reverse, m}});
  }
  void send_all(const Message& m) {
    for (int i = 0; i < static_cast<int>(degree()); ++i) send(i, m);
  }
  void halt() { halted_ = true; }
  SplitMix64& rng() { return buf_->rng[id_]; }

 private:
  template <class P>
  friend RoundReport run(const Network&, const P&, std::vector<typename P::State>&, const RunOptions&);

  Context(const Network* net, detail::Buffers* buf, NodeId id, long round, int budget)
      : net_(net), buf_(buf), id_(id), round_(round), budget_(budget) {}

  const Network* net_;
  detail::Buffers* buf_;
  NodeId id_;
  long round_;
  int budget_;
  bool halted_ = false;
};

template <class P>
concept NodeProgram = requires(const P& p, Context& ctx, typename P::State& s, std::span<const Envelope> inbox) {
  p.init(ctx, s);
  p.on_round(ctx, s, inbox);
};

/// Runs program on every node in synchronous rounds. Messages sent during init
/// arrive in round 1; messages sent in round r arrive in round r+1. A halted
/// node is woken when mail arrives. The run ends once every node is halted and
/// no message is in flight. Inboxes are ordered by (sender id, tag).
template <class P>
RoundReport run(const Network& net, const P& program, std::vector<typename P::State>& states,
                const RunOptions& options) {
  const NodeId n = net.n();
  if (states.size() != static_cast<std::size_t>(n)) throw Error("one state per node required");
  if (options.max_rounds <= 0) throw Error("max_rounds must be positive");
  detail::Buffers& buf = detail::thread_buffers();
  buf.out.clear();
  buf.touched.clear();
  buf.link_count.assign(net.link_count(), 0);
  buf.halted.assign(n, 0);
  buf.scheduled.assign(n, 0);
  buf.inbox_start.assign(static_cast<std::size_t>(n) + 1, 0);
  buf.rng.clear();
  buf.rng.reserve(n);
  for (NodeId v = 0; v < n; ++v) buf.rng.emplace_back(mix_seed(options.seed, static_cast<std::uint64_t>(v), 0xc0));

  RoundReport report;
  auto finish_round = [&]() {
    for (std::size_t idx : buf.touched) {
      report.max_msgs_per_edge_per_round = std::max(report.max_msgs_per_edge_per_round, buf.link_count[idx]);
      buf.link_count[idx] = 0;
    }
    buf.touched.clear();
    report.total_messages += static_cast<long>(buf.out.size());
  };

  buf.active.clear();
  for (NodeId v = 0; v < n; ++v) {
    Context ctx(&net, &buf, v, 0, options.budget);
    program.init(ctx, states[v]);
    if (ctx.halted_) {
      buf.halted[v] = 1;
    } else {
      buf.active.push_back(v);
    }
  }
  finish_round();

  long round = 0;
  while (!buf.out.empty() || !buf.active.empty()) {
    ++round;
    if (round > options.max_rounds) {
      report.rounds = round - 1;
      report.phase_rounds[options.phase] += report.rounds;
      throw RoundLimitExceeded(options.max_rounds, report);
    }
    // deliver: stable bucket by receiver keeps sender order, since senders ran in id order
    std::fill(buf.inbox_start.begin(), buf.inbox_start.end(), 0);
    for (const auto& o : buf.out) ++buf.inbox_start[o.to + 1];
    for (NodeId v = 0; v < n; ++v) buf.inbox_start[v + 1] += buf.inbox_start[v];
    buf.inbox.resize(buf.out.size());
    buf.fill.assign(buf.inbox_start.begin(), buf.inbox_start.end() - 1);
    for (const auto& o : buf.out) buf.inbox[buf.fill[o.to]++] = o.env;
    if (options.trace != nullptr) {
      for (const auto& o : buf.out) detail::write_trace(*options.trace, options.phase, round, o.env.from, o.to, o.env.msg);
    }
    buf.next_active.clear();
    for (NodeId v : buf.active) {
      buf.scheduled[v] = 1;
      buf.next_active.push_back(v);
    }
    for (const auto& o : buf.out) {
      if (!buf.scheduled[o.to]) {
        buf.scheduled[o.to] = 1;
        buf.next_active.push_back(o.to);
      }
    }
    std::sort(buf.next_active.begin(), buf.next_active.end());
    buf.out.clear();

    buf.active.clear();
    for (NodeId v : buf.next_active) {
      buf.scheduled[v] = 0;
      const auto first = buf.inbox.begin() + static_cast<std::ptrdiff_t>(buf.inbox_start[v]);
      const auto last = buf.inbox.begin() + static_cast<std::ptrdiff_t>(buf.inbox_start[v + 1]);
      std::stable_sort(first, last, [](const Envelope& x, const Envelope& y) {
        return x.from != y.from ? x.from < y.from : x.msg.tag < y.msg.tag;
      });
      buf.halted[v] = 0;
      Context ctx(&net, &buf, v, round, options.budget);
      program.on_round(ctx, states[v],
                       std::span<const Envelope>(buf.inbox.data() + buf.inbox_start[v],
                                                 buf.inbox_start[v + 1] - buf.inbox_start[v]));
      if (ctx.halted_) {
        buf.halted[v] = 1;
      } else {
        buf.active.push_back(v);
      }
    }
    finish_round();
  }
  report.rounds = round;
  report.phase_rounds[options.phase] += round;
  return report;
}

}  // namespace mincut::congest
