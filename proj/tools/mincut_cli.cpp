#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mincut/congest/dist_mincut.hpp"
#include "mincut/congest/dist_mst.hpp"
#include "mincut/congest/one_respect.hpp"
#include "mincut/errors.hpp"
#include "mincut/generators.hpp"
#include "mincut/graph_io.hpp"
#include "mincut/oracle.hpp"
#include "mincut/seq_mincut.hpp"

using json = nlohmann::ordered_json;
using namespace mincut;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kUsage = 2, kOracleCapacity = 3, kEngineBudget = 4 };

const std::vector<std::string> kAlgorithms = {"seq-approx", "seq-exact",   "dist-approx", "dist-exact",
                                              "dist-value", "one-respect", "oracle"};

struct Config {
  std::string algorithm;
  std::vector<std::string> graphs;
  std::vector<std::string> gens;
  std::string eps = "1/2";
  std::uint64_t seed = 1;
  int trials = 1;
  long max_rounds = 1'000'000;
  int congestion = 1;
  std::optional<std::int64_t> lambda_bound;
  std::string out;
  bool trace = false;
  bool verbose = false;

  json to_json() const {
    json j;
    j["algorithm"] = algorithm;
    if (!graphs.empty()) j["graph"] = graphs;
    if (!gens.empty()) j["gen"] = gens;
    j["eps"] = eps;
    j["seed"] = seed;
    j["trials"] = trials;
    j["max_rounds"] = max_rounds;
    j["congestion"] = congestion;
    if (lambda_bound) j["lambda_bound"] = *lambda_bound;
    return j;
  }
};

struct Source {
  std::string name;
  bool generated = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

json rounds_json(const congest::RoundReport& r) {
  json j;
  j["rounds"] = r.rounds;
  j["max_congestion"] = r.max_msgs_per_edge_per_round;
  j["messages"] = r.total_messages;
  return j;
}

void add_levels(json& rec, const ApproxResult& a) {
  rec["eps_prime"] = a.eps_prime.to_string();
  rec["lambda_bound"] = a.lambda_bound;
  rec["levels"] = a.levels.size();
  json trees = json::array();
  for (const LevelTrace& l : a.levels) trees.push_back(l.trees);
  rec["trees_per_level"] = trees;
  rec["trees"] = a.trees_packed;
}

void verify(const Graph& g, const Cut& c) {
  if (cut_weight(g, c.side) != c.weight) throw InternalInvariantError("reported weight differs from the cut's weight");
}

// One spanning tree per trial, oriented in-network, then a 1-respecting session.
json run_one_respect(const Graph& g, std::uint64_t seed, const congest::RunOptions& run) {
  const RootedTree t = random_spanning_tree(g, seed);
  const congest::Network net(g);
  std::vector<char> in_tree(g.m(), 0);
  for (std::size_t e : t.edge_ids()) in_tree[e] = 1;
  std::vector<std::vector<char>> flags(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    for (const congest::Link& l : net.links(v)) flags[v].push_back(in_tree[l.edge]);
  }
  congest::RoundReport report;
  const congest::DistTree dt = congest::orient_tree(net, flags, run);
  report.merge(dt.report);
  const congest::BfsTree bfs = congest::bfs_tree(net, 0, run);
  report.merge(bfs.report);
  const congest::OneRespectResult r = congest::one_respect_min_cut(net, dt, bfs, run);
  report.merge(r.report);
  json rec;
  if (r.argmin >= 0) {
    const Cut c = make_cut(g, dt.rooted(g).subtree(r.argmin));
    if (c.weight != r.c_star) throw InternalInvariantError("c* differs from the weight of its subtree cut");
    rec["weight"] = r.c_star;
  }
  rec["c_star"] = r.c_star;
  rec["argmin"] = r.argmin;
  rec.update(rounds_json(report));
  return rec;
}

json run_trial(const Config& cfg, const Graph& g, std::uint64_t seed, const Rational& eps, std::ostream* trace) {
  congest::RunOptions run;
  run.budget = cfg.congestion;
  run.max_rounds = cfg.max_rounds;
  run.seed = seed;
  run.trace = trace;
  congest::DistOptions dist;
  dist.run = run;
  dist.lambda_bound = cfg.lambda_bound;

  json rec;
  const std::string& a = cfg.algorithm;
  if (a == "seq-approx" || a == "seq-exact") {
    const ApproxOptions opts{cfg.lambda_bound, false};
    const ApproxResult r = a == "seq-approx" ? approx_min_cut(g, eps, seed, opts) : exact_min_cut(g, seed, opts);
    verify(g, r.cut);
    rec["weight"] = r.cut.weight;
    add_levels(rec, r);
  } else if (a == "dist-approx" || a == "dist-exact") {
    const congest::DistApproxResult r =
        a == "dist-approx" ? congest::dist_approx_min_cut(g, eps, seed, dist) : congest::dist_exact_min_cut(g, seed, dist);
    verify(g, r.approx.cut);
    rec["weight"] = r.approx.cut.weight;
    rec.update(rounds_json(r.report));
    add_levels(rec, r.approx);
  } else if (a == "dist-value") {
    const congest::DistValueResult r = congest::dist_estimate_value(g, eps, seed, dist);
    rec["value"] = r.value.value.to_string();
    rec["value_approx"] = r.value.value.to_double();
    rec["best_one_respect"] = r.value.best_one_respect;
    rec["pack_val"] = r.value.pack_val.to_string();
    rec["trees"] = r.value.trees;
    rec.update(rounds_json(r.report));
  } else if (a == "one-respect") {
    rec = run_one_respect(g, seed, run);
  } else {
    const Cut c = brute_force_mincut(g);
    verify(g, c);
    rec["weight"] = c.weight;
  }
  return rec;
}

void add_oracle(json& rec, const Graph& g) {
  try {
    const Weight lambda = brute_force_mincut(g).weight;
    rec["oracle_weight"] = lambda;
    if (rec.contains("weight")) {
      rec["ratio"] = static_cast<double>(rec["weight"].get<Weight>()) / static_cast<double>(lambda);
    } else if (rec.contains("value_approx")) {
      rec["ratio"] = rec["value_approx"].get<double>() / static_cast<double>(lambda);
    }
  } catch (const OracleCapacityError& e) {
    rec["oracle_omitted"] = e.what();
  }
}

// Least-squares slope of log(rounds) against log(n).
json round_fit(const std::vector<std::pair<double, double>>& points) {
  std::map<double, int> distinct;
  for (const auto& p : points) distinct[p.first]++;
  json j;
  if (distinct.size() < 2) {
    j["exponent"] = nullptr;
    j["reason"] = "fewer than two distinct graph sizes";
    return j;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, r] : points) {
    const double x = std::log(n);
    const double y = std::log(std::max(r, 1.0));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(points.size());
  j["exponent"] = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  j["points"] = points.size();
  return j;
}

int run_experiment(const Config& cfg, std::ostream& out) {
  Rational eps;
  try {
    eps = Rational::parse(cfg.eps);
  } catch (const Error& e) {
    throw UsageError(std::string("--eps: ") + e.what());
  }
  if (!(eps > Rational(0)) || eps > Rational(1)) throw UsageError("--eps must lie in (0, 1]");
  if (cfg.trials < 1) throw UsageError("--trials must be positive");
  if (cfg.congestion < 1) throw UsageError("--congestion must be positive");

  std::vector<Source> sources;
  for (const std::string& p : cfg.graphs) sources.push_back({p, false});
  for (const std::string& s : cfg.gens) sources.push_back({s, true});

  std::ostream* trace = cfg.trace ? &std::cerr : nullptr;
  double max_ratio = 0;
  bool any_ratio = false;
  std::vector<std::pair<double, double>> fit_points;
  int index = 0;
  for (const Source& src : sources) {
    std::optional<Graph> file_graph;
    if (!src.generated) file_graph = load_edge_list(src.name);
    for (int t = 0; t < cfg.trials; ++t, ++index) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(t);
      const Graph g = src.generated ? generate(src.name, seed) : *file_graph;
      json rec;
      rec["trial"] = index;
      rec["algorithm"] = cfg.algorithm;
      rec["source"] = src.name;
      rec["seed"] = seed;
      rec["graph_hash"] = graph_hash(g);
      rec["n"] = g.n();
      rec["m"] = g.m();
      if (cfg.algorithm == "seq-approx" || cfg.algorithm == "dist-approx" || cfg.algorithm == "dist-value") {
        rec["eps"] = eps.to_string();
      }
      const auto start = std::chrono::steady_clock::now();
      rec.update(run_trial(cfg, g, seed, eps, trace));
      const std::chrono::duration<double, std::milli> wall = std::chrono::steady_clock::now() - start;
      rec["wall_ms"] = wall.count();
      if (cfg.algorithm != "oracle") add_oracle(rec, g);
      if (rec.contains("ratio")) {
        any_ratio = true;
        max_ratio = std::max(max_ratio, rec["ratio"].get<double>());
      }
      if (rec.contains("rounds")) fit_points.emplace_back(g.n(), rec["rounds"].get<double>());
      if (cfg.verbose) std::cerr << "trial " << index << " " << src.name << " done in " << wall.count() << " ms\n";
      out << rec.dump() << '\n';
    }
  }
  json summary;
  summary["summary"] = true;
  summary["config"] = cfg.to_json();
  summary["trials"] = index;
  if (any_ratio) {
    summary["max_ratio"] = max_ratio;
  } else {
    summary["max_ratio"] = nullptr;
  }
  if (!fit_points.empty()) summary["round_fit"] = round_fit(fit_points);
  out << summary.dump() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum cut experiments: sequential and simulated distributed tree packing"};
  app.require_subcommand(1, 1);
  Config cfg;
  for (const std::string& name : kAlgorithms) {
    CLI::App* sub = app.add_subcommand(name, "run " + name);
    auto* graph = sub->add_option("--graph", cfg.graphs, "edge-list file (repeatable)");
    auto* gen = sub->add_option("--gen", cfg.gens, "generator spec such as cycle:8 (repeatable)");
    sub->add_option("--eps", cfg.eps, "approximation parameter in (0, 1], decimal or p/q");
    sub->add_option("--seed", cfg.seed, "base seed; trial t uses seed + t");
    sub->add_option("--trials", cfg.trials, "trials per graph source");
    sub->add_option("--max-rounds", cfg.max_rounds, "round limit per distributed run");
    sub->add_option("--congestion", cfg.congestion, "messages per edge per direction per round");
    sub->add_option("--lambda-bound", cfg.lambda_bound, "upper bound on the min-cut value");
    sub->add_option("--out", cfg.out, "write JSON lines here instead of stdout");
    sub->add_flag("--trace", cfg.trace, "message trace as JSON lines on stderr");
    sub->add_flag("--verbose", cfg.verbose, "progress on stderr");
    graph->excludes(gen);
    sub->callback([&cfg, name] { cfg.algorithm = name; });
  }
  try {
    app.parse(argc, argv);
    if (cfg.graphs.empty() && cfg.gens.empty()) throw CLI::ValidationError("one of --graph or --gen is required");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (cfg.out.empty()) return run_experiment(cfg, std::cout);
    std::ofstream file(cfg.out);
    if (!file) throw UsageError("cannot open " + cfg.out);
    return run_experiment(cfg, file);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleSpec& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidGraph& e) {
    std::cerr << "invalid graph: " << e.what() << '\n';
    return kUsage;
  } catch (const OracleCapacityError& e) {
    std::cerr << "oracle capacity exceeded: " << e.what() << '\n';
    return kOracleCapacity;
  } catch (const congest::BudgetViolation& e) {
    std::cerr << "engine budget violation: " << e.what() << '\n';
    return kEngineBudget;
  } catch (const congest::RoundLimitExceeded& e) {
    std::cerr << "round limit exceeded: " << e.what() << '\n';
    return kEngineBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
