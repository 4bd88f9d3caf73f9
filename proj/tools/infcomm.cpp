// infcomm: command-line front end. Every subcommand prints one JSON document
// on stdout and a short summary on stderr.
//
// Exit codes: 0 success, 2 usage error, 3 domain or contract error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "infcomm/infcomm.hpp"
#include "infcomm/report.hpp"

namespace {

using nlohmann::json;
using namespace infcomm;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  std::string input;
  std::string weights;
  std::uint32_t k = 0;
  std::size_t r = 1;
  std::size_t s = 0;
  double epsilon = 0.1;
  std::string agg = "sum";
  double alpha = AggregationKind::kDefaultAlpha;
  double beta = AggregationKind::kDefaultBeta;
  std::string strategy = "greedy";
  std::uint64_t seed = 0;
  bool non_overlapping = false;
  unsigned threads = 1;
  std::string mode = "unconstrained";
  std::string algo;
  std::string out;
  bool allow_large = false;
  bool verbose = false;

  CLI::Option* s_opt = nullptr;
  CLI::Option* epsilon_opt = nullptr;
  CLI::Option* strategy_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* algo_opt = nullptr;
  CLI::Option* allow_large_opt = nullptr;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return in;
}

WeightedGraph load_graph(const std::string& input, const std::string& weights) {
  auto in = open_input(input);
  WeightedGraph g = parse_edge_list(in);
  if (!weights.empty()) {
    auto win = open_input(weights);
    g = load_weights(g, win);
  }
  return g;
}

AggregationKind parse_kind(const SearchOptions& o) {
  auto kind = AggregationKind::parse(o.agg, o.alpha, o.beta);
  if (!kind) throw UsageError("unknown aggregation '" + o.agg + "'");
  return *kind;
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw DomainError("cannot write " + out_path);
    out << text;
  }
  std::cout << text;
}

void add_graph_options(CLI::App* cmd, SearchOptions& o) {
  cmd->add_option("--input", o.input, "edge list file")->required();
  cmd->add_option("--weights", o.weights, "weight file (label weight per line)");
  cmd->add_option("--k", o.k, "minimum degree inside a community")->required();
  cmd->add_option("--r", o.r, "number of communities")->check(CLI::PositiveNumber);
  o.s_opt = cmd->add_option("--s", o.s, "size cap")->check(CLI::PositiveNumber);
  cmd->add_option("--agg", o.agg, "min|max|sum|sum-surplus|avg|weight-density|balanced-density");
  cmd->add_option("--alpha", o.alpha, "sum-surplus parameter");
  cmd->add_option("--beta", o.beta, "weight-density parameter");
  cmd->add_flag("--non-overlapping", o.non_overlapping, "pairwise disjoint results");
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "also write the report here");
  cmd->add_flag("--verbose", o.verbose, "more detail on stderr");
}

/// Picks the algorithm and rejects flag combinations that would be ignored.
struct Plan {
  std::string algo;
  bool heuristic = false;
};

Plan plan_search(const SearchOptions& o, const AggregationKind& kind) {
  const bool constrained = o.mode == "constrained";
  Plan plan;
  plan.algo = o.algo;
  if (plan.algo.empty()) {
    if (constrained) plan.algo = "local";
    else plan.algo = traits(kind).size_proportional ? "improved" : "local";
  }
  if (constrained && (plan.algo == "naive" || plan.algo == "improved")) {
    throw UsageError("--algo " + plan.algo + " needs --mode unconstrained");
  }
  if (!constrained && plan.algo == "exact") throw UsageError("--algo exact needs --mode constrained");
  if (!constrained && o.s_opt->count() > 0) throw UsageError("--s needs --mode constrained");
  if (o.epsilon_opt->count() > 0 && plan.algo != "improved") {
    throw UsageError("--epsilon only applies to --algo improved");
  }
  if (o.strategy_opt->count() > 0 && plan.algo != "local") throw UsageError("--strategy only applies to --algo local");
  if (o.allow_large_opt->count() > 0 && plan.algo != "exact") throw UsageError("--allow-large only applies to --algo exact");
  if (o.non_overlapping && o.threads > 1 && plan.algo == "local") {
    throw UsageError("non-overlapping local search is sequential; drop --threads");
  }
  plan.heuristic = plan.algo == "local";
  return plan;
}

json params_json(const SearchOptions& o, const AggregationKind& kind, const std::string& command,
                 const std::string& algo, std::optional<std::size_t> s, bool heuristic) {
  json p;
  p["command"] = command;
  p["input"] = o.input;
  p["weights"] = o.weights.empty() ? json(nullptr) : json(o.weights);
  p["mode"] = command == "oracle" ? "exhaustive" : o.mode;
  p["algo"] = algo;
  p["k"] = o.k;
  p["r"] = o.r;
  p["s"] = s ? json(*s) : json(nullptr);
  p["agg"] = std::string(kind.name());
  p["parameter"] = kind.parameter() ? json(*kind.parameter()) : json(nullptr);
  p["epsilon"] = algo == "improved" ? json(o.epsilon) : json(nullptr);
  p["strategy"] = algo == "local" ? json(o.strategy) : json(nullptr);
  p["seed"] = o.seed;
  p["non_overlapping"] = o.non_overlapping;
  p["threads"] = o.threads;
  p["heuristic"] = heuristic;
  return p;
}

void check_results(const WeightedGraph& g, const ResultList& list, std::uint32_t k, std::optional<std::size_t> s,
                   bool non_overlapping) {
  for (const auto& c : list) {
    auto v = verify_community(g, c, k, s);
    if (!v.ok) throw ContractError("internal check failed (" + v.clause + "): " + v.detail);
  }
  if (non_overlapping && !list.pairwise_disjoint()) throw ContractError("internal check failed: overlapping results");
}

void summarize(const WeightedGraph& g, const ResultList& list, double ms, bool verbose) {
  std::cerr << list.size() << " communities";
  if (!list.empty()) std::cerr << ", best value " << list[0].value;
  std::cerr << " (" << ms << " ms)\n";
  if (!verbose) return;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::cerr << "  #" << i + 1 << " value=" << list[i].value << " size=" << list[i].members.size() << " [";
    for (std::size_t j = 0; j < list[i].members.size(); ++j) {
      if (j) std::cerr << ' ';
      std::cerr << g.label(list[i].members[j]);
    }
    std::cerr << "]\n";
  }
}

json run_search(const SearchOptions& o) {
  const AggregationKind kind = parse_kind(o);
  if (o.mode != "unconstrained" && o.mode != "constrained") throw UsageError("--mode must be unconstrained or constrained");
  if (o.strategy != "greedy" && o.strategy != "random") throw UsageError("--strategy must be greedy or random");
  const Plan plan = plan_search(o, kind);
  const WeightedGraph g = load_graph(o.input, o.weights);

  std::optional<std::size_t> s;
  if (o.mode == "constrained" && o.s_opt->count() > 0) s = o.s;

  SearchParams p;
  p.k = o.k;
  p.r = o.r;
  p.s = s;
  p.epsilon = o.epsilon;
  p.greedy = o.strategy == "greedy";
  p.non_overlapping = o.non_overlapping;
  p.rng_seed = o.seed;
  p.allow_large = o.allow_large;

  const auto start = std::chrono::steady_clock::now();
  ResultList result;
  if (plan.algo == "naive" || plan.algo == "improved") {
    if (o.non_overlapping) result = non_overlapping_unconstrained(g, o.k, o.r, kind);
    else if (plan.algo == "naive") result = sum_naive(g, o.k, o.r, kind);
    else result = tic_improved(g, o.k, o.r, o.epsilon, kind);
  } else if (plan.algo == "exact") {
    result = tic_exact(g, p, kind);
  } else if (plan.algo == "local") {
    result = local_search(g, p, kind);
  } else {
    throw UsageError("unknown --algo '" + plan.algo + "'");
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  check_results(g, result, o.k, s, o.non_overlapping);
  summarize(g, result, ms, o.verbose);
  return {{"params", params_json(o, kind, "search", plan.algo, s, plan.heuristic)},
          {"graph", to_json(graph_stats(g))},
          {"communities", communities_json(g, result)},
          {"wall_time_ms", ms}};
}

json run_oracle(const SearchOptions& o) {
  const AggregationKind kind = parse_kind(o);
  const WeightedGraph g = load_graph(o.input, o.weights);
  std::optional<std::size_t> s;
  if (o.s_opt->count() > 0) s = o.s;
  const auto start = std::chrono::steady_clock::now();
  ResultList result = brute_force_topr(g, o.k, o.r, s, kind, o.non_overlapping, o.threads);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  check_results(g, result, o.k, s, o.non_overlapping);
  summarize(g, result, ms, o.verbose);
  return {{"params", params_json(o, kind, "oracle", "brute-force", s, false)},
          {"graph", to_json(graph_stats(g))},
          {"communities", communities_json(g, result)},
          {"wall_time_ms", ms}};
}

void write_weights(std::ostream& out, const WeightedGraph& g, std::span<const double> w) {
  std::ostringstream buf;
  buf.precision(17);
  for (VertexId v = 0; v < g.num_vertices(); ++v) buf << g.label(v) << ' ' << w[v] << '\n';
  out << buf.str();
}

void write_edges(std::ostream& out, const WeightedGraph& g) {
  std::ostringstream buf;
  for (auto [u, v] : g.edge_list()) buf << g.label(u) << ' ' << g.label(v) << '\n';
  out << buf.str();
}

// Edge-list files cannot carry isolated vertices, so `gen` writes only the
// part of the graph that survives a reload.
WeightedGraph without_isolated(const WeightedGraph& g) {
  std::vector<VertexId> id(g.num_vertices(), 0);
  std::vector<Label> labels;
  std::vector<double> weights;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) continue;
    id[v] = static_cast<VertexId>(labels.size());
    labels.push_back(g.label(v));
    weights.push_back(g.weight(v));
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [u, v] : g.edge_list()) edges.emplace_back(id[u], id[v]);
  return WeightedGraph::from_edges(std::move(labels), edges, std::move(weights));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Top-r k-influential community search"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  SearchOptions search;
  auto* cmd_search = app.add_subcommand("search", "search for the top-r communities");
  add_graph_options(cmd_search, search);
  search.epsilon_opt = cmd_search->add_option("--epsilon", search.epsilon, "approximation slack in [0,1)")
                           ->check(CLI::Range(0.0, 1.0));
  search.strategy_opt = cmd_search->add_option("--strategy", search.strategy, "greedy|random (local search)");
  search.seed_opt = cmd_search->add_option("--seed", search.seed, "random strategy seed");
  cmd_search->add_option("--mode", search.mode, "unconstrained|constrained");
  search.algo_opt = cmd_search->add_option("--algo", search.algo, "naive|improved|exact|local");
  search.allow_large_opt = cmd_search->add_flag("--allow-large", search.allow_large, "let exact search run above 20 vertices");

  SearchOptions oracle;
  auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive ground truth (at most 20 vertices)");
  add_graph_options(cmd_oracle, oracle);

  std::string pr_input, pr_out;
  PageRankOptions pr;
  auto* cmd_pr = app.add_subcommand("pagerank", "PageRank weights as a weight file");
  cmd_pr->add_option("--input", pr_input, "edge list file")->required();
  cmd_pr->add_option("--damping", pr.damping, "damping factor")->check(CLI::Range(0.0, 1.0));
  cmd_pr->add_option("--tol", pr.tol, "L1 convergence tolerance");
  cmd_pr->add_option("--max-iter", pr.max_iter, "iteration limit");
  cmd_pr->add_option("--out", pr_out, "weight file to write")->required();

  PowerLawSpec spec;
  std::string gen_out, gen_weights_out, gen_weights = "uniform";
  auto* cmd_gen = app.add_subcommand("gen", "Chung-Lu power-law graph");
  cmd_gen->add_option("--n", spec.n, "vertices")->required();
  cmd_gen->add_option("--gamma", spec.gamma, "degree exponent in (2,3)")->required();
  cmd_gen->add_option("--min-degree", spec.min_degree, "expected degree of the lightest vertex");
  cmd_gen->add_option("--seed", spec.seed, "generator seed");
  cmd_gen->add_option("--out", gen_out, "edge list to write")->required();
  cmd_gen->add_option("--weights-out", gen_weights_out, "weight file to write (default: <out>.weights)");
  cmd_gen->add_option("--weights", gen_weights, "uniform|pagerank")->check(CLI::IsMember({"uniform", "pagerank"}));

  std::string result_path, ideal_path;
  std::size_t ndcg_r = 0;
  auto* cmd_ndcg = app.add_subcommand("eval-ndcg", "NDCG of one report against another");
  cmd_ndcg->add_option("--result", result_path, "report being scored")->required();
  cmd_ndcg->add_option("--ideal", ideal_path, "exact report")->required();
  cmd_ndcg->add_option("--r", ndcg_r, "cutoff")->required()->check(CLI::PositiveNumber);

  std::string cs_input, cs_weights;
  std::uint32_t cs_k = 0;
  auto* cmd_cs = app.add_subcommand("core-stats", "graph size, degeneracy and k-core size");
  cmd_cs->add_option("--input", cs_input, "edge list file")->required();
  cmd_cs->add_option("--weights", cs_weights, "weight file");
  auto* cs_k_opt = cmd_cs->add_option("--k", cs_k, "report the k-core for this k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_search) {
      emit(run_search(search), search.out);
    } else if (*cmd_oracle) {
      emit(run_oracle(oracle), oracle.out);
    } else if (*cmd_pr) {
      const WeightedGraph g = load_graph(pr_input, "");
      auto w = pagerank(g, pr);
      auto out = open_output(pr_out);
      write_weights(out, g, w);
      double total = 0.0;
      for (double x : w) total += x;
      std::cerr << "pagerank over " << g.num_vertices() << " vertices written to " << pr_out << "\n";
      emit({{"params", {{"command", "pagerank"}, {"input", pr_input}, {"damping", pr.damping}, {"tol", pr.tol},
                        {"max_iter", pr.max_iter}}},
            {"graph", to_json(graph_stats(g))},
            {"output", pr_out},
            {"total", total}},
           "");
    } else if (*cmd_gen) {
      WeightedGraph g = generate_powerlaw(spec);
      if (gen_weights == "pagerank") g = g.with_weights(pagerank(g));
      const std::size_t generated = g.num_vertices();
      g = without_isolated(g);
      if (gen_weights_out.empty()) gen_weights_out = gen_out + ".weights";
      {
        auto out = open_output(gen_out);
        write_edges(out, g);
        auto wout = open_output(gen_weights_out);
        write_weights(wout, g, g.weights());
      }
      std::cerr << "generated " << g.num_vertices() << " vertices, " << g.num_edges() << " edges ("
                << generated - g.num_vertices() << " isolated vertices dropped)\n";
      emit({{"params", {{"command", "gen"}, {"n", spec.n}, {"gamma", spec.gamma}, {"min_degree", spec.min_degree},
                        {"seed", spec.seed}, {"weights", gen_weights}}},
            {"graph", to_json(graph_stats(g))},
            {"output", gen_out},
            {"weights_output", gen_weights_out}},
           "");
    } else if (*cmd_ndcg) {
      auto read = [](const std::string& path) {
        auto in = open_input(path);
        try {
          return values_from_report(json::parse(in));
        } catch (const json::exception& e) {
          throw DomainError(path + ": " + e.what());
        }
      };
      const ResultList result = read(result_path);
      const ResultList ideal = read(ideal_path);
      const double score = ndcg(result, ideal, ndcg_r);
      std::cerr << "NDCG@" << ndcg_r << " = " << score << "\n";
      emit({{"params", {{"command", "eval-ndcg"}, {"result", result_path}, {"ideal", ideal_path}, {"r", ndcg_r}}},
            {"ndcg", score}},
           "");
    } else if (*cmd_cs) {
      const WeightedGraph g = load_graph(cs_input, cs_weights);
      json doc{{"params", {{"command", "core-stats"}, {"input", cs_input}}}, {"graph", to_json(graph_stats(g))}};
      if (cs_k_opt->count() > 0) {
        const SubgraphView core = k_core(g, cs_k);
        const auto pieces = connected_components(core);
        std::size_t edges = 0;
        for (VertexId v : core.members()) edges += core.degree(v);
        doc["params"]["k"] = cs_k;
        doc["core"] = {{"k", cs_k}, {"n", core.size()}, {"m", edges / 2}, {"components", pieces.size()}};
        std::cerr << cs_k << "-core: " << core.size() << " vertices in " << pieces.size() << " components\n";
      }
      emit(doc, "");
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
