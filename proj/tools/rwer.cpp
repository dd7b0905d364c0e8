// Command-line front end: scoring, learning, evaluation, benchmarking, and a
// built-in self test. Every run writes a JSON manifest with the resolved
// configuration so results can be reproduced byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "rwer/closed_form.hpp"
#include "rwer/engine.hpp"
#include "rwer/errors.hpp"
#include "rwer/eval.hpp"
#include "rwer/graph.hpp"
#include "rwer/learner.hpp"
#include "rwer/metrics.hpp"
#include "rwer/solver.hpp"
#include "rwer/synthetic.hpp"
#include "rwer/version.hpp"

using nlohmann::json;
using namespace rwer;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::string>& argv, const json& config,
                    const json& results) {
  json manifest = {
      {"version", kVersion},
      {"command", command},
      {"argv", argv},
      {"config", config},
      {"results", results},
  };
  write_file(path, manifest.dump(2) + "\n");
}

std::vector<std::string> g_argv;

ResidualNorm parse_norm(const std::string& name) {
  if (name == "l1") return ResidualNorm::kL1;
  if (name == "l2") return ResidualNorm::kL2;
  if (name == "linf") return ResidualNorm::kLInf;
  throw UsageError("unknown norm '" + name + "' (expected l1, l2, or linf)");
}

std::vector<std::string> read_label_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t a = line.find_first_not_of(" \t");
    if (a == std::string::npos || line[a] == '#') continue;
    std::size_t b = line.find_last_not_of(" \t");
    labels.push_back(line.substr(a, b - a + 1));
  }
  return labels;
}

// (label, value) TSV keyed to graph node ids; every node must appear once.
std::vector<double> read_value_map(const std::string& path, const SparseGraph& g) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<double> values(g.n);
  std::vector<std::uint8_t> seen(g.n, 0);
  std::string label;
  double value = 0.0;
  std::size_t count = 0;
  while (in >> label >> value) {
    NodeId u = g.id_of(label);
    if (seen[u]) throw UsageError("duplicate entry for node '" + label + "'");
    seen[u] = 1;
    values[u] = value;
    ++count;
  }
  if (count != g.n) {
    throw DimensionError("vector file has " + std::to_string(count) +
                         " entries, graph has " + std::to_string(g.n) + " nodes");
  }
  return values;
}

std::string scores_tsv(const SparseGraph& g, const std::vector<double>& scores) {
  std::vector<NodeId> order(g.n);
  for (NodeId u = 0; u < g.n; ++u) order[u] = u;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  std::string out;
  for (NodeId u : order) {
    out += g.labels[u];
    out += '\t';
    out += fmt(scores[u]);
    out += '\n';
  }
  return out;
}

std::string label_map_tsv(const SparseGraph& g) {
  std::ostringstream out;
  write_label_map(g, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string graph_path;
  std::string seed_label;
  double restart = 0.2;
  bool restart_given = false;
  std::string restart_vector_path;
  double epsilon = 1e-9;
  std::size_t max_iters = 10000;
  std::string norm = "l1";
  std::string out_path;
  std::string label_map_path;
  std::string manifest_path;
};

int run_score(const ScoreArgs& args) {
  SparseGraph g = load_edge_list_file(args.graph_path);
  TransitionMatrix t = row_normalize(g);
  NodeId seed = g.id_of(args.seed_label);

  RestartVector c = args.restart_vector_path.empty()
                        ? RestartVector::constant(t, args.restart)
                        : RestartVector::from_values(
                              t, read_value_map(args.restart_vector_path, g));

  IterationConfig cfg;
  cfg.epsilon = args.epsilon;
  cfg.max_iterations = args.max_iters;
  cfg.norm = parse_norm(args.norm);

  ScoreVector s = rwer_power_iteration(t, c, seed, cfg);

  std::string label_map_path =
      args.label_map_path.empty() ? args.out_path + ".labels.tsv" : args.label_map_path;
  std::string manifest_path =
      args.manifest_path.empty() ? args.out_path + ".manifest.json" : args.manifest_path;

  write_file(args.out_path, scores_tsv(g, s.r));
  write_file(label_map_path, label_map_tsv(g));

  json config = {
      {"graph", args.graph_path},
      {"seed", args.seed_label},
      {"restart", args.restart_vector_path.empty() ? json(args.restart)
                                                   : json(args.restart_vector_path)},
      {"epsilon", args.epsilon},
      {"max_iters", args.max_iters},
      {"norm", args.norm},
      {"out", args.out_path},
      {"label_map", label_map_path},
  };
  json results = {
      {"nodes", g.n},
      {"edges", g.m},
      {"iterations", s.iterations},
      {"residual", s.residual},
  };
  write_manifest(manifest_path, "score", g_argv, config, results);
  return 0;
}

// ---------------------------------------------------------------------------
// learn

struct LearnArgs {
  std::string graph_path;
  std::string seed_label;
  std::string positives_path;
  std::string negatives_path;
  double b = 1e-3;
  double lambda = 1.0;
  double origin = 0.2;
  std::string origin_vector_path;
  double eta = 0.1;
  std::size_t max_epochs = 200;
  double grad_tol = 1e-6;
  double step_tol = 1e-9;
  bool no_safeguard = false;
  std::string variant = "sure";
  double epsilon = 1e-9;
  std::size_t max_iters = 10000;
  double solve_tol = 1e-10;
  std::string out_path;
  std::string trace_path;
  std::string label_map_path;
  std::string manifest_path;
};

int run_learn(const LearnArgs& args) {
  SparseGraph g = load_edge_list_file(args.graph_path);
  TransitionMatrix t = row_normalize(g);

  SupervisionInstance inst;
  inst.seed = g.id_of(args.seed_label);
  for (const std::string& label : read_label_lines(args.positives_path)) {
    inst.positives.push_back(g.id_of(label));
  }
  for (const std::string& label : read_label_lines(args.negatives_path)) {
    inst.negatives.push_back(g.id_of(label));
  }

  LearnConfig cfg;
  cfg.b = args.b;
  cfg.lambda = args.lambda;
  cfg.origin_value = args.origin;
  if (!args.origin_vector_path.empty()) {
    cfg.origin = read_value_map(args.origin_vector_path, g);
  }
  cfg.eta = args.eta;
  cfg.max_epochs = args.max_epochs;
  cfg.grad_tol = args.grad_tol;
  cfg.step_tol = args.step_tol;
  cfg.safeguard = !args.no_safeguard;
  if (args.variant == "sure") {
    cfg.variant = LearnVariant::kSure;
  } else if (args.variant == "sure-fast") {
    cfg.variant = LearnVariant::kSureFast;
  } else {
    throw UsageError("unknown variant '" + args.variant + "'");
  }
  cfg.iteration.epsilon = args.epsilon;
  cfg.iteration.max_iterations = args.max_iters;
  cfg.solve.tolerance = args.solve_tol;

  LearnResult res = sure_learn(t, inst, cfg);
  if (!res.warning.empty()) {
    std::cerr << "warning: " << res.warning << "\n";
  }

  std::string c_tsv;
  for (NodeId u = 0; u < g.n; ++u) {
    c_tsv += g.labels[u];
    c_tsv += '\t';
    c_tsv += fmt(res.restart[u]);
    c_tsv += '\n';
  }
  std::string trace_csv = "epoch,loss\n";
  for (std::size_t i = 0; i < res.loss_trace.size(); ++i) {
    trace_csv += std::to_string(i) + "," + fmt(res.loss_trace[i]) + "\n";
  }

  std::string trace_path =
      args.trace_path.empty() ? args.out_path + ".loss.csv" : args.trace_path;
  std::string label_map_path =
      args.label_map_path.empty() ? args.out_path + ".labels.tsv" : args.label_map_path;
  std::string manifest_path =
      args.manifest_path.empty() ? args.out_path + ".manifest.json" : args.manifest_path;

  write_file(args.out_path, c_tsv);
  write_file(trace_path, trace_csv);
  write_file(label_map_path, label_map_tsv(g));

  json config = {
      {"graph", args.graph_path},
      {"seed", args.seed_label},
      {"positives", args.positives_path},
      {"negatives", args.negatives_path},
      {"b", cfg.b},
      {"lambda", cfg.lambda},
      {"origin", args.origin_vector_path.empty() ? json(cfg.origin_value)
                                                 : json(args.origin_vector_path)},
      {"eta", cfg.eta},
      {"max_epochs", cfg.max_epochs},
      {"grad_tol", cfg.grad_tol},
      {"step_tol", cfg.step_tol},
      {"safeguard", cfg.safeguard},
      {"variant", args.variant},
      {"epsilon", cfg.iteration.epsilon},
      {"max_iters", cfg.iteration.max_iterations},
      {"solve_tol", cfg.solve.tolerance},
      {"out", args.out_path},
      {"trace", trace_path},
      {"label_map", label_map_path},
  };
  json results = {
      {"nodes", g.n},
      {"edges", g.m},
      {"epochs", res.epochs},
      {"converged", res.converged},
      {"final_loss", res.loss_trace.back()},
      {"warning", res.warning},
  };
  write_manifest(manifest_path, "learn", g_argv, config, results);
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;  // 0: take the config value
};

int run_evaluate(const EvaluateArgs& args) {
  ExperimentConfig cfg = load_experiment_config(args.config_path);
  if (args.threads > 0) cfg.threads = args.threads;

  // Graph paths resolve relative to the config file.
  std::filesystem::path base = std::filesystem::path(args.config_path).parent_path();
  std::filesystem::path graph = cfg.graph_path;
  if (graph.is_relative()) cfg.graph_path = (base / graph).string();

  ExperimentReport report = run_experiment(cfg);

  std::filesystem::create_directories(args.out_dir);
  std::string metrics_path = (std::filesystem::path(args.out_dir) / "metrics.tsv").string();
  std::string manifest_path =
      (std::filesystem::path(args.out_dir) / "manifest.json").string();

  std::ostringstream table;
  write_metrics_tsv(report, table);
  write_file(metrics_path, table.str());

  json per_query = json::array();
  for (const QueryResult& qr : report.per_query) {
    per_query.push_back({{"method", qr.method},
                         {"query", qr.query},
                         {"ap", qr.ap},
                         {"auc", qr.auc},
                         {"precision", qr.precision}});
  }
  json results = {
      {"metrics", metrics_path},
      {"skipped_queries", report.skipped_queries},
      {"per_query", per_query},
  };
  write_manifest(manifest_path, "evaluate", g_argv, json::parse(experiment_config_json(cfg)),
                 results);
  std::cout << table.str();
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string graph_path;
  std::size_t repeat = 3;
  std::size_t edges = 100000;
  std::string out_path;
  std::string manifest_path = "bench.manifest.json";
};

struct BenchTimes {
  double score_per_iteration_ms = 0.0;
  double learn_per_epoch_ms = 0.0;
  NodeId nodes = 0;
  std::size_t edges = 0;
};

BenchTimes bench_graph(const SparseGraph& g, std::size_t repeat) {
  using clock = std::chrono::steady_clock;
  TransitionMatrix t = row_normalize(g);
  RestartVector c = RestartVector::constant(t, 0.2);
  IterationConfig icfg;
  icfg.epsilon = 1e-9;

  BenchTimes out;
  out.nodes = g.n;
  out.edges = g.m;

  double best_score = 1e300;
  for (std::size_t rep = 0; rep < repeat; ++rep) {
    auto start = clock::now();
    ScoreVector s = rwer_power_iteration(t, c, 0, icfg);
    double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    best_score = std::min(best_score, ms / static_cast<double>(s.iterations));
  }
  out.score_per_iteration_ms = best_score;

  SupervisionInstance inst;
  inst.seed = 0;
  for (NodeId u = 1; u <= 3; ++u) inst.positives.push_back(u);
  for (NodeId u = 4; u <= 6; ++u) inst.negatives.push_back(u % g.n);
  LearnConfig lcfg;
  lcfg.b = 0.01;
  lcfg.max_epochs = 2;
  lcfg.grad_tol = 0.0;
  lcfg.step_tol = 0.0;

  double best_learn = 1e300;
  for (std::size_t rep = 0; rep < repeat; ++rep) {
    auto start = clock::now();
    LearnResult res = sure_learn(t, inst, lcfg);
    double ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    best_learn = std::min(best_learn, ms / static_cast<double>(std::max<std::size_t>(
                                               1, res.epochs)));
  }
  out.learn_per_epoch_ms = best_learn;
  return out;
}

SparseGraph bench_synthetic(std::size_t edges, std::uint64_t seed) {
  NodeId n = static_cast<NodeId>(std::max<std::size_t>(10, edges / 10));
  return synthetic::random_strongly_connected(n, edges - n, seed);
}

int run_bench(const BenchArgs& args) {
  std::string table = "operation\tnodes\tedges\tms\n";
  json results;

  if (!args.graph_path.empty()) {
    SparseGraph g = load_edge_list_file(args.graph_path);
    BenchTimes bt = bench_graph(g, args.repeat);
    table += "score_per_iteration\t" + std::to_string(bt.nodes) + "\t" +
             std::to_string(bt.edges) + "\t" + fmt(bt.score_per_iteration_ms) + "\n";
    table += "learn_per_epoch\t" + std::to_string(bt.nodes) + "\t" +
             std::to_string(bt.edges) + "\t" + fmt(bt.learn_per_epoch_ms) + "\n";
  } else {
    // Slope mode: double the edge count at fixed edges-per-node and report
    // the growth ratios; near-linear scaling keeps them close to 2.
    SparseGraph small = bench_synthetic(args.edges, 1);
    SparseGraph large = bench_synthetic(2 * args.edges, 1);
    BenchTimes a = bench_graph(small, args.repeat);
    BenchTimes b = bench_graph(large, args.repeat);
    table += "score_per_iteration\t" + std::to_string(a.nodes) + "\t" +
             std::to_string(a.edges) + "\t" + fmt(a.score_per_iteration_ms) + "\n";
    table += "score_per_iteration\t" + std::to_string(b.nodes) + "\t" +
             std::to_string(b.edges) + "\t" + fmt(b.score_per_iteration_ms) + "\n";
    table += "learn_per_epoch\t" + std::to_string(a.nodes) + "\t" +
             std::to_string(a.edges) + "\t" + fmt(a.learn_per_epoch_ms) + "\n";
    table += "learn_per_epoch\t" + std::to_string(b.nodes) + "\t" +
             std::to_string(b.edges) + "\t" + fmt(b.learn_per_epoch_ms) + "\n";
    double score_ratio = b.score_per_iteration_ms / a.score_per_iteration_ms;
    double learn_ratio = b.learn_per_epoch_ms / a.learn_per_epoch_ms;
    table += "score_ratio\t-\t-\t" + fmt(score_ratio) + "\n";
    table += "learn_ratio\t-\t-\t" + fmt(learn_ratio) + "\n";
  }

  std::cout << table;
  if (!args.out_path.empty()) write_file(args.out_path, table);

  json config = {
      {"graph", args.graph_path},
      {"repeat", args.repeat},
      {"edges", args.edges},
      {"out", args.out_path},
  };
  write_manifest(args.manifest_path, "bench", g_argv, config, results);
  return 0;
}

// ---------------------------------------------------------------------------
// selftest

struct SelftestArgs {
  std::string manifest_path = "selftest.manifest.json";
};

int run_selftest(const SelftestArgs& args) {
  int failures = 0;
  auto report = [&failures](const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  // Power iteration vs dense closed form.
  {
    double worst = 0.0;
    for (std::uint64_t salt = 1; salt <= 10; ++salt) {
      NodeId n = static_cast<NodeId>(10 + 19 * salt);
      SparseGraph g = synthetic::random_strongly_connected(n, 6 * n, salt);
      TransitionMatrix t = row_normalize(g);
      std::mt19937_64 rng(salt + 100);
      std::uniform_real_distribution<double> dist(0.05, 0.6);
      std::vector<double> values(t.n);
      for (auto& v : values) v = dist(rng);
      RestartVector c = RestartVector::from_values(t, values);
      IterationConfig cfg;
      cfg.epsilon = 1e-12;
      ScoreVector iterative =
          rwer_power_iteration(t, c, static_cast<NodeId>(salt % n), cfg);
      ScoreVector dense = rwer_closed_form(t, c, static_cast<NodeId>(salt % n));
      double err = 0.0;
      for (NodeId u = 0; u < t.n; ++u) err += std::abs(iterative.r[u] - dense.r[u]);
      worst = std::max(worst, err);
    }
    report("oracle equivalence (power iteration vs closed form)", worst < 1e-8,
           "max L1 diff " + fmt(worst));
  }

  // Analytic gradient vs central finite differences.
  {
    double worst = 0.0;
    for (std::uint64_t salt = 1; salt <= 5; ++salt) {
      SparseGraph g = synthetic::random_strongly_connected(30, 150, salt);
      TransitionMatrix t = row_normalize(g);
      std::mt19937_64 rng(salt + 7);
      std::uniform_real_distribution<double> dist(0.1, 0.5);
      std::vector<double> values(t.n);
      for (auto& v : values) v = dist(rng);
      RestartVector c = RestartVector::from_values(t, values);
      SupervisionInstance inst{0, {1, 2, 3}, {10, 11, 12}};
      LearnConfig cfg;
      cfg.b = 0.1;
      cfg.iteration.epsilon = 1e-13;
      cfg.solve.tolerance = 1e-12;
      GradientReport rep = gradient(t, c, inst, cfg);
      std::vector<double> fd = finite_difference_gradient(t, c, inst, cfg, 1e-6);
      for (NodeId u = 0; u < t.n; ++u) {
        if (std::abs(rep.gradient[u]) <= 1e-8) continue;
        worst = std::max(worst,
                         std::abs(fd[u] - rep.gradient[u]) / std::abs(rep.gradient[u]));
      }
    }
    report("gradient check (analytic vs finite differences)", worst <= 1e-4,
           "max rel err " + fmt(worst));
  }

  // Adjoint backends against each other and the dense oracle.
  {
    double worst = 0.0;
    for (std::uint64_t salt = 1; salt <= 5; ++salt) {
      SparseGraph g = synthetic::random_strongly_connected(60, 300, salt);
      TransitionMatrix t = row_normalize(g);
      RestartVector c = RestartVector::constant(t, 0.15);
      NodeId seed = static_cast<NodeId>(salt % t.n);
      std::mt19937_64 rng(salt);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      std::vector<double> rhs(t.n);
      for (auto& v : rhs) v = dist(rng);

      AdjointOperator op(t, c, seed);
      SolveConfig cfg;
      cfg.tolerance = 1e-12;
      cfg.backend = SolveBackend::kGmres;
      std::vector<double> via_gmres = solve_adjoint(op, rhs, cfg);
      cfg.backend = SolveBackend::kRichardson;
      std::vector<double> via_richardson = solve_adjoint(op, rhs, cfg);
      ClosedFormOracle oracle(t, c, seed);
      std::vector<double> via_dense = oracle.solve_adjoint(rhs);
      for (NodeId u = 0; u < t.n; ++u) {
        worst = std::max(worst, std::abs(via_gmres[u] - via_dense[u]));
        worst = std::max(worst, std::abs(via_richardson[u] - via_dense[u]));
      }
    }
    report("adjoint solver agreement (GMRES, Richardson, dense)", worst < 1e-8,
           "max abs diff " + fmt(worst));
  }

  // Ranking metrics vs direct enumeration.
  {
    bool ok = true;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(2, 30);
    std::uniform_int_distribution<int> level(0, 9);
    for (int trial = 0; trial < 200 && ok; ++trial) {
      int n = size(rng);
      std::vector<double> scores(n);
      for (auto& s : scores) s = level(rng) / 10.0;
      std::vector<NodeId> candidates(n);
      for (int i = 0; i < n; ++i) candidates[i] = static_cast<NodeId>(i);
      std::unordered_set<NodeId> relevant;
      for (int i = 0; i < n; ++i) {
        if (level(rng) < 4) relevant.insert(static_cast<NodeId>(i));
      }
      if (relevant.empty() || relevant.size() == static_cast<std::size_t>(n)) continue;

      RankedList ranked = make_ranked_list(scores, candidates);
      double brute_ap = 0.0;
      for (std::size_t pos = 0; pos < ranked.ids.size(); ++pos) {
        if (!relevant.contains(ranked.ids[pos])) continue;
        std::size_t hits = 0;
        for (std::size_t j = 0; j <= pos; ++j) {
          if (relevant.contains(ranked.ids[j])) ++hits;
        }
        brute_ap += static_cast<double>(hits) / static_cast<double>(pos + 1);
      }
      brute_ap /= static_cast<double>(relevant.size());
      if (average_precision(ranked, relevant) != brute_ap) ok = false;

      std::vector<double> ps, ns;
      for (int i = 0; i < n; ++i) {
        (relevant.contains(static_cast<NodeId>(i)) ? ps : ns).push_back(scores[i]);
      }
      double brute = 0.0;
      for (double p : ps) {
        for (double q : ns) brute += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
      }
      brute /= static_cast<double>(ps.size() * ns.size());
      if (auc_from_scores(ps, ns) != brute) ok = false;
    }
    report("metric oracles (MAP and AUC vs enumeration)", ok, "");
  }

  json results = {{"failures", failures}};
  write_manifest(args.manifest_path, "selftest", g_argv, json::object(), results);
  return failures == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) g_argv.push_back(argv[i]);

  CLI::App app{"Random-walk relevance scoring with learnable per-node restart"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand("score", "Compute relevance scores for a seed");
  score->add_option("--graph", score_args.graph_path, "Edge list (plain or gzip)")
      ->required();
  score->add_option("--seed", score_args.seed_label, "Seed node label")->required();
  CLI::Option* restart_opt =
      score->add_option("--restart", score_args.restart, "Uniform restart probability");
  CLI::Option* restart_vec_opt = score->add_option(
      "--restart-vector", score_args.restart_vector_path, "Per-node restart TSV");
  restart_opt->excludes(restart_vec_opt);
  restart_vec_opt->excludes(restart_opt);
  score->add_option("--epsilon", score_args.epsilon, "Convergence tolerance");
  score->add_option("--max-iters", score_args.max_iters, "Iteration cap");
  score->add_option("--norm", score_args.norm, "Residual norm: l1, l2, linf");
  score->add_option("--out", score_args.out_path, "Output TSV")->required();
  score->add_option("--label-map", score_args.label_map_path, "Label map TSV path");
  score->add_option("--manifest", score_args.manifest_path, "Manifest JSON path");

  LearnArgs learn_args;
  CLI::App* learn = app.add_subcommand("learn", "Learn a restart vector from supervision");
  learn->add_option("--graph", learn_args.graph_path, "Edge list (plain or gzip)")
      ->required();
  learn->add_option("--seed", learn_args.seed_label, "Query node label")->required();
  learn->add_option("--positives", learn_args.positives_path, "Positive labels, one per line")
      ->required();
  learn->add_option("--negatives", learn_args.negatives_path, "Negative labels, one per line")
      ->required();
  learn->add_option("--b", learn_args.b, "Loss sharpness");
  learn->add_option("--lambda", learn_args.lambda, "Regularization weight");
  learn->add_option("--origin", learn_args.origin, "Constant origin value");
  learn->add_option("--origin-vector", learn_args.origin_vector_path, "Origin TSV");
  learn->add_option("--eta", learn_args.eta, "Learning rate");
  learn->add_option("--max-epochs", learn_args.max_epochs, "Epoch cap");
  learn->add_option("--grad-tol", learn_args.grad_tol, "Gradient stop tolerance");
  learn->add_option("--step-tol", learn_args.step_tol, "Step stop tolerance");
  learn->add_flag("--no-safeguard", learn_args.no_safeguard, "Disable step halving");
  learn->add_option("--variant", learn_args.variant, "sure or sure-fast");
  learn->add_option("--epsilon", learn_args.epsilon, "Forward solve tolerance");
  learn->add_option("--max-iters", learn_args.max_iters, "Forward iteration cap");
  learn->add_option("--solve-tol", learn_args.solve_tol, "Adjoint solve tolerance");
  learn->add_option("--out", learn_args.out_path, "Learned restart TSV")->required();
  learn->add_option("--trace", learn_args.trace_path, "Loss trace CSV path");
  learn->add_option("--label-map", learn_args.label_map_path, "Label map TSV path");
  learn->add_option("--manifest", learn_args.manifest_path, "Manifest JSON path");

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Run a link-prediction experiment");
  evaluate->add_option("--config", eval_args.config_path, "Experiment JSON config")
      ->required();
  evaluate->add_option("--out-dir", eval_args.out_dir, "Report directory");
  evaluate->add_option("--threads", eval_args.threads, "Parallel queries");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Time scoring and learning");
  bench->add_option("--graph", bench_args.graph_path, "Edge list; omit for slope mode");
  bench->add_option("--repeat", bench_args.repeat, "Repetitions, best is kept");
  bench->add_option("--edges", bench_args.edges, "Synthetic edge count in slope mode");
  bench->add_option("--out", bench_args.out_path, "Also write the table here");
  bench->add_option("--manifest", bench_args.manifest_path, "Manifest JSON path");

  SelftestArgs selftest_args;
  CLI::App* selftest = app.add_subcommand("selftest", "Run built-in consistency suites");
  selftest->add_option("--manifest", selftest_args.manifest_path, "Manifest JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (score->parsed()) return run_score(score_args);
    if (learn->parsed()) return run_learn(learn_args);
    if (evaluate->parsed()) return run_evaluate(eval_args);
    if (bench->parsed()) return run_bench(bench_args);
    if (selftest->parsed()) return run_selftest(selftest_args);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
