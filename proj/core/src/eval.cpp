#include "rwer/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <thread>
#include <unordered_set>

#include <json.hpp>

namespace rwer {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<NodeId> sample_without_replacement(std::vector<NodeId> pool,
                                               std::size_t count,
                                               std::mt19937_64& rng) {
  count = std::min(count, pool.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

EvalSplit make_link_prediction_split(const SparseGraph& g, const SplitConfig& cfg) {
  if (!(cfg.holdout_fraction > 0.0 && cfg.holdout_fraction < 1.0)) {
    throw UsageError("holdout_fraction must be in (0, 1)");
  }
  if (cfg.negatives_per_query < 1 || cfg.train_negatives_per_query < 1) {
    throw UsageError("negative sample sizes must be >= 1");
  }

  EvalSplit split;
  split.rng_seed = cfg.rng_seed;

  std::vector<NodeId> queries;
  if (!cfg.query_labels.empty()) {
    for (const auto& label : cfg.query_labels) queries.push_back(g.id_of(label));
  } else {
    std::vector<NodeId> eligible;
    for (NodeId u = 0; u < g.n; ++u) {
      if (g.row_ptr[u + 1] - g.row_ptr[u] >= 2) eligible.push_back(u);
    }
    std::mt19937_64 rng(mix_seed(cfg.rng_seed, 0));
    queries = sample_without_replacement(std::move(eligible), cfg.num_queries, rng);
  }
  std::sort(queries.begin(), queries.end());
  queries.erase(std::unique(queries.begin(), queries.end()), queries.end());

  std::unordered_set<std::uint64_t> removed;  // (src << 32) | dst
  for (NodeId s : queries) {
    std::vector<NodeId> out;
    for (std::size_t k = g.row_ptr[s]; k < g.row_ptr[s + 1]; ++k) {
      out.push_back(g.col[k]);
    }
    if (out.size() < 2) {
      split.skipped.push_back(g.labels[s]);
      continue;
    }

    std::mt19937_64 rng(mix_seed(cfg.rng_seed, s + 1));
    std::size_t want = static_cast<std::size_t>(
        std::llround(cfg.holdout_fraction * static_cast<double>(out.size())));
    want = std::clamp<std::size_t>(want, 1, out.size() - 1);
    std::vector<NodeId> heldout = sample_without_replacement(out, want, rng);

    std::unordered_set<NodeId> heldout_set(heldout.begin(), heldout.end());
    std::vector<NodeId> kept;
    for (NodeId v : out) {
      if (!heldout_set.contains(v)) kept.push_back(v);
    }

    std::unordered_set<NodeId> neighbors(out.begin(), out.end());
    std::vector<NodeId> pool;
    for (NodeId u = 0; u < g.n; ++u) {
      if (u != s && !neighbors.contains(u)) pool.push_back(u);
    }
    std::vector<NodeId> eval_neg =
        sample_without_replacement(pool, cfg.negatives_per_query, rng);
    std::unordered_set<NodeId> eval_set(eval_neg.begin(), eval_neg.end());
    std::vector<NodeId> train_pool;
    for (NodeId u : pool) {
      if (!eval_set.contains(u)) train_pool.push_back(u);
    }
    std::vector<NodeId> train_neg = sample_without_replacement(
        std::move(train_pool), cfg.train_negatives_per_query, rng);
    if (eval_neg.empty() || train_neg.empty()) {
      split.skipped.push_back(g.labels[s]);
      continue;
    }

    for (NodeId v : heldout) {
      removed.insert((static_cast<std::uint64_t>(s) << 32) | v);
    }
    split.queries.push_back(
        {s, std::move(heldout), std::move(eval_neg), std::move(kept), std::move(train_neg)});
  }

  std::vector<EdgeTriple> train_edges;
  train_edges.reserve(g.m);
  for (NodeId u = 0; u < g.n; ++u) {
    for (std::size_t k = g.row_ptr[u]; k < g.row_ptr[u + 1]; ++k) {
      std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | g.col[k];
      if (!removed.contains(key)) train_edges.push_back({u, g.col[k], g.weight[k]});
    }
  }
  split.train_graph = build_graph(g.n, std::move(train_edges));
  split.train_graph.labels = g.labels;
  split.train_graph.label_ids = g.label_ids;
  return split;
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("unknown key '" + key + "' in " + where);
    }
  }
}

LearnConfig learn_config_from_json(const json& obj) {
  LearnConfig learn;
  reject_unknown_keys(obj,
                      {"b", "lambda", "origin", "eta", "max_epochs", "grad_tol",
                       "step_tol", "safeguard", "variant", "epsilon",
                       "max_iterations", "solve_tolerance"},
                      "learn");
  learn.b = obj.value("b", learn.b);
  learn.lambda = obj.value("lambda", learn.lambda);
  learn.origin_value = obj.value("origin", learn.origin_value);
  learn.eta = obj.value("eta", learn.eta);
  learn.max_epochs = obj.value("max_epochs", learn.max_epochs);
  learn.grad_tol = obj.value("grad_tol", learn.grad_tol);
  learn.step_tol = obj.value("step_tol", learn.step_tol);
  learn.safeguard = obj.value("safeguard", learn.safeguard);
  learn.iteration.epsilon = obj.value("epsilon", learn.iteration.epsilon);
  learn.iteration.max_iterations =
      obj.value("max_iterations", learn.iteration.max_iterations);
  learn.solve.tolerance = obj.value("solve_tolerance", learn.solve.tolerance);
  if (obj.contains("variant")) {
    std::string v = obj["variant"];
    if (v == "sure") {
      learn.variant = LearnVariant::kSure;
    } else if (v == "sure-fast" || v == "sure_fast") {
      learn.variant = LearnVariant::kSureFast;
    } else {
      throw UsageError("unknown variant '" + v + "'");
    }
  }
  return learn;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  json obj;
  try {
    in >> obj;
  } catch (const json::parse_error& e) {
    throw IoError("config '" + path + "' is not valid JSON: " + e.what());
  }

  reject_unknown_keys(obj,
                      {"graph", "rng_seed", "split", "methods", "rwr_restart",
                       "precision_k", "learn", "threads"},
                      "config");

  ExperimentConfig cfg;
  if (!obj.contains("graph")) throw UsageError("config requires a 'graph' path");
  cfg.graph_path = obj["graph"];
  cfg.split.rng_seed = obj.value("rng_seed", cfg.split.rng_seed);
  cfg.rwr_restart = obj.value("rwr_restart", cfg.rwr_restart);
  cfg.precision_k = obj.value("precision_k", cfg.precision_k);
  cfg.threads = obj.value("threads", cfg.threads);
  if (obj.contains("methods")) {
    cfg.methods = obj["methods"].get<std::vector<std::string>>();
  } else {
    cfg.methods = {"cn", "aa", "jc", "rwr", "sure"};
  }
  if (obj.contains("split")) {
    const json& s = obj["split"];
    reject_unknown_keys(s,
                        {"holdout_fraction", "negatives_per_query",
                         "train_negatives_per_query", "num_queries", "queries"},
                        "split");
    cfg.split.holdout_fraction = s.value("holdout_fraction", cfg.split.holdout_fraction);
    cfg.split.negatives_per_query =
        s.value("negatives_per_query", cfg.split.negatives_per_query);
    cfg.split.train_negatives_per_query =
        s.value("train_negatives_per_query", cfg.split.train_negatives_per_query);
    cfg.split.num_queries = s.value("num_queries", cfg.split.num_queries);
    if (s.contains("queries")) {
      cfg.split.query_labels = s["queries"].get<std::vector<std::string>>();
    }
  }
  if (obj.contains("learn")) cfg.learn = learn_config_from_json(obj["learn"]);
  return cfg;
}

std::string experiment_config_json(const ExperimentConfig& cfg) {
  json learn = {
      {"b", cfg.learn.b},
      {"lambda", cfg.learn.lambda},
      {"origin", cfg.learn.origin_value},
      {"eta", cfg.learn.eta},
      {"max_epochs", cfg.learn.max_epochs},
      {"grad_tol", cfg.learn.grad_tol},
      {"step_tol", cfg.learn.step_tol},
      {"safeguard", cfg.learn.safeguard},
      {"epsilon", cfg.learn.iteration.epsilon},
      {"max_iterations", cfg.learn.iteration.max_iterations},
      {"solve_tolerance", cfg.learn.solve.tolerance},
  };
  json split = {
      {"holdout_fraction", cfg.split.holdout_fraction},
      {"negatives_per_query", cfg.split.negatives_per_query},
      {"train_negatives_per_query", cfg.split.train_negatives_per_query},
      {"num_queries", cfg.split.num_queries},
      {"queries", cfg.split.query_labels},
  };
  json obj = {
      {"graph", cfg.graph_path},
      {"rng_seed", cfg.split.rng_seed},
      {"split", split},
      {"methods", cfg.methods},
      {"rwr_restart", cfg.rwr_restart},
      {"precision_k", cfg.precision_k},
      {"learn", learn},
      {"threads", cfg.threads},
  };
  return obj.dump(2);
}

namespace {

std::vector<double> method_scores(const std::string& method, const SparseGraph& train,
                                  const TransitionMatrix& t, const QuerySplit& q,
                                  const ExperimentConfig& cfg) {
  if (method == "cn") {
    return baseline_scores(train, q.query, BaselineMethod::kCommonNeighbors);
  }
  if (method == "aa") {
    return baseline_scores(train, q.query, BaselineMethod::kAdamicAdar);
  }
  if (method == "jc") {
    return baseline_scores(train, q.query, BaselineMethod::kJaccard);
  }
  if (method == "rwr") {
    return rwr_scores(t, cfg.rwr_restart, q.query, cfg.learn.iteration).r;
  }
  if (method == "sure" || method == "sure_fast" || method == "sure-fast") {
    LearnConfig learn = cfg.learn;
    learn.variant = method == "sure" ? LearnVariant::kSure : LearnVariant::kSureFast;
    SupervisionInstance inst{q.query, q.train_positives, q.train_negatives};
    LearnResult res = sure_learn(t, inst, learn);
    RestartVector c = RestartVector::from_values(t, res.restart);
    return rwer_power_iteration(t, c, q.query, learn.iteration).r;
  }
  throw UsageError("unknown method '" + method + "'");
}

}  // namespace

ExperimentReport run_experiment(const SparseGraph& g, const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) throw UsageError("no methods configured");
  EvalSplit split = make_link_prediction_split(g, cfg.split);
  if (split.queries.empty()) throw UsageError("split produced no usable queries");

  TransitionMatrix t = row_normalize(split.train_graph);

  struct PerQuery {
    std::vector<QueryResult> rows;
  };
  std::vector<PerQuery> results(split.queries.size());

  auto evaluate_query = [&](std::size_t qi) {
    const QuerySplit& q = split.queries[qi];
    std::unordered_set<NodeId> reachable_exclusions(q.train_positives.begin(),
                                                    q.train_positives.end());
    reachable_exclusions.insert(q.query);
    std::vector<NodeId> candidates;
    for (NodeId u = 0; u < g.n; ++u) {
      if (!reachable_exclusions.contains(u)) candidates.push_back(u);
    }
    std::unordered_set<NodeId> relevant(q.heldout.begin(), q.heldout.end());

    for (const std::string& method : cfg.methods) {
      std::vector<double> scores = method_scores(method, split.train_graph, t, q, cfg);
      RankedList ranked = make_ranked_list(scores, candidates);
      QueryResult row;
      row.method = method;
      row.query = q.query;
      row.ap = average_precision(ranked, relevant);
      row.auc = auc(scores, q.heldout, q.eval_negatives);
      row.precision = precision_at_k(ranked, relevant, cfg.precision_k);
      results[qi].rows.push_back(std::move(row));
    }
  };

  int threads = std::max(1, cfg.threads);
  if (threads == 1 || split.queries.size() == 1) {
    for (std::size_t qi = 0; qi < split.queries.size(); ++qi) evaluate_query(qi);
  } else {
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    std::size_t count = split.queries.size();
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&]() {
        for (std::size_t qi = next.fetch_add(1); qi < count; qi = next.fetch_add(1)) {
          evaluate_query(qi);
        }
      });
    }
    for (auto& th : workers) th.join();
  }

  ExperimentReport report;
  report.rng_seed = cfg.split.rng_seed;
  report.skipped_queries = split.skipped;
  for (auto& pq : results) {
    for (auto& row : pq.rows) report.per_query.push_back(std::move(row));
  }
  for (const std::string& method : cfg.methods) {
    MethodRow row{method, 0.0, 0.0, 0.0};
    std::size_t count = 0;
    for (const QueryResult& qr : report.per_query) {
      if (qr.method != method) continue;
      row.map += qr.ap;
      row.auc += qr.auc;
      row.precision += qr.precision;
      ++count;
    }
    row.map /= static_cast<double>(count);
    row.auc /= static_cast<double>(count);
    row.precision /= static_cast<double>(count);
    report.table.push_back(std::move(row));
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  SparseGraph g = load_edge_list_file(cfg.graph_path);
  return run_experiment(g, cfg);
}

void write_metrics_tsv(const ExperimentReport& report, std::ostream& out) {
  out << "method\tmap\tauc\tprecision_at_k\n";
  char buf[64];
  for (const MethodRow& row : report.table) {
    out << row.method;
    std::snprintf(buf, sizeof(buf), "%.6f", row.map);
    out << '\t' << buf;
    std::snprintf(buf, sizeof(buf), "%.6f", row.auc);
    out << '\t' << buf;
    std::snprintf(buf, sizeof(buf), "%.6f", row.precision);
    out << '\t' << buf << '\n';
  }
}

}  // namespace rwer
