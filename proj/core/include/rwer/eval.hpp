#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rwer/graph.hpp"
#include "rwer/learner.hpp"
#include "rwer/metrics.hpp"

namespace rwer {

struct SplitConfig {
  double holdout_fraction = 0.3;
  std::size_t negatives_per_query = 50;        // evaluation negatives
  std::size_t train_negatives_per_query = 20;  // supervision negatives, disjoint
  std::uint64_t rng_seed = 1;
  std::vector<std::string> query_labels;  // explicit queries; empty -> sample
  std::size_t num_queries = 10;           // sample size when query_labels empty
};

struct QuerySplit {
  NodeId query;
  std::vector<NodeId> heldout;          // removed out-edges, the targets
  std::vector<NodeId> eval_negatives;   // non-edges in the full graph
  std::vector<NodeId> train_positives;  // out-neighbors kept in the train graph
  std::vector<NodeId> train_negatives;  // supervision negatives
};

struct EvalSplit {
  SparseGraph train_graph;  // same node set and labels, held-out edges removed
  std::vector<QuerySplit> queries;
  std::vector<std::string> skipped;  // queries with too few edges or negatives
  std::uint64_t rng_seed = 0;
};

// Per query: a fraction of its out-edges becomes held-out positives (at least
// one held out, at least one kept); evaluation and supervision negatives are
// sampled uniformly, without overlap, from its full-graph non-neighbors.
// Deterministic under cfg.rng_seed.
EvalSplit make_link_prediction_split(const SparseGraph& g, const SplitConfig& cfg);

struct ExperimentConfig {
  std::string graph_path;
  SplitConfig split;
  std::vector<std::string> methods;  // cn, aa, jc, rwr, sure, sure_fast
  double rwr_restart = 0.2;
  std::size_t precision_k = 20;
  LearnConfig learn;
  int threads = 1;
};

// JSON config file; unknown keys are rejected.
ExperimentConfig load_experiment_config(const std::string& path);

// Resolved configuration as a JSON string, for run manifests.
std::string experiment_config_json(const ExperimentConfig& cfg);

struct QueryResult {
  std::string method;
  NodeId query;
  double ap;
  double auc;
  double precision;
};

struct MethodRow {
  std::string method;
  double map;
  double auc;
  double precision;
};

struct ExperimentReport {
  std::vector<MethodRow> table;      // per method, averaged over queries
  std::vector<QueryResult> per_query;
  std::vector<std::string> skipped_queries;
  std::uint64_t rng_seed = 0;
};

// End to end: split, learn per query where requested, score baselines, rank
// candidates (all nodes except the seed and its train-time out-neighbors),
// aggregate MAP / AUC / Precision@k per method. Queries run in parallel when
// cfg.threads > 1; aggregation order is fixed.
ExperimentReport run_experiment(const SparseGraph& g, const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);  // loads graph_path

void write_metrics_tsv(const ExperimentReport& report, std::ostream& out);

}  // namespace rwer
