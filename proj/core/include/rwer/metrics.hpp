#pragma once

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "rwer/engine.hpp"
#include "rwer/graph.hpp"

namespace rwer {

// Candidates ordered by descending score, ties broken by ascending node id,
// so rankings are deterministic under tied scores.
struct RankedList {
  std::vector<NodeId> ids;
  std::vector<double> scores;  // aligned with ids
};

RankedList make_ranked_list(std::span<const double> scores,
                            const std::vector<NodeId>& candidates);

// Mean over relevant items of the precision at each relevant item's rank.
// Relevant items missing from the list contribute precision 0.
double average_precision(const RankedList& ranked,
                         const std::unordered_set<NodeId>& relevant);

// Probability that a random positive outranks a random negative; tied scores
// count one half.
double auc_from_scores(const std::vector<double>& positive_scores,
                       const std::vector<double>& negative_scores);

double auc(std::span<const double> scores, const std::vector<NodeId>& positives,
           const std::vector<NodeId>& negatives);

// |top-k intersect relevant| / k; slots past the end of the list count as
// non-relevant.
double precision_at_k(const RankedList& ranked,
                      const std::unordered_set<NodeId>& relevant, std::size_t k);

enum class BaselineMethod { kCommonNeighbors, kAdamicAdar, kJaccard, kRwr };

// Neighborhood overlap scores on the undirected view of the graph
// (self-loops excluded from neighborhoods); kRwr delegates to rwr_scores.
// Adamic-Adar skips shared neighbors of degree <= 1 (log 1 = 0).
std::vector<double> baseline_scores(const SparseGraph& g, NodeId seed,
                                    BaselineMethod method,
                                    double rwr_restart = 0.2,
                                    const IterationConfig& cfg = {});

}  // namespace rwer
