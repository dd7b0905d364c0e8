#include "rwer/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace rwer {

RankedList make_ranked_list(std::span<const double> scores,
                            const std::vector<NodeId>& candidates) {
  RankedList out;
  out.ids = candidates;
  for (NodeId u : candidates) {
    if (u >= scores.size()) throw UsageError("candidate id out of range");
  }
  std::sort(out.ids.begin(), out.ids.end(), [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  out.scores.reserve(out.ids.size());
  for (NodeId u : out.ids) out.scores.push_back(scores[u]);
  return out;
}

double average_precision(const RankedList& ranked,
                         const std::unordered_set<NodeId>& relevant) {
  if (relevant.empty()) throw UsageError("average precision needs a non-empty relevant set");
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t rank = 0; rank < ranked.ids.size(); ++rank) {
    if (relevant.contains(ranked.ids[rank])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

double auc_from_scores(const std::vector<double>& positive_scores,
                       const std::vector<double>& negative_scores) {
  if (positive_scores.empty() || negative_scores.empty()) {
    throw UsageError("AUC needs non-empty positive and negative sets");
  }
  std::vector<double> pos = positive_scores;
  std::vector<double> neg = negative_scores;
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  // Sweep negatives in ascending order; for each negative, count positives
  // strictly below (losses for the positive side) and ties.
  double wins = 0.0;
  std::size_t below = 0;  // positives < current negative
  std::size_t tied_end = 0;
  for (double nv : neg) {
    while (below < pos.size() && pos[below] < nv) ++below;
    if (tied_end < below) tied_end = below;
    while (tied_end < pos.size() && pos[tied_end] == nv) ++tied_end;
    double ties = static_cast<double>(tied_end - below);
    wins += static_cast<double>(pos.size() - tied_end) + 0.5 * ties;
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

double auc(std::span<const double> scores, const std::vector<NodeId>& positives,
           const std::vector<NodeId>& negatives) {
  std::vector<double> pos, neg;
  pos.reserve(positives.size());
  neg.reserve(negatives.size());
  for (NodeId u : positives) {
    if (u >= scores.size()) throw UsageError("positive id out of range");
    pos.push_back(scores[u]);
  }
  for (NodeId u : negatives) {
    if (u >= scores.size()) throw UsageError("negative id out of range");
    neg.push_back(scores[u]);
  }
  return auc_from_scores(pos, neg);
}

double precision_at_k(const RankedList& ranked,
                      const std::unordered_set<NodeId>& relevant, std::size_t k) {
  if (k < 1) throw UsageError("k must be >= 1");
  std::size_t hits = 0;
  std::size_t upto = std::min(k, ranked.ids.size());
  for (std::size_t i = 0; i < upto; ++i) {
    if (relevant.contains(ranked.ids[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

namespace {

// Sorted undirected neighbor lists, self excluded.
std::vector<std::vector<NodeId>> undirected_neighbors(const SparseGraph& g) {
  std::vector<std::vector<NodeId>> nb(g.n);
  for (NodeId u = 0; u < g.n; ++u) {
    for (std::size_t k = g.row_ptr[u]; k < g.row_ptr[u + 1]; ++k) {
      NodeId v = g.col[k];
      if (u == v) continue;
      nb[u].push_back(v);
      nb[v].push_back(u);
    }
  }
  for (auto& list : nb) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return nb;
}

}  // namespace

std::vector<double> baseline_scores(const SparseGraph& g, NodeId seed,
                                    BaselineMethod method, double rwr_restart,
                                    const IterationConfig& cfg) {
  if (seed >= g.n) throw UsageError("seed node out of range");
  if (method == BaselineMethod::kRwr) {
    TransitionMatrix t = row_normalize(g);
    return rwr_scores(t, rwr_restart, seed, cfg).r;
  }

  auto nb = undirected_neighbors(g);
  std::vector<std::uint8_t> in_seed_nb(g.n, 0);
  for (NodeId v : nb[seed]) in_seed_nb[v] = 1;

  std::vector<double> scores(g.n, 0.0);
  for (NodeId u = 0; u < g.n; ++u) {
    if (u == seed) continue;
    double common = 0.0;
    double aa = 0.0;
    for (NodeId z : nb[u]) {
      if (!in_seed_nb[z]) continue;
      common += 1.0;
      if (nb[z].size() > 1) aa += 1.0 / std::log(static_cast<double>(nb[z].size()));
    }
    switch (method) {
      case BaselineMethod::kCommonNeighbors:
        scores[u] = common;
        break;
      case BaselineMethod::kAdamicAdar:
        scores[u] = aa;
        break;
      case BaselineMethod::kJaccard: {
        double uni = static_cast<double>(nb[seed].size() + nb[u].size()) - common;
        scores[u] = uni > 0.0 ? common / uni : 0.0;
        break;
      }
      case BaselineMethod::kRwr:
        break;  // handled above
    }
  }
  return scores;
}

}  // namespace rwer
