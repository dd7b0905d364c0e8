#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rwer/graph.hpp"
#include "rwer/restart.hpp"

namespace rwer {

enum class ResidualNorm { kL1, kL2, kLInf };

struct IterationConfig {
  double epsilon = 1e-9;
  std::size_t max_iterations = 10000;
  ResidualNorm norm = ResidualNorm::kL1;
};

// Relevance scores w.r.t. a seed node. r is a probability vector: r >= 0 and
// sum(r) = 1 within 1e-9, checked on every return. Tiny negatives in
// [-1e-15, 0) are clamped to 0; anything below that is a solver bug and
// throws instead of being papered over.
struct ScoreVector {
  std::vector<double> r;
  NodeId seed = 0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Fixed point of r = A~^T (I - diag(c)) r + (c^T r) q, computed by power
// iteration starting from r = q (the indicator of the seed). Throws
// NonConvergence when max_iterations is exhausted.
//
// warm_start, when given, replaces the q start; it must sum to 1. Used to
// carry the previous epoch's scores across learner iterations.
// residual_trace, when given, receives the per-iteration residuals.
ScoreVector rwer_power_iteration(const TransitionMatrix& t, const RestartVector& c,
                                 NodeId seed, const IterationConfig& cfg = {},
                                 const std::vector<double>* warm_start = nullptr,
                                 std::vector<double>* residual_trace = nullptr);

// RWR as the uniform-restart special case: identical to rwer_power_iteration
// with the constant vector c = c_scalar (dangling nodes still pinned to 1).
ScoreVector rwr_scores(const TransitionMatrix& t, double c_scalar, NodeId seed,
                       const IterationConfig& cfg = {});

// Validates the probability-vector invariants and clamps [-1e-15, 0) to 0.
// Shared by the iterative and closed-form paths.
void finalize_scores(ScoreVector& s);

double vector_norm(std::span<const double> x, ResidualNorm norm);

}  // namespace rwer
