#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rwer/graph.hpp"
#include "rwer/restart.hpp"

namespace rwer {

// Matrix-free application of I - B^T:
//   (I - B^T) x = x - (I - diag(c)) (A~ x) - (c - 1) x_s
// in O(m) per apply. B is the iteration matrix of the score fixed point.
class AdjointOperator {
 public:
  AdjointOperator(const TransitionMatrix& t, const RestartVector& c, NodeId seed)
      : t_(&t), c_(&c), seed_(seed) {
    if (seed >= t.n) throw UsageError("seed node out of range");
    if (c.size() != t.n) throw DimensionError("restart vector length mismatch");
  }

  NodeId size() const noexcept { return t_->n; }
  NodeId seed() const noexcept { return seed_; }
  const TransitionMatrix& transition() const noexcept { return *t_; }
  const RestartVector& restart() const noexcept { return *c_; }

  void apply(std::span<const double> x, std::span<double> out) const;

 private:
  const TransitionMatrix* t_;
  const RestartVector* c_;
  NodeId seed_;
};

// Forward counterpart (I - B) x = x - A~^T ((1-c) .* x) - ((c-1)^T x) q.
// Used by the adjoint-consistency checks and residual verification.
void apply_system(const TransitionMatrix& t, const RestartVector& c, NodeId seed,
                  std::span<const double> x, std::span<double> out);

enum class SolveBackend { kGmres, kRichardson };

struct SolveConfig {
  double tolerance = 1e-10;  // relative residual target
  std::size_t max_iterations = 100000;  // operator applications
  int gmres_restart = 50;
  SolveBackend backend = SolveBackend::kGmres;
};

// Solves (I - B^T) x = p_tilde to a relative residual <= cfg.tolerance with
// the configured backend. The solution is re-substituted before returning and
// rejected if its residual exceeds 10x the tolerance. p_tilde = 0 returns 0.
std::vector<double> solve_adjoint(const AdjointOperator& op,
                                  const std::vector<double>& p_tilde,
                                  const SolveConfig& cfg = {});

// Plain fixed-point iteration x <- B^T x + p_tilde. Converges because the
// spectral radius of B is < 1 for restart vectors inside the bounds; doubles
// as the fast-variant path and as an independent check on GMRES.
std::vector<double> richardson_adjoint(const AdjointOperator& op,
                                       const std::vector<double>& p_tilde,
                                       const SolveConfig& cfg = {});

}  // namespace rwer
