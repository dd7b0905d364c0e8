#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "rwer/engine.hpp"

namespace rwer {

inline constexpr std::size_t kDefaultDenseLimit = 2000;

// Dense LU factorization of I - B, where
//   B = A~^T (I - diag(c)) + q (c - 1)^T
// and q is the seed indicator. The score vector is the column M(:, seed) of
// M = (I - B)^{-1}. Exists for small-graph exactness and as the oracle the
// iterative paths are checked against; refuses graphs above dense_limit.
class ClosedFormOracle {
 public:
  ClosedFormOracle(const TransitionMatrix& t, const RestartVector& c, NodeId seed,
                   std::size_t dense_limit = kDefaultDenseLimit);
  ~ClosedFormOracle();
  ClosedFormOracle(ClosedFormOracle&&) noexcept;
  ClosedFormOracle& operator=(ClosedFormOracle&&) noexcept;

  NodeId size() const noexcept;

  // Solves (I - B) x = rhs.
  std::vector<double> solve(const std::vector<double>& rhs) const;

  // Solves (I - B)^T x = rhs, i.e. computes M^T rhs.
  std::vector<double> solve_adjoint(const std::vector<double>& rhs) const;

  // M(:, s) — the score vector before normalization checks.
  std::vector<double> score_column() const;

  // M(x, :) as a vector, via an adjoint solve with e_x.
  std::vector<double> inverse_row(NodeId x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// r = (I - B)^{-1} q by dense LU with partial pivoting. The reported residual
// is the L1 error of the fixed-point equation evaluated at the solution.
ScoreVector rwer_closed_form(const TransitionMatrix& t, const RestartVector& c,
                             NodeId seed, std::size_t dense_limit = kDefaultDenseLimit);

}  // namespace rwer
