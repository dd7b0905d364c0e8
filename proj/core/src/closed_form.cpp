#include "rwer/closed_form.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace rwer {

struct ClosedFormOracle::Impl {
  NodeId n;
  NodeId seed;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_transposed;
};

namespace {

Eigen::MatrixXd build_system(const TransitionMatrix& t, const RestartVector& c,
                             NodeId seed) {
  const NodeId n = t.n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  // (I - B)_{ij} = delta_ij - (1 - c_j) A~(j, i) + (1 - c_j) [i == seed]
  for (NodeId j = 0; j < n; ++j) {
    double hold = 1.0 - c[j];
    if (hold == 0.0) continue;
    for (std::size_t k = t.row_ptr[j]; k < t.row_ptr[j + 1]; ++k) {
      a(t.col[k], j) -= hold * t.value[k];
    }
    a(seed, j) += hold;
  }
  return a;
}

void check_invertible(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, NodeId n) {
  double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > n * 1e-14)) {
    throw SingularMatrix("dense system is numerically singular (pivot " +
                         std::to_string(min_pivot) + ")");
  }
}

}  // namespace

ClosedFormOracle::ClosedFormOracle(const TransitionMatrix& t, const RestartVector& c,
                                   NodeId seed, std::size_t dense_limit) {
  if (t.n > dense_limit) {
    throw DenseLimitExceeded("graph has " + std::to_string(t.n) +
                             " nodes, dense limit is " + std::to_string(dense_limit));
  }
  if (seed >= t.n) throw UsageError("seed node out of range");
  if (c.size() != t.n) throw DimensionError("restart vector length mismatch");

  Eigen::MatrixXd a = build_system(t, c, seed);
  impl_ = std::make_unique<Impl>();
  impl_->n = t.n;
  impl_->seed = seed;
  impl_->lu.compute(a);
  check_invertible(impl_->lu, t.n);
  impl_->lu_transposed.compute(a.transpose());
  check_invertible(impl_->lu_transposed, t.n);
}

ClosedFormOracle::~ClosedFormOracle() = default;
ClosedFormOracle::ClosedFormOracle(ClosedFormOracle&&) noexcept = default;
ClosedFormOracle& ClosedFormOracle::operator=(ClosedFormOracle&&) noexcept = default;

NodeId ClosedFormOracle::size() const noexcept { return impl_->n; }

std::vector<double> ClosedFormOracle::solve(const std::vector<double>& rhs) const {
  if (rhs.size() != impl_->n) throw DimensionError("rhs length mismatch");
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), impl_->n);
  Eigen::VectorXd x = impl_->lu.solve(b);
  return std::vector<double>(x.data(), x.data() + impl_->n);
}

std::vector<double> ClosedFormOracle::solve_adjoint(const std::vector<double>& rhs) const {
  if (rhs.size() != impl_->n) throw DimensionError("rhs length mismatch");
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), impl_->n);
  Eigen::VectorXd x = impl_->lu_transposed.solve(b);
  return std::vector<double>(x.data(), x.data() + impl_->n);
}

std::vector<double> ClosedFormOracle::score_column() const {
  std::vector<double> q(impl_->n, 0.0);
  q[impl_->seed] = 1.0;
  return solve(q);
}

std::vector<double> ClosedFormOracle::inverse_row(NodeId x) const {
  if (x >= impl_->n) throw UsageError("row index out of range");
  std::vector<double> e(impl_->n, 0.0);
  e[x] = 1.0;
  return solve_adjoint(e);
}

ScoreVector rwer_closed_form(const TransitionMatrix& t, const RestartVector& c,
                             NodeId seed, std::size_t dense_limit) {
  ClosedFormOracle oracle(t, c, seed, dense_limit);
  std::vector<double> r = oracle.score_column();

  // Residual of the fixed-point equation, for the record.
  const std::vector<double>& cv = c.values();
  std::vector<double> held(t.n);
  double restart_mass = 0.0;
  for (NodeId u = 0; u < t.n; ++u) {
    held[u] = (1.0 - cv[u]) * r[u];
    restart_mass += cv[u] * r[u];
  }
  std::vector<double> next = apply_transposed(t, held);
  next[seed] += restart_mass;
  double residual = 0.0;
  for (NodeId u = 0; u < t.n; ++u) residual += std::abs(next[u] - r[u]);

  ScoreVector s{std::move(r), seed, residual, 0};
  finalize_scores(s);
  return s;
}

}  // namespace rwer
