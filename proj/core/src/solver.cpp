#include "rwer/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rwer {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double verified_residual(const AdjointOperator& op, const std::vector<double>& x,
                         const std::vector<double>& rhs) {
  std::vector<double> ax(x.size());
  op.apply(x, ax);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = rhs[i] - ax[i];
    s += e * e;
  }
  return std::sqrt(s);
}

std::vector<double> gmres_adjoint(const AdjointOperator& op,
                                  const std::vector<double>& rhs,
                                  const SolveConfig& cfg) {
  const std::size_t n = op.size();
  const double bnorm = norm2(rhs);
  std::vector<double> x(n, 0.0);
  if (bnorm == 0.0) return x;

  const double target = cfg.tolerance * bnorm;
  const std::size_t m = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(cfg.gmres_restart), n));

  std::vector<std::vector<double>> v(m + 1, std::vector<double>(n));
  std::vector<double> h((m + 1) * m, 0.0);  // Hessenberg, row-major (m+1) x m
  std::vector<double> cs(m), sn(m), g(m + 1), y(m);
  std::vector<double> w(n);

  std::size_t applies = 0;
  double res = bnorm;

  while (applies < cfg.max_iterations) {
    // Residual of the current x starts the next Krylov cycle.
    op.apply(x, w);
    ++applies;
    for (std::size_t i = 0; i < n; ++i) v[0][i] = rhs[i] - w[i];
    double beta = norm2(v[0]);
    res = beta;
    if (res <= target) break;
    for (std::size_t i = 0; i < n; ++i) v[0][i] /= beta;

    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    std::size_t j = 0;
    bool breakdown = false;
    for (; j < m && applies < cfg.max_iterations; ++j) {
      op.apply(v[j], w);
      ++applies;
      // Modified Gram-Schmidt.
      for (std::size_t i = 0; i <= j; ++i) {
        double hij = dot(w, v[i]);
        h[i * m + j] = hij;
        for (std::size_t k = 0; k < n; ++k) w[k] -= hij * v[i][k];
      }
      double hnext = norm2(w);
      h[(j + 1) * m + j] = hnext;
      if (hnext > 1e-300) {
        for (std::size_t k = 0; k < n; ++k) v[j + 1][k] = w[k] / hnext;
      } else {
        breakdown = true;  // exact solution lives in the current subspace
      }

      for (std::size_t i = 0; i < j; ++i) {
        double t1 = h[i * m + j];
        double t2 = h[(i + 1) * m + j];
        h[i * m + j] = cs[i] * t1 + sn[i] * t2;
        h[(i + 1) * m + j] = -sn[i] * t1 + cs[i] * t2;
      }
      double hjj = h[j * m + j];
      double denom = std::hypot(hjj, hnext);
      cs[j] = hjj / denom;
      sn[j] = hnext / denom;
      h[j * m + j] = denom;
      h[(j + 1) * m + j] = 0.0;

      double gj = g[j];
      g[j] = cs[j] * gj;
      g[j + 1] = -sn[j] * gj;

      res = std::abs(g[j + 1]);
      if (res <= target || breakdown) {
        ++j;
        break;
      }
    }

    // Back substitution on the rotated Hessenberg system.
    for (std::size_t col = j; col-- > 0;) {
      double s = g[col];
      for (std::size_t k = col + 1; k < j; ++k) s -= h[col * m + k] * y[k];
      y[col] = s / h[col * m + col];
    }
    for (std::size_t k = 0; k < j; ++k) {
      for (std::size_t i = 0; i < n; ++i) x[i] += y[k] * v[k][i];
    }

    if (res <= target || breakdown) break;
  }

  double final_res = verified_residual(op, x, rhs);
  if (final_res > target) {
    throw NonConvergence("GMRES did not reach the residual target", applies,
                         final_res / bnorm);
  }
  return x;
}

}  // namespace

void AdjointOperator::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != t_->n || out.size() != t_->n) {
    throw DimensionError("adjoint operator: vector length mismatch");
  }
  apply_forward(*t_, x, out);
  const std::vector<double>& cv = c_->values();
  double xs = x[seed_];
  for (NodeId u = 0; u < t_->n; ++u) {
    out[u] = x[u] - (1.0 - cv[u]) * out[u] - (cv[u] - 1.0) * xs;
  }
}

void apply_system(const TransitionMatrix& t, const RestartVector& c, NodeId seed,
                  std::span<const double> x, std::span<double> out) {
  if (x.size() != t.n || out.size() != t.n) {
    throw DimensionError("forward system: vector length mismatch");
  }
  const std::vector<double>& cv = c.values();
  std::vector<double> held(t.n);
  double mass = 0.0;
  for (NodeId u = 0; u < t.n; ++u) {
    held[u] = (1.0 - cv[u]) * x[u];
    mass += (cv[u] - 1.0) * x[u];
  }
  apply_transposed(t, held, out);
  for (NodeId u = 0; u < t.n; ++u) out[u] = x[u] - out[u];
  out[seed] -= mass;
}

std::vector<double> richardson_adjoint(const AdjointOperator& op,
                                       const std::vector<double>& p_tilde,
                                       const SolveConfig& cfg) {
  const std::size_t n = op.size();
  if (p_tilde.size() != n) throw DimensionError("rhs length mismatch");
  const double bnorm = norm2(p_tilde);
  std::vector<double> x(n, 0.0);
  if (bnorm == 0.0) return x;
  const double target = cfg.tolerance * bnorm;

  // x_{k+1} = B^T x_k + p; the step size ||x_{k+1} - x_k|| is exactly the
  // residual of x_k, so x_k is returned once it is small enough.
  std::vector<double> next(n);
  double res = bnorm;
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    op.apply(x, next);  // next = (I - B^T) x
    res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double step = p_tilde[i] - next[i];  // x_{k+1} - x_k
      res += step * step;
      next[i] = x[i] + step;
    }
    res = std::sqrt(res);
    if (res <= target) return x;
    x.swap(next);
  }
  throw NonConvergence("Richardson iteration did not reach the residual target",
                       cfg.max_iterations, res / bnorm);
}

std::vector<double> solve_adjoint(const AdjointOperator& op,
                                  const std::vector<double>& p_tilde,
                                  const SolveConfig& cfg) {
  if (p_tilde.size() != op.size()) throw DimensionError("rhs length mismatch");
  if (cfg.tolerance <= 0.0 || cfg.gmres_restart < 1) {
    throw UsageError("solve tolerance must be > 0 and gmres_restart >= 1");
  }

  std::vector<double> x = cfg.backend == SolveBackend::kRichardson
                              ? richardson_adjoint(op, p_tilde, cfg)
                              : gmres_adjoint(op, p_tilde, cfg);

  double bnorm = norm2(p_tilde);
  if (bnorm > 0.0) {
    double res = verified_residual(op, x, p_tilde);
    if (res > 10.0 * cfg.tolerance * bnorm) {
      throw NumericalError("adjoint solution failed re-substitution check");
    }
  }
  return x;
}

}  // namespace rwer
