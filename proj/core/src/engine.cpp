#include "rwer/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rwer {

double vector_norm(std::span<const double> x, ResidualNorm norm) {
  switch (norm) {
    case ResidualNorm::kL1: {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
    case ResidualNorm::kL2: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case ResidualNorm::kLInf: {
      double s = 0.0;
      for (double v : x) s = std::max(s, std::abs(v));
      return s;
    }
  }
  return 0.0;
}

void finalize_scores(ScoreVector& s) {
  double sum = 0.0;
  for (double& v : s.r) {
    if (v < 0.0) {
      if (v < -1e-15) {
        throw NumericalError("score vector has negative entry " + std::to_string(v));
      }
      v = 0.0;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NumericalError("score vector mass " + std::to_string(sum) +
                         " deviates from 1 beyond 1e-9");
  }
}

ScoreVector rwer_power_iteration(const TransitionMatrix& t, const RestartVector& c,
                                 NodeId seed, const IterationConfig& cfg,
                                 const std::vector<double>* warm_start,
                                 std::vector<double>* residual_trace) {
  if (seed >= t.n) throw UsageError("seed node out of range");
  if (c.size() != t.n) throw DimensionError("restart vector length mismatch");
  if (cfg.epsilon <= 0.0 || cfg.max_iterations < 1) {
    throw UsageError("epsilon must be > 0 and max_iterations >= 1");
  }

  const std::vector<double>& cv = c.values();
  std::vector<double> r(t.n, 0.0);
  if (warm_start != nullptr) {
    if (warm_start->size() != t.n) throw DimensionError("warm start length mismatch");
    r = *warm_start;
  } else {
    r[seed] = 1.0;
  }

  std::vector<double> held(t.n);  // (1 - c) .* r
  std::vector<double> next(t.n);

  double delta = 0.0;
  std::size_t iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    double restart_mass = 0.0;
    for (NodeId u = 0; u < t.n; ++u) {
      held[u] = (1.0 - cv[u]) * r[u];
      restart_mass += cv[u] * r[u];
    }
    apply_transposed(t, held, next);
    next[seed] += restart_mass;

    double d = 0.0;
    switch (cfg.norm) {
      case ResidualNorm::kL1:
        for (NodeId u = 0; u < t.n; ++u) d += std::abs(next[u] - r[u]);
        break;
      case ResidualNorm::kL2: {
        for (NodeId u = 0; u < t.n; ++u) {
          double e = next[u] - r[u];
          d += e * e;
        }
        d = std::sqrt(d);
        break;
      }
      case ResidualNorm::kLInf:
        for (NodeId u = 0; u < t.n; ++u) d = std::max(d, std::abs(next[u] - r[u]));
        break;
    }
    r.swap(next);
    delta = d;
    if (residual_trace != nullptr) residual_trace->push_back(delta);
    if (delta < cfg.epsilon) {
      ++iter;
      break;
    }
  }
  if (delta >= cfg.epsilon) {
    throw NonConvergence("power iteration did not converge", cfg.max_iterations, delta);
  }

  ScoreVector s{std::move(r), seed, delta, iter};
  finalize_scores(s);
  return s;
}

ScoreVector rwr_scores(const TransitionMatrix& t, double c_scalar, NodeId seed,
                       const IterationConfig& cfg) {
  return rwer_power_iteration(t, RestartVector::constant(t, c_scalar), seed, cfg);
}

}  // namespace rwer
