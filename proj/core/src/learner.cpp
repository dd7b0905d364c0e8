#include "rwer/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace rwer {

void SupervisionInstance::validate(NodeId n) const {
  if (seed >= n) throw UsageError("seed node out of range");
  if (positives.empty() || negatives.empty()) {
    throw UsageError("positive and negative sets must be non-empty");
  }
  std::unordered_set<NodeId> pos(positives.begin(), positives.end());
  for (NodeId x : positives) {
    if (x >= n) throw UsageError("positive node out of range");
    if (x == seed) throw UsageError("seed must not appear in the positive set");
  }
  for (NodeId y : negatives) {
    if (y >= n) throw UsageError("negative node out of range");
    if (y == seed) throw UsageError("seed must not appear in the negative set");
    if (pos.contains(y)) {
      throw UsageError("positive and negative sets must be disjoint");
    }
  }
}

std::vector<double> LearnConfig::resolve_origin(const TransitionMatrix& t) const {
  if (origin.empty()) {
    return RestartVector::constant(t, origin_value).values();
  }
  return RestartVector::from_values(t, origin).values();
}

void LearnConfig::validate() const {
  if (b <= 0.0) throw UsageError("loss sharpness b must be > 0");
  if (lambda < 0.0) throw UsageError("lambda must be >= 0");
  if (eta <= 0.0) throw UsageError("learning rate must be > 0");
  if (grad_tol < 0.0 || step_tol < 0.0) throw UsageError("tolerances must be >= 0");
}

double sigmoid_loss(double x, double b) {
  if (b <= 0.0) throw UsageError("loss sharpness b must be > 0");
  double z = x / b;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double sigmoid_loss_derivative(double x, double b) {
  double h = sigmoid_loss(x, b);
  return h * (1.0 - h) / b;
}

namespace {

double regularizer(const std::vector<double>& c, const std::vector<double>& o,
                   double lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double d = c[i] - o[i];
    s += d * d;
  }
  return lambda * s;
}

double pair_loss_sum(const ScoreVector& r, const SupervisionInstance& inst,
                     double b, std::vector<double>* pair_losses,
                     std::vector<double>* pair_weights) {
  const std::size_t np = inst.positives.size();
  const std::size_t nn = inst.negatives.size();
  if (pair_losses != nullptr) pair_losses->resize(np * nn);
  if (pair_weights != nullptr) pair_weights->resize(np * nn);
  double sum = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    double rx = r.r[inst.positives[i]];
    for (std::size_t j = 0; j < nn; ++j) {
      double delta = r.r[inst.negatives[j]] - rx;
      double h = sigmoid_loss(delta, b);
      sum += h;
      if (pair_losses != nullptr) (*pair_losses)[i * nn + j] = h;
      if (pair_weights != nullptr) (*pair_weights)[i * nn + j] = h * (1.0 - h) / b;
    }
  }
  return sum;
}

}  // namespace

double loss_value(const TransitionMatrix& t, const RestartVector& c,
                  const SupervisionInstance& inst, const LearnConfig& cfg,
                  const std::vector<double>* warm_start) {
  cfg.validate();
  inst.validate(t.n);
  ScoreVector r = rwer_power_iteration(t, c, inst.seed, cfg.iteration, warm_start);
  std::vector<double> o = cfg.resolve_origin(t);
  return regularizer(c.values(), o, cfg.lambda) +
         pair_loss_sum(r, inst, cfg.b, nullptr, nullptr);
}

std::vector<double> build_p_tilde(NodeId n, const SupervisionInstance& inst,
                                  const std::vector<double>& pair_weights) {
  const std::size_t np = inst.positives.size();
  const std::size_t nn = inst.negatives.size();
  if (pair_weights.size() != np * nn) {
    throw DimensionError("pair weight matrix must be |P| x |N|");
  }
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      double w = pair_weights[i * nn + j];
      p[inst.negatives[j]] += w;
      p[inst.positives[i]] -= w;
    }
  }
  return p;
}

GradientReport gradient(const TransitionMatrix& t, const RestartVector& c,
                        const SupervisionInstance& inst, const LearnConfig& cfg,
                        const std::vector<double>* warm_start) {
  cfg.validate();
  inst.validate(t.n);

  GradientReport rep;
  rep.r = rwer_power_iteration(t, c, inst.seed, cfg.iteration, warm_start);

  std::vector<double> pair_weights;
  double pair_sum = pair_loss_sum(rep.r, inst, cfg.b, &rep.pair_losses, &pair_weights);
  std::vector<double> o = cfg.resolve_origin(t);
  rep.loss = regularizer(c.values(), o, cfg.lambda) + pair_sum;

  std::vector<double> p_tilde = build_p_tilde(t.n, inst, pair_weights);
  bool all_zero = std::all_of(p_tilde.begin(), p_tilde.end(),
                              [](double v) { return v == 0.0; });
  if (all_zero) {
    rep.r_tilde.assign(t.n, 0.0);
  } else {
    SolveConfig solve_cfg = cfg.solve;
    solve_cfg.backend = cfg.variant == LearnVariant::kSureFast
                            ? SolveBackend::kRichardson
                            : SolveBackend::kGmres;
    AdjointOperator op(t, c, inst.seed);
    rep.r_tilde = solve_adjoint(op, p_tilde, solve_cfg);
  }

  // (-A~ + 1 e_s^T) r~ evaluated matrix-free, then Hadamard with r.
  std::vector<double> propagated = apply_forward(t, rep.r_tilde);
  double rts = rep.r_tilde[inst.seed];
  rep.gradient.resize(t.n);
  const std::vector<double>& cv = c.values();
  for (NodeId u = 0; u < t.n; ++u) {
    rep.gradient[u] = 2.0 * cfg.lambda * (cv[u] - o[u]) +
                      (rts - propagated[u]) * rep.r.r[u];
  }
  for (NodeId u : t.dangling) rep.gradient[u] = 0.0;  // pinned parameters
  return rep;
}

std::vector<double> finite_difference_gradient(const TransitionMatrix& t,
                                               const RestartVector& c,
                                               const SupervisionInstance& inst,
                                               const LearnConfig& cfg, double step) {
  if (step <= 0.0) throw UsageError("finite difference step must be > 0");
  std::vector<double> grad(t.n, 0.0);
  std::vector<double> values = c.values();
  for (NodeId u = 0; u < t.n; ++u) {
    if (t.is_dangling(u)) continue;
    double base = values[u];
    if (base - step < kMinRestart || base + step > kMaxRestart) {
      throw UsageError("finite difference step leaves the restart bounds at node " +
                       std::to_string(u));
    }
    values[u] = base + step;
    double up = loss_value(t, RestartVector::from_values(t, values), inst, cfg);
    values[u] = base - step;
    double down = loss_value(t, RestartVector::from_values(t, values), inst, cfg);
    values[u] = base;
    grad[u] = (up - down) / (2.0 * step);
  }
  return grad;
}

LearnResult sure_learn(const TransitionMatrix& t, const SupervisionInstance& inst,
                       const LearnConfig& cfg) {
  cfg.validate();
  inst.validate(t.n);

  RestartVector c = RestartVector::from_values(t, cfg.resolve_origin(t));
  LearnResult result;
  std::vector<double> warm;  // previous epoch's scores
  const std::vector<double>* warm_ptr = nullptr;

  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    GradientReport rep = gradient(t, c, inst, cfg, warm_ptr);
    if (result.loss_trace.empty()) result.loss_trace.push_back(rep.loss);
    warm = std::move(rep.r.r);
    warm_ptr = &warm;

    double gmax = 0.0;
    for (double g : rep.gradient) gmax = std::max(gmax, std::abs(g));
    if (gmax < cfg.grad_tol) {
      result.converged = true;
      break;
    }

    double rate = cfg.eta;
    RestartVector candidate = c;
    double candidate_loss = rep.loss;
    bool accepted = false;
    for (int halving = 0; halving <= 20; ++halving) {
      std::vector<double> stepped = c.values();
      for (NodeId u = 0; u < t.n; ++u) stepped[u] -= rate * rep.gradient[u];
      candidate = RestartVector::project(t, stepped);
      candidate_loss = loss_value(t, candidate, inst, cfg, warm_ptr);
      if (!cfg.safeguard || candidate_loss <= rep.loss) {
        accepted = true;
        break;
      }
      rate *= 0.5;
    }
    if (!accepted) {
      result.warning = "safeguard exhausted: no step decreased the loss";
      break;
    }

    double step_l1 = 0.0;
    for (NodeId u = 0; u < t.n; ++u) {
      step_l1 += std::abs(candidate[u] - c[u]);
    }
    c = candidate;
    result.loss_trace.push_back(candidate_loss);
    result.epochs = epoch + 1;
    if (step_l1 < cfg.step_tol) {
      result.converged = true;
      break;
    }
  }

  if (result.loss_trace.empty()) {
    // max_epochs = 0: report the starting loss for the trace contract.
    result.loss_trace.push_back(loss_value(t, c, inst, cfg));
  }
  result.restart = c.values();
  return result;
}

}  // namespace rwer
