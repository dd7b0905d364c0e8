#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rwer/engine.hpp"
#include "rwer/solver.hpp"

namespace rwer {

// Query-side supervision: positives the seed prefers, negatives it dislikes.
struct SupervisionInstance {
  NodeId seed = 0;
  std::vector<NodeId> positives;
  std::vector<NodeId> negatives;

  // Enforces non-empty disjoint sets that exclude the seed.
  void validate(NodeId n) const;
};

enum class LearnVariant { kSure, kSureFast };

struct LearnConfig {
  double b = 1e-3;       // loss sharpness
  double lambda = 1.0;   // regularization weight
  double origin_value = 0.2;
  std::vector<double> origin;  // empty -> constant origin_value
  double eta = 0.1;
  std::size_t max_epochs = 200;
  double grad_tol = 1e-6;  // stop when ||grad||_inf is below
  double step_tol = 1e-9;  // stop when ||delta c||_1 is below
  bool safeguard = true;   // halve the step when the loss would increase
  LearnVariant variant = LearnVariant::kSure;
  IterationConfig iteration;  // forward score solves
  SolveConfig solve;          // adjoint solves

  std::vector<double> resolve_origin(const TransitionMatrix& t) const;
  void validate() const;
};

// Logistic surrogate h(x) = (1 + exp(-x/b))^{-1}, stable for large |x/b|.
double sigmoid_loss(double x, double b);

// dh/dx = (1/b) h (1 - h).
double sigmoid_loss_derivative(double x, double b);

// F(c) = lambda ||c - o||^2 + sum_{x in P, y in N} h(r_y - r_x).
double loss_value(const TransitionMatrix& t, const RestartVector& c,
                  const SupervisionInstance& inst, const LearnConfig& cfg,
                  const std::vector<double>* warm_start = nullptr);

// Aggregates pairwise weights onto P and N: p~ = sum w_yx (e_y - e_x),
// i.e. p~_y += w, p~_x -= w for each pair. pair_weights is |P| x |N|
// row-major. O(|P||N|).
std::vector<double> build_p_tilde(NodeId n, const SupervisionInstance& inst,
                                  const std::vector<double>& pair_weights);

struct GradientReport {
  std::vector<double> gradient;     // dF/dc, zeroed at dangling nodes
  double loss = 0.0;                // F(c)
  std::vector<double> pair_losses;  // h(r_y - r_x), |P| x |N| row-major
  ScoreVector r;
  std::vector<double> r_tilde;
};

// Analytic gradient: 2 lambda (c - o) + ((-A~ + 1 e_s^T) r~) .* r with
// r~ solving (I - B^T) r~ = p~. The adjoint backend follows cfg.variant:
// GMRES for kSure, Richardson for kSureFast.
GradientReport gradient(const TransitionMatrix& t, const RestartVector& c,
                        const SupervisionInstance& inst, const LearnConfig& cfg,
                        const std::vector<double>* warm_start = nullptr);

// Central differences of loss_value, skipping pinned dangling coordinates.
// Verification oracle for the analytic path.
std::vector<double> finite_difference_gradient(const TransitionMatrix& t,
                                               const RestartVector& c,
                                               const SupervisionInstance& inst,
                                               const LearnConfig& cfg, double step);

struct LearnResult {
  std::vector<double> restart;     // learned c
  std::vector<double> loss_trace;  // F before the first step, then per epoch
  std::size_t epochs = 0;
  bool converged = false;          // a gradient/step tolerance fired
  std::string warning;             // set when the safeguard was exhausted
};

// Projected gradient descent from c = o. Each epoch: score, solve the
// adjoint, step against the gradient, clip into the restart bounds and re-pin
// dangling entries. With the safeguard on, a step that would increase the
// loss is retried with a halved rate (up to 20 times) and the rate is
// restored next epoch.
LearnResult sure_learn(const TransitionMatrix& t, const SupervisionInstance& inst,
                       const LearnConfig& cfg);

}  // namespace rwer
