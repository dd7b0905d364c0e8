#pragma once

#include <span>
#include <vector>

#include "rwer/graph.hpp"

namespace rwer {

// Interior bounds for per-node restart probabilities. c = 0 everywhere makes
// the system singular on strongly connected graphs and c = 1 kills
// exploration; strict interior bounds keep the iteration a contraction.
inline constexpr double kMinRestart = 1e-3;
inline constexpr double kMaxRestart = 1.0 - 1e-3;

// Per-node restart probabilities, the learnable parameter. Non-dangling
// entries lie in [kMinRestart, kMaxRestart]; entries at dangling nodes are
// pinned to exactly 1 (the surfer must restart there).
class RestartVector {
 public:
  static RestartVector constant(const TransitionMatrix& t, double value);

  // Pins dangling entries to 1, then validates the rest against the bounds.
  static RestartVector from_values(const TransitionMatrix& t,
                                   std::vector<double> values);

  // Clamps non-dangling entries into the bounds and pins dangling ones.
  // Projection step of the learner.
  static RestartVector project(const TransitionMatrix& t,
                               std::vector<double> values);

  const std::vector<double>& values() const noexcept { return c_; }
  double operator[](NodeId u) const { return c_[u]; }
  NodeId size() const noexcept { return static_cast<NodeId>(c_.size()); }

 private:
  explicit RestartVector(std::vector<double> c) : c_(std::move(c)) {}

  std::vector<double> c_;
};

}  // namespace rwer
