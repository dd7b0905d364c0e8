#include "rwer/restart.hpp"

#include <algorithm>
#include <string>

namespace rwer {

namespace {

void check_bounds(double value, NodeId u) {
  if (!(value >= kMinRestart && value <= kMaxRestart)) {
    throw UsageError("restart probability " + std::to_string(value) + " at node " +
                     std::to_string(u) + " outside [" + std::to_string(kMinRestart) +
                     ", " + std::to_string(kMaxRestart) + "]");
  }
}

}  // namespace

RestartVector RestartVector::constant(const TransitionMatrix& t, double value) {
  check_bounds(value, 0);
  std::vector<double> c(t.n, value);
  for (NodeId u : t.dangling) c[u] = 1.0;
  return RestartVector(std::move(c));
}

RestartVector RestartVector::from_values(const TransitionMatrix& t,
                                         std::vector<double> values) {
  if (values.size() != t.n) {
    throw DimensionError("restart vector length " + std::to_string(values.size()) +
                         " does not match node count " + std::to_string(t.n));
  }
  for (NodeId u : t.dangling) values[u] = 1.0;
  for (NodeId u = 0; u < t.n; ++u) {
    if (!t.is_dangling(u)) check_bounds(values[u], u);
  }
  return RestartVector(std::move(values));
}

RestartVector RestartVector::project(const TransitionMatrix& t,
                                     std::vector<double> values) {
  if (values.size() != t.n) {
    throw DimensionError("restart vector length does not match node count");
  }
  for (NodeId u = 0; u < t.n; ++u) {
    values[u] = t.is_dangling(u) ? 1.0 : std::clamp(values[u], kMinRestart, kMaxRestart);
  }
  return RestartVector(std::move(values));
}

}  // namespace rwer
