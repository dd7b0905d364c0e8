#include <doctest.h>

#include <cmath>

#include "rwer/closed_form.hpp"
#include "rwer/engine.hpp"
#include "rwer/synthetic.hpp"
#include "support.hpp"

using namespace rwer;
using test_support::l1_diff;

namespace {

// Analytic two-cycle fixed point with c = (0.2, 0.2):
//   r0 = 0.2 + 0.8 r1, r1 = 0.8 r0, r0 + r1 = 1  =>  r = (5/9, 4/9).
constexpr double kTwoCycleR0 = 5.0 / 9.0;
constexpr double kTwoCycleR1 = 4.0 / 9.0;

}  // namespace

TEST_CASE("two-cycle fixed point") {
  TransitionMatrix t = row_normalize(synthetic::two_cycle());
  RestartVector c = RestartVector::constant(t, 0.2);

  SUBCASE("power iteration") {
    ScoreVector s = rwer_power_iteration(t, c, 0);
    CHECK(s.r[0] == doctest::Approx(kTwoCycleR0).epsilon(1e-8));
    CHECK(s.r[1] == doctest::Approx(kTwoCycleR1).epsilon(1e-8));
    CHECK(s.residual < 1e-9);
  }

  SUBCASE("closed form") {
    ScoreVector s = rwer_closed_form(t, c, 0);
    CHECK(s.r[0] == doctest::Approx(kTwoCycleR0).epsilon(1e-12));
    CHECK(s.r[1] == doctest::Approx(kTwoCycleR1).epsilon(1e-12));
  }

  SUBCASE("rwr convenience") {
    ScoreVector s = rwr_scores(t, 0.2, 0);
    CHECK(s.r[0] == doctest::Approx(kTwoCycleR0).epsilon(1e-8));
  }
}

TEST_CASE("rwr is rwer with a constant vector, bit for bit") {
  SparseGraph g = synthetic::random_strongly_connected(30, 120, 21);
  TransitionMatrix t = row_normalize(g);
  ScoreVector a = rwr_scores(t, 0.15, 4);
  ScoreVector b = rwer_power_iteration(t, RestartVector::constant(t, 0.15), 4);
  CHECK(a.r == b.r);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("all-restart limit gives back the seed indicator") {
  // c = 1 everywhere lies outside the RestartVector bounds, so the claim is
  // checked on the dense system directly: I - B becomes the identity.
  SparseGraph g = synthetic::random_strongly_connected(12, 30, 2);
  TransitionMatrix t = row_normalize(g);
  std::vector<double> ones(t.n, 1.0);
  auto dense = test_support::build_dense_system(t, ones, 3);
  std::vector<double> q(t.n, 0.0);
  q[3] = 1.0;
  std::vector<double> r = test_support::dense_solve(dense, q);
  for (NodeId u = 0; u < t.n; ++u) {
    CHECK(r[u] == doctest::Approx(u == 3 ? 1.0 : 0.0).epsilon(1e-14));
  }

  // Inside the bounds, c -> c_max concentrates nearly all mass on the seed.
  ScoreVector s = rwer_power_iteration(t, RestartVector::constant(t, kMaxRestart), 3);
  CHECK(s.r[3] > 0.998);
}

TEST_CASE("power iteration matches the dense closed form") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    NodeId n = static_cast<NodeId>(20 + 37 * seed);
    SparseGraph g = synthetic::random_strongly_connected(n, 6 * n, seed);
    TransitionMatrix t = row_normalize(g);
    RestartVector c = RestartVector::from_values(
        t, test_support::random_restart_values(t.n, seed + 100));
    NodeId s = static_cast<NodeId>(seed % n);

    IterationConfig cfg;
    cfg.epsilon = 1e-12;
    ScoreVector iterative = rwer_power_iteration(t, c, s, cfg);
    ScoreVector dense = rwer_closed_form(t, c, s);
    CHECK(l1_diff(iterative.r, dense.r) < 1e-8);
  }
}

TEST_CASE("star graph cross-check at mixed restart values") {
  SparseGraph g = synthetic::star(9);  // 10 nodes
  TransitionMatrix t = row_normalize(g);
  std::vector<double> values(t.n);
  for (NodeId u = 0; u < t.n; ++u) values[u] = 0.05 + 0.08 * u;
  RestartVector c = RestartVector::from_values(t, values);

  IterationConfig cfg;
  cfg.epsilon = 1e-13;
  ScoreVector iterative = rwer_power_iteration(t, c, 0, cfg);
  ScoreVector dense = rwer_closed_form(t, c, 0);
  CHECK(l1_diff(iterative.r, dense.r) < 1e-10);
}

TEST_CASE("closed form handles dangling nodes like the iteration") {
  for (std::uint64_t seed : {1ULL, 6ULL, 14ULL}) {
    SparseGraph g = synthetic::random_graph(40, 100, seed);  // dangling likely
    TransitionMatrix t = row_normalize(g);
    RestartVector c = RestartVector::from_values(
        t, test_support::random_restart_values(t.n, seed + 3));
    IterationConfig cfg;
    cfg.epsilon = 1e-12;
    ScoreVector iterative = rwer_power_iteration(t, c, 3, cfg);
    ScoreVector dense = rwer_closed_form(t, c, 3);
    CHECK(l1_diff(iterative.r, dense.r) < 1e-8);
  }
}

TEST_CASE("uniform-c reduction matches a textbook RWR") {
  SparseGraph g = synthetic::random_strongly_connected(40, 200, 9);
  TransitionMatrix t = row_normalize(g);
  REQUIRE(t.dangling.empty());
  for (double k : {0.05, 0.15, 0.5, 0.85}) {
    IterationConfig cfg;
    cfg.epsilon = 1e-13;
    ScoreVector ours = rwr_scores(t, k, 7, cfg);
    std::vector<double> reference = test_support::textbook_rwr(t, k, 7);
    CHECK(l1_diff(ours.r, reference) < 1e-10);
  }
}

TEST_CASE("score vectors are normalized and non-negative") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    SparseGraph g = synthetic::random_graph(50, 180, seed);  // dangling likely
    TransitionMatrix t = row_normalize(g);
    RestartVector c = RestartVector::from_values(
        t, test_support::random_restart_values(t.n, seed));
    ScoreVector s = rwer_power_iteration(t, c, static_cast<NodeId>(seed * 7 % t.n));
    double sum = 0.0;
    for (double v : s.r) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("residuals decrease monotonically after the first iteration") {
  SparseGraph g = synthetic::random_strongly_connected(60, 240, 31);
  TransitionMatrix t = row_normalize(g);
  RestartVector c = RestartVector::from_values(
      t, test_support::random_restart_values(t.n, 4, 0.05, 0.3));
  std::vector<double> trace;
  IterationConfig cfg;
  cfg.epsilon = 1e-11;
  ScoreVector s = rwer_power_iteration(t, c, 0, cfg, nullptr, &trace);
  REQUIRE(trace.size() >= 3);
  CHECK(trace.back() < cfg.epsilon);
  for (std::size_t i = 2; i < trace.size(); ++i) {
    CHECK(trace[i] <= trace[i - 1] + 1e-12);
  }
  CHECK(s.iterations == trace.size());
}

TEST_CASE("warm start converges to the same fixed point") {
  SparseGraph g = synthetic::random_strongly_connected(25, 100, 13);
  TransitionMatrix t = row_normalize(g);
  RestartVector c = RestartVector::constant(t, 0.2);
  IterationConfig cfg;
  cfg.epsilon = 1e-13;
  ScoreVector cold = rwer_power_iteration(t, c, 5, cfg);
  std::vector<double> start(t.n, 1.0 / t.n);
  ScoreVector warm = rwer_power_iteration(t, c, 5, cfg, &start);
  CHECK(l1_diff(cold.r, warm.r) < 1e-11);
}

TEST_CASE("dangling seed pins all mass on itself") {
  TransitionMatrix t = row_normalize(synthetic::path(3));
  RestartVector c = RestartVector::constant(t, 0.2);
  ScoreVector s = rwer_power_iteration(t, c, 2);
  CHECK(s.r[2] == doctest::Approx(1.0));
  CHECK(s.r[0] == 0.0);
}

TEST_CASE("restart rankings depend on the uniform restart value") {
  // Two-community toy: the orderings under c = 0.1 and c = 0.5 must differ.
  SparseGraph g = synthetic::two_community(5, 0.8, 1, 12);
  TransitionMatrix t = row_normalize(g);
  ScoreVector low = rwr_scores(t, 0.1, 0);
  ScoreVector high = rwr_scores(t, 0.5, 0);

  auto ordering = [&](const ScoreVector& s) {
    std::vector<NodeId> ids(t.n);
    for (NodeId u = 0; u < t.n; ++u) ids[u] = u;
    std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
      if (s.r[a] != s.r[b]) return s.r[a] > s.r[b];
      return a < b;
    });
    return ids;
  };
  CHECK(ordering(low) != ordering(high));
}

TEST_CASE("engine error paths") {
  TransitionMatrix t = row_normalize(synthetic::two_cycle());
  RestartVector c = RestartVector::constant(t, 0.2);

  SUBCASE("non-convergence carries diagnostics") {
    IterationConfig cfg;
    cfg.epsilon = 1e-15;
    cfg.max_iterations = 2;
    try {
      rwer_power_iteration(t, c, 0, cfg);
      FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
      CHECK(e.iterations() == 2);
      CHECK(e.residual() > 0.0);
    }
  }

  SUBCASE("seed out of range") {
    CHECK_THROWS_AS(rwer_power_iteration(t, c, 9), UsageError);
  }

  SUBCASE("invalid iteration config") {
    IterationConfig cfg;
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(rwer_power_iteration(t, c, 0, cfg), UsageError);
  }

  SUBCASE("restart bounds enforced") {
    CHECK_THROWS_AS(RestartVector::constant(t, 1.0), UsageError);
    CHECK_THROWS_AS(RestartVector::constant(t, 0.0), UsageError);
    CHECK_THROWS_AS(RestartVector::from_values(t, {0.2, 1.5}), UsageError);
    CHECK_THROWS_AS(RestartVector::from_values(t, {0.2}), DimensionError);
  }

  SUBCASE("dense limit") {
    SparseGraph g = synthetic::random_strongly_connected(30, 60, 1);
    TransitionMatrix big = row_normalize(g);
    RestartVector cb = RestartVector::constant(big, 0.2);
    CHECK_THROWS_AS(rwer_closed_form(big, cb, 0, 10), DenseLimitExceeded);
  }
}

TEST_CASE("restart vector pins dangling entries") {
  TransitionMatrix t = row_normalize(synthetic::path(4));
  RestartVector c = RestartVector::from_values(t, {0.3, 0.2, 0.4, 0.7});
  CHECK(c[3] == 1.0);  // dangling overridden
  RestartVector p = RestartVector::project(t, {2.0, -1.0, 0.5, 0.2});
  CHECK(p[0] == kMaxRestart);
  CHECK(p[1] == kMinRestart);
  CHECK(p[2] == 0.5);
  CHECK(p[3] == 1.0);
}

TEST_CASE("l2 and linf residual norms also converge") {
  SparseGraph g = synthetic::random_strongly_connected(20, 80, 5);
  TransitionMatrix t = row_normalize(g);
  RestartVector c = RestartVector::constant(t, 0.2);
  for (ResidualNorm norm : {ResidualNorm::kL2, ResidualNorm::kLInf}) {
    IterationConfig cfg;
    cfg.norm = norm;
    ScoreVector s = rwer_power_iteration(t, c, 0, cfg);
    CHECK(s.residual < cfg.epsilon);
  }
}
