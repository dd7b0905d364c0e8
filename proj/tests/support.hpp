#pragma once

// Test-only reference implementations, independent of the library paths they
// check: a dense Gaussian-elimination solver, dense system assembly that
// accepts raw restart values, a textbook RWR loop, and brute-force metric
// oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "rwer/graph.hpp"
#include "rwer/metrics.hpp"

namespace test_support {

using rwer::NodeId;
using rwer::TransitionMatrix;

// Row-major dense matrix.
struct Dense {
  std::size_t n = 0;
  std::vector<double> a;

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// I - B with B = A~^T (I - diag(c)) + q (c - 1)^T. Raw c values, so limits
// like c = 1 everywhere stay expressible in tests.
inline Dense build_dense_system(const TransitionMatrix& t,
                                const std::vector<double>& c, NodeId seed) {
  Dense d;
  d.n = t.n;
  d.a.assign(d.n * d.n, 0.0);
  for (std::size_t i = 0; i < d.n; ++i) d.at(i, i) = 1.0;
  for (NodeId j = 0; j < t.n; ++j) {
    double hold = 1.0 - c[j];
    for (std::size_t k = t.row_ptr[j]; k < t.row_ptr[j + 1]; ++k) {
      d.at(t.col[k], j) -= hold * t.value[k];
    }
    d.at(seed, j) += hold;
  }
  return d;
}

inline Dense transpose(const Dense& d) {
  Dense out;
  out.n = d.n;
  out.a.assign(d.n * d.n, 0.0);
  for (std::size_t i = 0; i < d.n; ++i) {
    for (std::size_t j = 0; j < d.n; ++j) out.at(j, i) = d.at(i, j);
  }
  return out;
}

// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense m, std::vector<double> b) {
  const std::size_t n = m.n;
  if (b.size() != n) throw std::invalid_argument("rhs size");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(m.at(row, col)) > std::abs(m.at(pivot, col))) pivot = row;
    }
    if (std::abs(m.at(pivot, col)) < 1e-300) throw std::runtime_error("singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      double f = m.at(row, col) / m.at(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m.at(row, j) -= f * m.at(col, j);
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t j = row + 1; j < n; ++j) s -= m.at(row, j) * x[j];
    x[row] = s / m.at(row, row);
  }
  return x;
}

// Textbook RWR: r <- (1 - k) A~^T r + k q. Valid on dangling-free graphs.
inline std::vector<double> textbook_rwr(const TransitionMatrix& t, double k,
                                        NodeId seed, double epsilon = 1e-13,
                                        std::size_t max_iters = 100000) {
  std::vector<double> r(t.n, 0.0), next(t.n);
  r[seed] = 1.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId u = 0; u < t.n; ++u) {
      for (std::size_t e = t.row_ptr[u]; e < t.row_ptr[u + 1]; ++e) {
        next[t.col[e]] += (1.0 - k) * t.value[e] * r[u];
      }
    }
    next[seed] += k;
    double delta = 0.0;
    for (NodeId u = 0; u < t.n; ++u) delta += std::abs(next[u] - r[u]);
    r.swap(next);
    if (delta < epsilon) return r;
  }
  throw std::runtime_error("textbook RWR did not converge");
}

// Brute-force metric oracles: recount prefixes / enumerate pairs literally.
inline double brute_average_precision(const rwer::RankedList& ranked,
                                      const std::unordered_set<NodeId>& relevant) {
  double sum = 0.0;
  for (std::size_t pos = 0; pos < ranked.ids.size(); ++pos) {
    if (!relevant.contains(ranked.ids[pos])) continue;
    std::size_t hits = 0;
    for (std::size_t j = 0; j <= pos; ++j) {
      if (relevant.contains(ranked.ids[j])) ++hits;
    }
    sum += static_cast<double>(hits) / static_cast<double>(pos + 1);
  }
  return sum / static_cast<double>(relevant.size());
}

inline double brute_auc(const std::vector<double>& pos,
                        const std::vector<double>& neg) {
  double wins = 0.0;
  for (double p : pos) {
    for (double q : neg) {
      if (p > q) {
        wins += 1.0;
      } else if (p == q) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

inline double brute_precision_at_k(const rwer::RankedList& ranked,
                                   const std::unordered_set<NodeId>& relevant,
                                   std::size_t k) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.ids.size() && i < k; ++i) {
    if (relevant.contains(ranked.ids[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

inline double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

inline double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

inline std::vector<double> random_restart_values(NodeId n, std::uint64_t seed,
                                                 double lo = 0.05, double hi = 0.6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> c(n);
  for (auto& v : c) v = dist(rng);
  return c;
}

}  // namespace test_support
