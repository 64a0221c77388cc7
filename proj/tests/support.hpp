#pragma once

// Shared helpers for the unit and acceptance suites. Everything here is an
// independent check-side implementation: it must not call back into the
// code paths it is used to verify.

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gfa/graph.hpp"
#include "gfa/random.hpp"

namespace testsupport {

// Average ranks, so ties are handled the standard way.
inline std::vector<double> ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("pearson: bad input sizes");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw std::invalid_argument("pearson: constant input");
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

// Uniform random valid flip: endpoints distinct, sign matches edge presence,
// deletions that would isolate an endpoint are rejected and redrawn.
inline gfa::Flip random_valid_flip(const gfa::Graph& g, gfa::Rng& rng) {
  const int n = g.vertex_count();
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const int u = static_cast<int>(rng.below(n));
    const int v = static_cast<int>(rng.below(n));
    if (u == v) continue;
    if (g.has_edge(u, v)) {
      if (g.degree(u) <= 1 || g.degree(v) <= 1) continue;
      return {u, v, -1};
    }
    return {u, v, +1};
  }
  throw std::runtime_error("random_valid_flip: no valid flip found");
}

// Descending spectrum whose `tail` smallest entries lie in [lo, hi] within
// (-1, 0); the remaining head entries sit in [0, 1].
inline Eigen::VectorXd random_tail_spectrum(int n, int tail, double lo, double hi, gfa::Rng& rng) {
  Eigen::VectorXd values(n);
  for (int i = 0; i < n - tail; ++i) values(i) = rng.uniform(0.0, 1.0);
  for (int i = n - tail; i < n; ++i) values(i) = rng.uniform(lo, hi);
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

// Random orthonormal basis via QR of a Gaussian matrix.
inline Eigen::MatrixXd random_orthonormal(int n, gfa::Rng& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, gfa::Rng& rng) {
  Eigen::MatrixXd a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = rng.normal();
  return a;
}

// Tail term of the rank-truncation error: || sum_i lambda_i u_i u_i' X ||_F^2 over
// the tail indices, evaluated by materializing the matrix.
inline double exact_tail_loss(const Eigen::VectorXd& values_desc, const Eigen::MatrixXd& basis,
                              const Eigen::MatrixXd& x, int tail) {
  const int n = static_cast<int>(values_desc.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, x.cols());
  for (int i = n - tail; i < n; ++i) {
    acc += values_desc(i) * basis.col(i) * (basis.col(i).transpose() * x);
  }
  return acc.squaredNorm();
}

// Product upper bound sum_i lambda_i^2 * sum_i ||u_i' X||^2 over the tail.
inline double bound_tail_loss(const Eigen::VectorXd& values_desc, const Eigen::MatrixXd& basis,
                              const Eigen::MatrixXd& x, int tail) {
  const int n = static_cast<int>(values_desc.size());
  double lambda_sq = 0.0;
  double energy = 0.0;
  for (int i = n - tail; i < n; ++i) {
    lambda_sq += values_desc(i) * values_desc(i);
    energy += (basis.col(i).transpose() * x).squaredNorm();
  }
  return lambda_sq * energy;
}

}  // namespace testsupport
