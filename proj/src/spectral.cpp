#include "gfa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

namespace gfa {

namespace {

// Spot-checks residuals and orthonormality on a handful of columns: some
// BLAS builds return corrupted eigenvectors with info == 0 (seen with
// OpenBLAS AVX-512 kernels under emulation).
bool eigenpairs_look_valid(const Eigen::MatrixXd& a_hat, const Eigen::VectorXd& values,
                           const Eigen::MatrixXd& vectors) {
  const int n = static_cast<int>(values.size());
  const double tol = 1e-7 * n;
  std::vector<int> sample{0, n - 1};
  for (int k = 1; k <= 6; ++k) sample.push_back(static_cast<int>((static_cast<long long>(k) * (n - 1)) / 7));
  for (int i : sample) {
    if (std::abs(vectors.col(i).norm() - 1.0) > tol) return false;
    if ((a_hat * vectors.col(i) - values(i) * vectors.col(i)).norm() > tol) return false;
  }
  for (std::size_t a = 0; a < sample.size(); ++a) {
    for (std::size_t b = a + 1; b < sample.size(); ++b) {
      if (sample[a] == sample[b]) continue;
      if (std::abs(vectors.col(sample[a]).dot(vectors.col(sample[b]))) > tol) return false;
    }
  }
  return true;
}

}  // namespace

EigenSystem decompose(const Graph& graph) {
  const int n = graph.vertex_count();
  const Eigen::MatrixXd a_hat = normalized_adjacency(graph);  // errors on zero-degree vertices

  // Fast path: LAPACK divide-and-conquer, eigenvalues ascending and
  // eigenvectors in the input matrix (column-major matches Eigen's layout).
  Eigen::MatrixXd vectors_asc = a_hat;
  Eigen::VectorXd values_asc(n);
  const int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, vectors_asc.data(), n, values_asc.data());
  if (info != 0 || !eigenpairs_look_valid(a_hat, values_asc, vectors_asc)) {
    static bool warned = false;
    if (!warned) {
      std::cerr << "decompose: LAPACK dsyevd produced invalid eigenpairs, falling back to the "
                   "built-in solver (set OPENBLAS_CORETYPE=HASWELL if your BLAS mis-detects the "
                   "CPU)\n";
      warned = true;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a_hat);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("decompose: eigensolver failed to converge");
    }
    vectors_asc = solver.eigenvectors();
    values_asc = solver.eigenvalues();
  }

  EigenSystem eig;
  eig.values = values_asc.reverse();
  eig.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) eig.vectors.col(i) = vectors_asc.col(n - 1 - i);

  eig.gen_vectors = eig.vectors;
  for (int v = 0; v < n; ++v) {
    eig.gen_vectors.row(v) /= std::sqrt(static_cast<double>(graph.degree(v)));
  }
  return eig;
}

namespace {

// Couplings beyond this many spectral neighbors are dropped; they carry a
// 1/(lambda_i - lambda_j) weight, so distant pairs contribute little, and
// the cap keeps scoring linear-time per candidate at fixed window.
constexpr int kCouplingWindow = 64;

}  // namespace

PerturbedSpectrum perturb_eigenvalues_scaled(const EigenSystem& eig, int u, int v, double delta) {
  const int n = static_cast<int>(eig.values.size());
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
    throw std::invalid_argument("perturb_eigenvalues_scaled: bad endpoint pair");
  }
  // Row u / row v of the generalized eigenvectors drive every term below:
  // for the pencil (A, D) with w' D w = 1, perturbing by delta at (u,v)
  // couples eigenpairs i and j through
  //   g_ij = delta * (a_j (b_i - lambda_i a_i) + b_j (a_i - lambda_i b_i)).
  const Eigen::VectorXd a = eig.gen_vectors.row(u).transpose();
  const Eigen::VectorXd b = eig.gen_vectors.row(v).transpose();

  PerturbedSpectrum out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) {
    const double lambda = eig.values(i);
    const double ai = a(i);
    const double bi = b(i);
    const double first = delta * (2.0 * ai * bi - lambda * (ai * ai + bi * bi));

    // Second-order term: Rayleigh-Schrodinger sum over neighboring
    // eigenpairs, switching to the exact 2x2 secular shift when a gap is
    // comparable to its coupling (the plain g^2/gap form blows up there).
    const double pa = delta * (bi - lambda * ai);
    const double pb = delta * (ai - lambda * bi);
    double second = 0.0;
    const int lo = std::max(0, i - kCouplingWindow);
    const int hi = std::min(n - 1, i + kCouplingWindow);
    for (int j = lo; j <= hi; ++j) {
      if (j == i) continue;
      const double gap = lambda - eig.values(j);
      const double g = pa * a(j) + pb * b(j);
      const double abs_gap = std::abs(gap);
      if (abs_gap > 4.0 * std::abs(g)) {
        second += g * g / gap;
      } else if (gap != 0.0) {
        const double shift = std::sqrt(gap * gap / 4.0 + g * g) - abs_gap / 2.0;
        second += gap > 0.0 ? shift : -shift;
      }
      // exactly degenerate pairs are left to their first-order values
    }
    second -= delta * (ai * ai + bi * bi) * first;  // D-normalization correction

    out.values(i) = std::clamp(lambda + first + second, -1.0, 1.0);
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<double>());
  return out;
}

PerturbedSpectrum estimate_perturbed_eigenvalues(const EigenSystem& eig, const DegreeProfile& deg,
                                                 const Flip& flip) {
  const int n = static_cast<int>(deg.degrees.size());
  if (flip.u < 0 || flip.v < 0 || flip.u >= n || flip.v >= n || flip.u == flip.v) {
    throw std::invalid_argument("estimate_perturbed_eigenvalues: bad endpoint pair");
  }
  if (flip.sign == -1 && (deg.degrees[flip.u] <= 1 || deg.degrees[flip.v] <= 1)) {
    throw std::invalid_argument("estimate_perturbed_eigenvalues: flip would isolate a vertex");
  }
  return perturb_eigenvalues_scaled(eig, flip.u, flip.v, static_cast<double>(flip.sign));
}

double tail_feature_energy(const EigenSystem& eig, const Eigen::MatrixXd& x, int tail) {
  const int n = static_cast<int>(eig.values.size());
  if (tail < 1 || tail > n) {
    throw std::invalid_argument("tail_feature_energy: tail must be in [1, " + std::to_string(n) +
                                "], got " + std::to_string(tail));
  }
  if (x.rows() != n) {
    throw std::invalid_argument("tail_feature_energy: feature rows do not match vertex count");
  }
  return (eig.vectors.rightCols(tail).transpose() * x).squaredNorm();
}

PerturbedSpectrum exact_perturbed_spectrum(const Graph& graph, const Flip& flip) {
  const EigenSystem eig = decompose(apply_flip(graph, flip));
  return {eig.values};
}

}  // namespace gfa
