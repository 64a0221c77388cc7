#pragma once

#include <Eigen/Dense>

#include "gfa/graph.hpp"

namespace gfa {

/// Full eigensystem of the normalized adjacency. Eigenvalues are sorted
/// descending; vectors.col(i) is the unit eigenvector paired with values[i].
/// gen_vectors.col(i) = D^{-1/2} vectors.col(i) solves the generalized
/// problem A w = lambda D w and is normalized so that w' D w = 1, which is
/// what the single-flip eigenvalue update below relies on.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  Eigen::MatrixXd gen_vectors;
};

/// Eigenvalue estimates for the graph after one flip, re-sorted descending
/// and clamped to [-1, 1].
struct PerturbedSpectrum {
  Eigen::VectorXd values;
};

EigenSystem decompose(const Graph& graph);

/// Perturbation estimate of every eigenvalue for a single edge toggle,
/// without re-decomposing. The leading term is
///   lambda_i' = lambda_i + sign * (2 w_i[u] w_i[v] - lambda_i (w_i[u]^2 + w_i[v]^2))
/// with w the generalized eigenvectors; a local second-order coupling sum
/// over spectral neighbors corrects the crowding error that the per-
/// eigenvalue update alone cannot see. Rejects flips that would isolate an
/// endpoint.
PerturbedSpectrum estimate_perturbed_eigenvalues(const EigenSystem& eig, const DegreeProfile& deg,
                                                 const Flip& flip);

/// Same update with an arbitrary real edge-weight delta in place of the
/// flip sign; delta = 0 returns the input spectrum unchanged. Exists so
/// tests can drive the estimator toward the zero-perturbation limit.
PerturbedSpectrum perturb_eigenvalues_scaled(const EigenSystem& eig, int u, int v, double delta);

/// Sum over the `tail` smallest-eigenvalue eigenvectors of ||u_i' X||_2^2.
double tail_feature_energy(const EigenSystem& eig, const Eigen::MatrixXd& x, int tail);

/// Oracle: spectrum of the flipped graph by full recomputation.
PerturbedSpectrum exact_perturbed_spectrum(const Graph& graph, const Flip& flip);

}  // namespace gfa
