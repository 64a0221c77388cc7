#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gfa/graph.hpp"

namespace gfa {

/// Vertex representations, one row per vertex.
using EmbeddingMatrix = Eigen::MatrixXd;

/// Log co-occurrence matrix whose rank-d factorization reproduces the
/// random-walk embedding: M = log(max(1, vol(G)/(bK) * (sum_k (D^-1 A)^k) D^-1)).
struct NetMFMatrix {
  Eigen::MatrixXd M;
  int window = 1;
  int negatives = 1;
};

/// Multinomial logistic regression over standardized embeddings. The z-score
/// statistics come from the training rows and travel with the model.
struct ClassifierModel {
  Eigen::MatrixXd weights;  // d x c
  Eigen::VectorXd bias;     // c
  double l2 = 0.0;
  Eigen::VectorXd feature_mean;
  Eigen::VectorXd feature_std;
};

/// Linear graph convolution: Z = (A_hat + I)^K X by K repeated products.
EmbeddingMatrix sgc_embed(const Graph& graph, int order);

NetMFMatrix netmf_matrix(const Graph& graph, int window, int negatives);

/// Rank-d factorization Z = U_d diag(sigma_d)^{1/2} with a deterministic
/// sign convention (largest-magnitude entry of each singular vector positive).
EmbeddingMatrix netmf_embed(const NetMFMatrix& netmf, int dim);

struct LogisticGradient {
  double loss = 0.0;
  Eigen::MatrixXd grad_weights;
  Eigen::VectorXd grad_bias;
};

/// Mean cross-entropy + (l2/2)||W||^2 and its analytic gradient, on rows
/// already standardized. Exposed so the gradient can be checked against
/// finite differences.
LogisticGradient logistic_loss_grad(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                    const std::vector<int>& idx, const Eigen::MatrixXd& weights,
                                    const Eigen::VectorXd& bias, double l2);

/// Full-batch gradient descent from zero init: 500 iterations, step 0.5.
/// Deterministic for fixed inputs; the seed is carried for interface
/// stability but the pipeline draws nothing from it.
ClassifierModel train_logistic(const EmbeddingMatrix& z, const std::vector<int>& labels,
                               const std::vector<int>& train_idx, double l2, std::uint64_t seed);

/// Argmax class per row of z (standardized through the model statistics);
/// ties resolve to the smallest class id.
std::vector<int> predict(const ClassifierModel& model, const EmbeddingMatrix& z,
                         const std::vector<int>& idx);

double evaluate_accuracy(const ClassifierModel& model, const EmbeddingMatrix& z,
                         const std::vector<int>& labels, const std::vector<int>& idx);

}  // namespace gfa
