#include "gfa/victims.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gfa {

namespace {

constexpr int kTrainIterations = 500;
constexpr double kLearningRate = 0.5;

Eigen::VectorXd degree_vector(const Graph& graph, const char* who) {
  const int n = graph.vertex_count();
  Eigen::VectorXd d(n);
  for (int v = 0; v < n; ++v) {
    const int deg = graph.degree(v);
    if (deg == 0) {
      throw std::runtime_error(std::string(who) + ": vertex " + std::to_string(v) + " has degree 0");
    }
    d(v) = static_cast<double>(deg);
  }
  return d;
}

Eigen::MatrixXd standardize(const EmbeddingMatrix& z, const Eigen::VectorXd& mean,
                            const Eigen::VectorXd& std_dev) {
  return (z.rowwise() - mean.transpose()).array().rowwise() / std_dev.transpose().array();
}

// Row-wise softmax probabilities for the selected rows.
Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p = logits;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    p.row(i).array() -= p.row(i).maxCoeff();
    p.row(i) = p.row(i).array().exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

}  // namespace

EmbeddingMatrix sgc_embed(const Graph& graph, int order) {
  if (order < 0) throw std::invalid_argument("sgc_embed: order must be >= 0");
  if (!graph.has_features()) throw std::invalid_argument("sgc_embed: graph has no features");
  if (order == 0) return graph.features();
  const Eigen::MatrixXd a_hat = normalized_adjacency(graph);
  EmbeddingMatrix z = graph.features();
  for (int k = 0; k < order; ++k) {
    z = a_hat * z + z;
  }
  return z;
}

NetMFMatrix netmf_matrix(const Graph& graph, int window, int negatives) {
  if (window < 1) throw std::invalid_argument("netmf_matrix: window must be >= 1");
  if (negatives < 1) throw std::invalid_argument("netmf_matrix: negatives must be >= 1");
  const int n = graph.vertex_count();
  const Eigen::VectorXd d = degree_vector(graph, "netmf_matrix");
  const double volume = d.sum();

  Eigen::MatrixXd walk = Eigen::MatrixXd::Zero(n, n);  // D^-1 A
  for (int u = 0; u < n; ++u) {
    for (int v : graph.neighbors(u)) walk(u, v) = 1.0 / d(u);
  }

  Eigen::MatrixXd power = walk;
  Eigen::MatrixXd sum = walk;
  for (int k = 2; k <= window; ++k) {
    power = power * walk;
    sum += power;
  }

  const double scale = volume / (static_cast<double>(negatives) * window);
  Eigen::MatrixXd m = scale * sum * d.cwiseInverse().asDiagonal();
  // log is undefined on the zero entries of disconnected pairs; clamp at 1
  // so they map to 0, which also keeps M symmetric.
  m = m.unaryExpr([](double x) { return std::log(std::max(x, 1.0)); });
  return {std::move(m), window, negatives};
}

EmbeddingMatrix netmf_embed(const NetMFMatrix& netmf, int dim) {
  const int n = static_cast<int>(netmf.M.rows());
  if (dim < 1 || dim > n) {
    throw std::invalid_argument("netmf_embed: dim must be in [1, " + std::to_string(n) + "]");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(netmf.M, Eigen::ComputeThinU);
  Eigen::MatrixXd u = svd.matrixU().leftCols(dim);
  const Eigen::VectorXd sigma = svd.singularValues().head(dim);

  for (int j = 0; j < dim; ++j) {
    Eigen::Index argmax = 0;
    u.col(j).cwiseAbs().maxCoeff(&argmax);
    if (u(argmax, j) < 0.0) u.col(j) = -u.col(j);
  }
  return u * sigma.cwiseSqrt().asDiagonal();
}

LogisticGradient logistic_loss_grad(const Eigen::MatrixXd& x, const std::vector<int>& labels,
                                    const std::vector<int>& idx, const Eigen::MatrixXd& weights,
                                    const Eigen::VectorXd& bias, double l2) {
  const int m = static_cast<int>(idx.size());
  Eigen::MatrixXd rows(m, x.cols());
  for (int i = 0; i < m; ++i) rows.row(i) = x.row(idx[i]);

  Eigen::MatrixXd logits = (rows * weights).rowwise() + bias.transpose();
  Eigen::MatrixXd p = softmax_rows(logits);

  LogisticGradient out;
  out.loss = 0.0;
  for (int i = 0; i < m; ++i) {
    out.loss -= std::log(std::max(p(i, labels[idx[i]]), 1e-300));
  }
  out.loss = out.loss / m + 0.5 * l2 * weights.squaredNorm();

  Eigen::MatrixXd delta = p;  // P - Y
  for (int i = 0; i < m; ++i) delta(i, labels[idx[i]]) -= 1.0;
  out.grad_weights = rows.transpose() * delta / m + l2 * weights;
  out.grad_bias = delta.colwise().sum().transpose() / m;
  return out;
}

ClassifierModel train_logistic(const EmbeddingMatrix& z, const std::vector<int>& labels,
                               const std::vector<int>& train_idx, double l2, std::uint64_t seed) {
  (void)seed;  // zero init keeps the fit deterministic; nothing to draw
  if (train_idx.empty()) throw std::invalid_argument("train_logistic: empty training set");
  if (static_cast<int>(labels.size()) != z.rows()) {
    throw std::invalid_argument("train_logistic: label count does not match embedding rows");
  }
  std::set<int> classes_seen;
  for (int i : train_idx) classes_seen.insert(labels[i]);
  if (classes_seen.size() < 2) {
    throw std::runtime_error("train_logistic: training set contains a single class");
  }
  const int c = *std::max_element(labels.begin(), labels.end()) + 1;
  const int d = static_cast<int>(z.cols());

  ClassifierModel model;
  model.l2 = l2;
  model.feature_mean = Eigen::VectorXd::Zero(d);
  for (int i : train_idx) model.feature_mean += z.row(i).transpose();
  model.feature_mean /= static_cast<double>(train_idx.size());
  Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
  for (int i : train_idx) {
    var += (z.row(i).transpose() - model.feature_mean).array().square().matrix();
  }
  var /= static_cast<double>(train_idx.size());
  model.feature_std = var.cwiseSqrt().unaryExpr([](double s) { return s < 1e-12 ? 1.0 : s; });

  const Eigen::MatrixXd x = standardize(z, model.feature_mean, model.feature_std);
  model.weights = Eigen::MatrixXd::Zero(d, c);
  model.bias = Eigen::VectorXd::Zero(c);
  for (int iter = 0; iter < kTrainIterations; ++iter) {
    const LogisticGradient g = logistic_loss_grad(x, labels, train_idx, model.weights, model.bias, l2);
    model.weights -= kLearningRate * g.grad_weights;
    model.bias -= kLearningRate * g.grad_bias;
  }
  return model;
}

std::vector<int> predict(const ClassifierModel& model, const EmbeddingMatrix& z,
                         const std::vector<int>& idx) {
  const Eigen::MatrixXd x = standardize(z, model.feature_mean, model.feature_std);
  std::vector<int> out;
  out.reserve(idx.size());
  for (int i : idx) {
    const Eigen::VectorXd logits = (x.row(i) * model.weights).transpose() + model.bias;
    int best = 0;
    for (int k = 1; k < logits.size(); ++k) {
      if (logits(k) > logits(best)) best = k;  // strict: ties keep the smaller id
    }
    out.push_back(best);
  }
  return out;
}

double evaluate_accuracy(const ClassifierModel& model, const EmbeddingMatrix& z,
                         const std::vector<int>& labels, const std::vector<int>& idx) {
  if (idx.empty()) throw std::invalid_argument("evaluate_accuracy: empty index set");
  const std::vector<int> pred = predict(model, z, idx);
  int correct = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (pred[i] == labels[idx[i]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(idx.size());
}

}  // namespace gfa
