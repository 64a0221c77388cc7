#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "gfa/graph.hpp"
#include "gfa/random.hpp"
#include "gfa/synthetic.hpp"
#include "gfa/victims.hpp"
#include "support.hpp"

using namespace gfa;

namespace {

Graph k2_with(const Eigen::MatrixXd& x) {
  Graph g(2, {{0, 1}});
  g.set_features(x);
  return g;
}

Graph random_connected(int n, double p, Rng& rng) {
  return largest_connected_component(erdos_renyi(n, p, rng)).graph;
}

}  // namespace

TEST_CASE("sgc_embed matches the hand-computed filters") {
  Eigen::MatrixXd x(2, 1);
  x << 1, 0;
  const Graph k2 = k2_with(x);

  CHECK((sgc_embed(k2, 0) - x).norm() == doctest::Approx(0.0));

  const EmbeddingMatrix z1 = sgc_embed(k2, 1);
  CHECK(z1(0, 0) == doctest::Approx(1.0));
  CHECK(z1(1, 0) == doctest::Approx(1.0));

  const EmbeddingMatrix z2 = sgc_embed(k2, 2);
  CHECK(z2(0, 0) == doctest::Approx(2.0));
  CHECK(z2(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("sgc_embed is linear in the features and rejects isolated vertices") {
  Rng rng(53);
  Graph g = random_connected(30, 0.2, rng);
  const int n = g.vertex_count();
  const Eigen::MatrixXd x1 = testsupport::random_matrix(n, 3, rng);
  const Eigen::MatrixXd x2 = testsupport::random_matrix(n, 3, rng);

  Graph ga = g, gb = g, gsum = g;
  ga.set_features(x1);
  gb.set_features(x2);
  gsum.set_features(x1 + x2);
  const EmbeddingMatrix sum_of_parts = sgc_embed(ga, 2) + sgc_embed(gb, 2);
  CHECK((sgc_embed(gsum, 2) - sum_of_parts).cwiseAbs().maxCoeff() <= 1e-8);

  Graph isolated(3, {{0, 1}});
  isolated.set_features(Eigen::MatrixXd::Zero(3, 1));
  CHECK_THROWS_AS(sgc_embed(isolated, 1), std::runtime_error);
}

TEST_CASE("filter eigenvalues of (A_hat + I)^K are (lambda + 1)^K") {
  Rng rng(59);
  const Graph g = random_connected(25, 0.2, rng);
  const int n = g.vertex_count();
  const Eigen::MatrixXd a_hat = normalized_adjacency(g);
  const int order = 3;

  Eigen::MatrixXd filter = Eigen::MatrixXd::Identity(n, n);
  for (int k = 0; k < order; ++k) filter = (a_hat + Eigen::MatrixXd::Identity(n, n)) * filter;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> base(a_hat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> filt(filter);
  Eigen::VectorXd expected(n);
  for (int i = 0; i < n; ++i) expected(i) = std::pow(base.eigenvalues()(i) + 1.0, order);
  std::sort(expected.begin(), expected.end());
  CHECK((filt.eigenvalues() - expected).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("netmf_matrix on K2 equals the closed form") {
  Eigen::MatrixXd x(2, 1);
  x << 1, 0;
  const NetMFMatrix netmf = netmf_matrix(k2_with(x), 1, 1);
  CHECK(std::abs(netmf.M(0, 0)) <= 1e-12);
  CHECK(std::abs(netmf.M(1, 1)) <= 1e-12);
  CHECK(netmf.M(0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(netmf.M(1, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("netmf_matrix at window 1 matches the one-step closed form") {
  Rng rng(61);
  const Graph g = random_connected(40, 0.15, rng);
  const int n = g.vertex_count();
  const DegreeProfile deg = degree_profile(g);

  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v : g.neighbors(u)) {
      const double value = static_cast<double>(deg.volume) / (deg.degrees[u] * deg.degrees[v]);
      expected(u, v) = std::log(std::max(value, 1.0));
    }
  }
  const NetMFMatrix netmf = netmf_matrix(g, 1, 1);
  CHECK((netmf.M - expected).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("netmf_matrix is symmetric and validates its arguments") {
  Rng rng(67);
  const Graph g = random_connected(35, 0.15, rng);
  const NetMFMatrix netmf = netmf_matrix(g, 5, 1);
  CHECK((netmf.M - netmf.M.transpose()).cwiseAbs().maxCoeff() <= 1e-9);

  CHECK_THROWS_AS(netmf_matrix(g, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(netmf_matrix(g, 1, 0), std::invalid_argument);
  Graph isolated(3, {{0, 1}});
  CHECK_THROWS_AS(netmf_matrix(isolated, 1, 1), std::runtime_error);
}

TEST_CASE("netmf_embed factorizes deterministically with the expected rank behavior") {
  Rng rng(71);
  const Graph g = random_connected(40, 0.15, rng);
  const NetMFMatrix netmf = netmf_matrix(g, 2, 1);
  const int n = static_cast<int>(netmf.M.rows());

  const EmbeddingMatrix z1 = netmf_embed(netmf, 8);
  const EmbeddingMatrix z2 = netmf_embed(netmf, 8);
  CHECK(z1.rows() == n);
  CHECK(z1.cols() == 8);
  CHECK((z1 - z2).cwiseAbs().maxCoeff() == 0.0);  // sign convention pins the output

  CHECK_THROWS_AS(netmf_embed(netmf, 0), std::invalid_argument);
  CHECK_THROWS_AS(netmf_embed(netmf, n + 1), std::invalid_argument);

  // SVD exactness at full rank and monotone truncation error
  Eigen::BDCSVD<Eigen::MatrixXd> svd(netmf.M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd full = svd.matrixU() * svd.singularValues().asDiagonal() * svd.matrixV().transpose();
  CHECK((full - netmf.M).norm() <= 1e-6 * netmf.M.norm());
  double prev = std::numeric_limits<double>::infinity();
  for (int d : {2, 8, 16, n}) {
    const Eigen::MatrixXd approx = svd.matrixU().leftCols(d) * svd.singularValues().head(d).asDiagonal() *
                                   svd.matrixV().leftCols(d).transpose();
    const double err = (approx - netmf.M).norm();
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
}

TEST_CASE("train_logistic separates a separable toy exactly") {
  Rng rng(73);
  const int per_class = 15;
  EmbeddingMatrix z(2 * per_class, 2);
  std::vector<int> labels(2 * per_class);
  std::vector<int> train_idx;
  for (int i = 0; i < per_class; ++i) {
    z(i, 0) = 2.0 + 0.3 * rng.normal();
    z(i, 1) = 2.0 + 0.3 * rng.normal();
    labels[i] = 0;
    z(per_class + i, 0) = -2.0 + 0.3 * rng.normal();
    z(per_class + i, 1) = -2.0 + 0.3 * rng.normal();
    labels[per_class + i] = 1;
    train_idx.push_back(i);
    train_idx.push_back(per_class + i);
  }
  const ClassifierModel model = train_logistic(z, labels, train_idx, 1e-4, 1);
  CHECK(evaluate_accuracy(model, z, labels, train_idx) == doctest::Approx(1.0));
}

TEST_CASE("train_logistic on all-zero embeddings predicts the majority class") {
  const EmbeddingMatrix z = EmbeddingMatrix::Zero(6, 2);
  const std::vector<int> labels{0, 0, 0, 1, 1, 2};
  const std::vector<int> idx{0, 1, 2, 3, 4, 5};
  const ClassifierModel model = train_logistic(z, labels, idx, 1e-4, 1);
  for (int pred : predict(model, z, idx)) CHECK(pred == 0);
}

TEST_CASE("train_logistic is deterministic and rejects degenerate training sets") {
  Rng rng(79);
  const EmbeddingMatrix z = testsupport::random_matrix(20, 4, rng);
  std::vector<int> labels(20);
  for (int i = 0; i < 20; ++i) labels[i] = i % 3;
  std::vector<int> idx(20);
  for (int i = 0; i < 20; ++i) idx[i] = i;

  const ClassifierModel a = train_logistic(z, labels, idx, 1e-4, 7);
  const ClassifierModel b = train_logistic(z, labels, idx, 1e-4, 7);
  CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.bias - b.bias).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(train_logistic(z, labels, {}, 1e-4, 1), std::invalid_argument);
  CHECK_THROWS_AS(train_logistic(z, labels, {0, 3, 6}, 1e-4, 1), std::runtime_error);  // all class 0
}

TEST_CASE("analytic logistic gradient matches central finite differences") {
  Rng rng(83);
  const int m = 10, d = 3, c = 3;
  const Eigen::MatrixXd x = testsupport::random_matrix(m, d, rng);
  std::vector<int> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = static_cast<int>(rng.below(c));
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  Eigen::MatrixXd w = 0.3 * testsupport::random_matrix(d, c, rng);
  Eigen::VectorXd bias = 0.1 * testsupport::random_matrix(c, 1, rng);
  const double l2 = 1e-3;

  const LogisticGradient g = logistic_loss_grad(x, labels, idx, w, bias, l2);
  const double h = 1e-6;
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < c; ++k) {
      Eigen::MatrixXd wp = w, wm = w;
      wp(r, k) += h;
      wm(r, k) -= h;
      const double fd = (logistic_loss_grad(x, labels, idx, wp, bias, l2).loss -
                         logistic_loss_grad(x, labels, idx, wm, bias, l2).loss) /
                        (2 * h);
      CHECK(std::abs(g.grad_weights(r, k) - fd) <=
            1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
  for (int k = 0; k < c; ++k) {
    Eigen::VectorXd bp = bias, bm = bias;
    bp(k) += h;
    bm(k) -= h;
    const double fd = (logistic_loss_grad(x, labels, idx, w, bp, l2).loss -
                       logistic_loss_grad(x, labels, idx, w, bm, l2).loss) /
                      (2 * h);
    CHECK(std::abs(g.grad_bias(k) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("evaluate_accuracy counts argmax hits with smallest-id ties") {
  ClassifierModel model;
  model.weights = Eigen::MatrixXd(1, 2);
  model.weights << 1.0, -1.0;
  model.bias = Eigen::VectorXd::Zero(2);
  model.feature_mean = Eigen::VectorXd::Zero(1);
  model.feature_std = Eigen::VectorXd::Ones(1);

  EmbeddingMatrix z(4, 1);
  z << 1, -1, 1, 1;
  const std::vector<int> labels{0, 1, 1, 0};
  const std::vector<int> idx{0, 1, 2, 3};
  CHECK(evaluate_accuracy(model, z, labels, idx) == doctest::Approx(0.75));

  EmbeddingMatrix all_right(2, 1);
  all_right << 1, -1;
  CHECK(evaluate_accuracy(model, all_right, {0, 1}, {0, 1}) == doctest::Approx(1.0));
  CHECK(evaluate_accuracy(model, all_right, {1, 0}, {0, 1}) == doctest::Approx(0.0));

  // z = 0 ties both logits at zero, so the smaller class id wins
  EmbeddingMatrix tie(1, 1);
  tie << 0.0;
  CHECK(predict(model, tie, {0})[0] == 0);

  CHECK_THROWS_AS(evaluate_accuracy(model, z, labels, {}), std::invalid_argument);
}
