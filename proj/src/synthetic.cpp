#include "gfa/synthetic.hpp"

#include <stdexcept>

namespace gfa {

Graph erdos_renyi(int n, double p, Rng& rng) {
  if (n < 1) throw std::invalid_argument("erdos_renyi: n must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

Graph sbm_two_block(int n, double p_in, double p_out, int feature_dim, double feature_shift,
                    double feature_noise, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sbm_two_block: n must be >= 2");
  if (feature_dim < 1) throw std::invalid_argument("sbm_two_block: feature_dim must be >= 1");
  const int half = n / 2;
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = v < half ? 0 : 1;

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = labels[i] == labels[j] ? p_in : p_out;
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  Graph g(n, edges);

  Eigen::MatrixXd x(n, feature_dim);
  for (int v = 0; v < n; ++v) {
    const double mu = labels[v] == 0 ? feature_shift : -feature_shift;
    for (int j = 0; j < feature_dim; ++j) x(v, j) = mu + feature_noise * rng.normal();
  }
  g.set_features(std::move(x));
  g.set_labels(std::move(labels));
  return g;
}

}  // namespace gfa
