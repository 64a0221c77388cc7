// Writes seeded synthetic datasets in the loader formats, for demos and
// quick experiments.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gfa/synthetic.hpp"

namespace {

void write_graph_files(const gfa::Graph& g, const std::string& prefix) {
  {
    std::ofstream out(prefix + ".edges");
    for (const auto& [u, v] : g.edge_list()) out << u << " " << v << "\n";
  }
  if (g.has_features()) {
    std::ofstream out(prefix + ".features.csv");
    const auto& x = g.features();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out << x(i, j) << (j + 1 < x.cols() ? "," : "");
      }
      out << "\n";
    }
  }
  if (g.has_labels()) {
    std::ofstream out(prefix + ".labels");
    for (int y : g.labels()) out << y << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic graph generator (Erdos-Renyi and two-block SBM)"};

  std::string kind = "sbm2";
  std::string prefix = "synthetic";
  int n = 500;
  double p = 0.05, p_in = 0.05, p_out = 0.005;
  int feature_dim = 8;
  double shift = 0.2, noise = 1.0;
  std::uint64_t seed = 1;

  app.add_option("--kind", kind, "er | sbm2")->check(CLI::IsMember({"er", "sbm2"}));
  app.add_option("--n", n, "vertex count");
  app.add_option("--p", p, "er edge probability");
  app.add_option("--p-in", p_in, "sbm2 within-block edge probability");
  app.add_option("--p-out", p_out, "sbm2 between-block edge probability");
  app.add_option("--feature-dim", feature_dim, "sbm2 feature columns");
  app.add_option("--feature-shift", shift, "sbm2 per-class feature mean offset");
  app.add_option("--feature-noise", noise, "sbm2 feature noise stddev");
  app.add_option("--seed", seed, "rng seed");
  app.add_option("--out-prefix", prefix, "output file prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    gfa::Rng rng(seed);
    const gfa::Graph g = kind == "er"
                             ? gfa::erdos_renyi(n, p, rng)
                             : gfa::sbm_two_block(n, p_in, p_out, feature_dim, shift, noise, rng);
    write_graph_files(g, prefix);
    std::cerr << "wrote " << prefix << ".edges (" << g.vertex_count() << " vertices, "
              << g.edge_count() << " edges)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
