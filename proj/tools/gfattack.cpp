// Experiment runner: loads an edge-list dataset, attacks sampled targets,
// and reports the accuracy change as JSON.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfa/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral edge-flip attacks on graph embedding victims"};

  std::string edges, features, labels, out, csv;
  std::string victim = "sgc";
  std::string attack = "gf-sym";
  std::string mode;
  gfa::ExperimentConfig cfg;

  app.add_option("--edges", edges, "edge list file, one 'u v' pair per line")->required();
  app.add_option("--features", features, "CSV feature file, row i = vertex i")->required();
  app.add_option("--labels", labels, "label file, one class id per line")->required();
  app.add_option("--victim", victim, "sgc | netmf-deepwalk | netmf-line")
      ->check(CLI::IsMember({"sgc", "netmf-deepwalk", "netmf-line"}));
  app.add_option("--attack", attack, "gf-sym | gf-rw | random | degree")
      ->check(CLI::IsMember({"gf-sym", "gf-rw", "random", "degree"}));
  app.add_option("--order", cfg.attack_cfg.order, "attack filter order K (default 2)");
  app.add_option("--tail", cfg.attack_cfg.tail, "smallest eigenvalues scored, n-T (default 128)");
  app.add_option("--budget", cfg.attack_cfg.budget, "edge flips per target (default 1)");
  app.add_option("--mode", mode, "evasion | poisoning (default: evasion for sgc, else poisoning)")
      ->check(CLI::IsMember({"evasion", "poisoning"}));
  app.add_option("--targets", cfg.num_targets, "number of attacked test vertices (default 40)");
  app.add_option("--seed", cfg.seed, "seed for splits, target sampling, and baselines");
  app.add_option("--out", out, "report path; prints to stdout when omitted");
  app.add_option("--attack-negatives", cfg.attack_cfg.negative_samples,
                 "negative samples b carried by the rw loss config (default 1)");
  app.add_option("--victim-order", cfg.victim_params.order, "sgc layers (default 2)");
  app.add_option("--victim-window", cfg.victim_params.window, "random-walk window (default 5)");
  app.add_option("--victim-negatives", cfg.victim_params.negatives,
                 "victim negative samples (default 1)");
  app.add_option("--victim-dim", cfg.victim_params.dim, "embedding dimension (default 32)");
  app.add_option("--victim-l2", cfg.victim_params.l2, "classifier l2 strength (default 1e-4)");
  app.add_option("--time-repetitions", cfg.time_repetitions,
                 "also time the attack phase this many times (default 0 = off)");
  app.add_option("--csv", csv, "append a one-line summary row to this CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.edges_path = edges;
    cfg.features_path = features;
    cfg.labels_path = labels;
    cfg.victim = gfa::victim_from_string(victim);
    cfg.attack = gfa::attack_from_string(attack);
    cfg.mode = mode.empty()
                   ? (cfg.victim == gfa::Victim::sgc ? gfa::Mode::evasion : gfa::Mode::poisoning)
                   : gfa::mode_from_string(mode);
    cfg.out_path = out;
    cfg.attack_cfg.seed = cfg.seed;

    const gfa::ExperimentReport report = gfa::run_experiment(cfg);
    if (out.empty()) {
      std::cout << gfa::report_json(report);
    } else {
      std::cerr << "report written to " << out << "\n";
    }
    std::cerr << "clean " << report.clean_accuracy << " -> attacked " << report.attacked_accuracy
              << " (drop " << report.accuracy_drop << ") over " << report.targets.size()
              << " targets\n";

    if (!csv.empty()) {
      const bool fresh = !std::ifstream(csv).good();
      std::ofstream f(csv, std::ios::app);
      if (!f) throw std::runtime_error("cannot open csv file: " + csv);
      if (fresh) f << gfa::csv_header() << "\n";
      f << gfa::csv_summary_row(report) << "\n";
    }
  } catch (const std::exception& e) {
    nlohmann::ordered_json err{{"error", {{"type", "experiment_failure"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
