#include "gfa/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gfa/random.hpp"
#include "gfa/spectral.hpp"

namespace gfa {

namespace {

using nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

double ms_between(clock_type::time_point a, clock_type::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

struct PreparedExperiment {
  Graph graph;
  std::vector<int> original_ids;
  Split split;
  EmbeddingMatrix clean_embedding;
  ClassifierModel clean_model;
  std::vector<int> targets;  // ascending
  EigenSystem eig;           // populated for the gf attacks
  DegreeProfile deg;
};

void validate(const ExperimentConfig& cfg) {
  if (cfg.mode == Mode::evasion && cfg.victim != Victim::sgc) {
    throw std::invalid_argument(
        "config: evasion mode is only valid for the sgc victim; "
        "factorization victims must be attacked under poisoning");
  }
  if (cfg.attack_cfg.budget < 1) throw std::invalid_argument("config: budget must be >= 1");
  if (cfg.num_targets < 1) throw std::invalid_argument("config: num_targets must be >= 1");
  if (cfg.victim_params.dim < 1) throw std::invalid_argument("config: victim dim must be >= 1");
}

EmbeddingMatrix embed_victim(const ExperimentConfig& cfg, const Graph& graph) {
  switch (cfg.victim) {
    case Victim::sgc:
      return sgc_embed(graph, cfg.victim_params.order);
    case Victim::netmf_deepwalk:
      return netmf_embed(netmf_matrix(graph, cfg.victim_params.window, cfg.victim_params.negatives),
                         std::min(cfg.victim_params.dim, graph.vertex_count()));
    case Victim::netmf_line:
      return netmf_embed(netmf_matrix(graph, 1, cfg.victim_params.negatives),
                         std::min(cfg.victim_params.dim, graph.vertex_count()));
  }
  throw std::logic_error("embed_victim: unknown victim");
}

PreparedExperiment prepare(const ExperimentConfig& cfg) {
  validate(cfg);
  Graph loaded = load_edge_list(cfg.edges_path);
  loaded = load_features(cfg.features_path, std::move(loaded));
  loaded = load_labels(cfg.labels_path, std::move(loaded));
  LccGraph lcc = largest_connected_component(loaded);

  PreparedExperiment prep;
  prep.graph = std::move(lcc.graph);
  prep.original_ids = std::move(lcc.original_ids);
  prep.split = split_dataset(prep.graph.labels(), cfg.seed);

  prep.clean_embedding = embed_victim(cfg, prep.graph);
  prep.clean_model = train_logistic(prep.clean_embedding, prep.graph.labels(), prep.split.train,
                                    cfg.victim_params.l2, cfg.seed);

  std::vector<int> eligible;
  for (int v : prep.split.test) {
    if (prep.graph.degree(v) >= 1) eligible.push_back(v);
  }
  if (static_cast<int>(eligible.size()) < cfg.num_targets) {
    throw std::runtime_error("config: only " + std::to_string(eligible.size()) +
                             " eligible test targets, need " + std::to_string(cfg.num_targets));
  }
  Rng rng(mix_seed(cfg.seed, 0x7a26));
  rng.shuffle(eligible);
  prep.targets.assign(eligible.begin(), eligible.begin() + cfg.num_targets);
  std::sort(prep.targets.begin(), prep.targets.end());

  if (cfg.attack == AttackKind::gf_sym || cfg.attack == AttackKind::gf_rw) {
    prep.eig = decompose(prep.graph);
    prep.deg = degree_profile(prep.graph);
  }
  return prep;
}

AttackResult attack_target(const ExperimentConfig& cfg, const PreparedExperiment& prep, int target) {
  switch (cfg.attack) {
    case AttackKind::gf_sym:
    case AttackKind::gf_rw: {
      AttackConfig acfg = cfg.attack_cfg;
      acfg.loss_family = cfg.attack == AttackKind::gf_sym ? LossFamily::sym : LossFamily::rw;
      return gf_attack(prep.graph, prep.eig, prep.deg, target, acfg);
    }
    case AttackKind::random:
      return baseline_random(prep.graph, target, cfg.attack_cfg.budget,
                             mix_seed(cfg.attack_cfg.seed, static_cast<std::uint64_t>(target)));
    case AttackKind::degree:
      return baseline_degree(prep.graph, target, cfg.attack_cfg.budget);
  }
  throw std::logic_error("attack_target: unknown attack kind");
}

bool correct_after_attack(const ExperimentConfig& cfg, const PreparedExperiment& prep,
                          const AttackResult& result, int target) {
  const EmbeddingMatrix z = embed_victim(cfg, result.perturbed_graph);
  const std::vector<int>& labels = prep.graph.labels();
  if (cfg.mode == Mode::evasion) {
    return predict(prep.clean_model, z, {target})[0] == labels[target];
  }
  const ClassifierModel retrained =
      train_logistic(z, labels, prep.split.train, cfg.victim_params.l2, cfg.seed);
  return predict(retrained, z, {target})[0] == labels[target];
}

RuntimeStats time_attack_phase(const ExperimentConfig& cfg, const PreparedExperiment& prep,
                               int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("measure_runtime: repetitions must be >= 1");
  std::vector<double> per_target_ms;
  for (int r = 0; r < repetitions; ++r) {
    const auto t0 = clock_type::now();
    for (int target : prep.targets) {
      (void)attack_target(cfg, prep, target);
    }
    const auto t1 = clock_type::now();
    per_target_ms.push_back(ms_between(t0, t1) / static_cast<double>(prep.targets.size()));
  }
  RuntimeStats stats;
  stats.repetitions = repetitions;
  double mean = 0.0;
  for (double t : per_target_ms) mean += t;
  mean /= repetitions;
  stats.per_target_mean_ms = mean;
  if (repetitions >= 2) {
    double ss = 0.0;
    for (double t : per_target_ms) ss += (t - mean) * (t - mean);
    stats.per_target_stddev_ms = std::sqrt(ss / (repetitions - 1));
  }
  return stats;
}

ordered_json flip_json(const Flip& f) {
  return ordered_json{{"u", std::min(f.u, f.v)}, {"v", std::max(f.u, f.v)}, {"sign", f.sign}};
}

ordered_json config_json(const ExperimentConfig& cfg) {
  return ordered_json{
      {"edges", cfg.edges_path},
      {"features", cfg.features_path},
      {"labels", cfg.labels_path},
      {"victim", to_string(cfg.victim)},
      {"victim_params",
       {{"order", cfg.victim_params.order},
        {"window", cfg.victim_params.window},
        {"negatives", cfg.victim_params.negatives},
        {"dim", cfg.victim_params.dim},
        {"l2", cfg.victim_params.l2}}},
      {"attack", to_string(cfg.attack)},
      {"attack_params",
       {{"order", cfg.attack_cfg.order},
        {"tail", cfg.attack_cfg.tail},
        {"budget", cfg.attack_cfg.budget},
        {"negative_samples", cfg.attack_cfg.negative_samples},
        {"seed", cfg.attack_cfg.seed}}},
      {"mode", to_string(cfg.mode)},
      {"num_targets", cfg.num_targets},
      {"seed", cfg.seed},
      {"out", cfg.out_path},
      {"time_repetitions", cfg.time_repetitions},
  };
}

}  // namespace

std::string to_string(Victim v) {
  switch (v) {
    case Victim::sgc: return "sgc";
    case Victim::netmf_deepwalk: return "netmf-deepwalk";
    case Victim::netmf_line: return "netmf-line";
  }
  return "?";
}

std::string to_string(AttackKind a) {
  switch (a) {
    case AttackKind::gf_sym: return "gf-sym";
    case AttackKind::gf_rw: return "gf-rw";
    case AttackKind::random: return "random";
    case AttackKind::degree: return "degree";
  }
  return "?";
}

std::string to_string(Mode m) { return m == Mode::evasion ? "evasion" : "poisoning"; }

Victim victim_from_string(const std::string& s) {
  if (s == "sgc") return Victim::sgc;
  if (s == "netmf-deepwalk") return Victim::netmf_deepwalk;
  if (s == "netmf-line") return Victim::netmf_line;
  throw std::invalid_argument("unknown victim: " + s);
}

AttackKind attack_from_string(const std::string& s) {
  if (s == "gf-sym") return AttackKind::gf_sym;
  if (s == "gf-rw") return AttackKind::gf_rw;
  if (s == "random") return AttackKind::random;
  if (s == "degree") return AttackKind::degree;
  throw std::invalid_argument("unknown attack: " + s);
}

Mode mode_from_string(const std::string& s) {
  if (s == "evasion") return Mode::evasion;
  if (s == "poisoning") return Mode::poisoning;
  throw std::invalid_argument("unknown mode: " + s);
}

Split split_dataset(const std::vector<int>& labels, std::uint64_t seed) {
  const int n = static_cast<int>(labels.size());
  if (n < 10) {
    throw std::invalid_argument("split_dataset: need at least 10 vertices, got " + std::to_string(n));
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  const int n_train = static_cast<int>(std::llround(0.1 * n));
  const int n_val = static_cast<int>(std::llround(0.1 * n));
  Split split;
  split.train.assign(order.begin(), order.begin() + n_train);
  split.val.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  split.test.assign(order.begin() + n_train + n_val, order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const PreparedExperiment prep = prepare(cfg);
  const std::vector<int>& labels = prep.graph.labels();

  ExperimentReport report;
  report.config = cfg;
  int clean_hits = 0;
  int attacked_hits = 0;
  for (int target : prep.targets) {
    TargetRecord rec;
    rec.target = target;
    rec.original_id = prep.original_ids[target];
    rec.clean_correct = predict(prep.clean_model, prep.clean_embedding, {target})[0] == labels[target];

    const auto t0 = clock_type::now();
    const AttackResult result = attack_target(cfg, prep, target);
    const auto t1 = clock_type::now();
    if (cfg.time_repetitions > 0) rec.wall_time_ms = ms_between(t0, t1);

    rec.flips = result.selected;
    rec.scores = result.scores;
    rec.attacked_correct = correct_after_attack(cfg, prep, result, target);

    clean_hits += rec.clean_correct ? 1 : 0;
    attacked_hits += rec.attacked_correct ? 1 : 0;
    report.targets.push_back(std::move(rec));
  }
  const double n_targets = static_cast<double>(prep.targets.size());
  report.clean_accuracy = clean_hits / n_targets;
  report.attacked_accuracy = attacked_hits / n_targets;
  report.accuracy_drop = report.clean_accuracy - report.attacked_accuracy;

  if (cfg.time_repetitions > 0) {
    report.timing = time_attack_phase(cfg, prep, cfg.time_repetitions);
  }
  if (!cfg.out_path.empty()) {
    write_report(report, cfg.out_path);
  }
  return report;
}

RuntimeStats measure_runtime(const ExperimentConfig& cfg, int repetitions) {
  const PreparedExperiment prep = prepare(cfg);
  return time_attack_phase(cfg, prep, repetitions);
}

std::string report_json(const ExperimentReport& report) {
  ordered_json doc;
  doc["config"] = config_json(report.config);
  doc["aggregate"] = ordered_json{{"clean_accuracy", report.clean_accuracy},
                                  {"attacked_accuracy", report.attacked_accuracy},
                                  {"accuracy_drop", report.accuracy_drop}};
  doc["targets"] = ordered_json::array();
  for (const TargetRecord& rec : report.targets) {
    ordered_json t;
    t["target"] = rec.target;
    t["original_id"] = rec.original_id;
    t["clean_correct"] = rec.clean_correct;
    t["attacked_correct"] = rec.attacked_correct;
    t["flips"] = ordered_json::array();
    for (const Flip& f : rec.flips) t["flips"].push_back(flip_json(f));
    t["scores"] = rec.scores;
    if (rec.wall_time_ms) {
      t["wall_time_ms"] = *rec.wall_time_ms;
    } else {
      t["wall_time_ms"] = nullptr;
    }
    doc["targets"].push_back(std::move(t));
  }
  if (report.timing) {
    ordered_json timing;
    timing["repetitions"] = report.timing->repetitions;
    timing["per_target_mean_ms"] = report.timing->per_target_mean_ms;
    if (report.timing->per_target_stddev_ms) {
      timing["per_target_stddev_ms"] = *report.timing->per_target_stddev_ms;
    } else {
      timing["per_target_stddev_ms"] = nullptr;
    }
    doc["timing"] = std::move(timing);
  }
  return doc.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << report_json(report);
}

std::string csv_header() {
  return "edges,victim,attack,mode,order,tail,budget,seed,num_targets,"
         "clean_accuracy,attacked_accuracy,accuracy_drop";
}

std::string csv_summary_row(const ExperimentReport& report) {
  const ExperimentConfig& cfg = report.config;
  std::ostringstream row;
  row << cfg.edges_path << ',' << to_string(cfg.victim) << ',' << to_string(cfg.attack) << ','
      << to_string(cfg.mode) << ',' << cfg.attack_cfg.order << ',' << cfg.attack_cfg.tail << ','
      << cfg.attack_cfg.budget << ',' << cfg.seed << ',' << cfg.num_targets << ','
      << report.clean_accuracy << ',' << report.attacked_accuracy << ',' << report.accuracy_drop;
  return row.str();
}

}  // namespace gfa
