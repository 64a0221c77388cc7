#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfa/attack.hpp"
#include "gfa/graph.hpp"
#include "gfa/victims.hpp"

namespace gfa {

enum class Victim { sgc, netmf_deepwalk, netmf_line };
enum class AttackKind { gf_sym, gf_rw, random, degree };
enum class Mode { evasion, poisoning };

std::string to_string(Victim v);
std::string to_string(AttackKind a);
std::string to_string(Mode m);
Victim victim_from_string(const std::string& s);
AttackKind attack_from_string(const std::string& s);
Mode mode_from_string(const std::string& s);

struct VictimParams {
  int order = 2;      // sgc filter order
  int window = 5;     // random-walk window (forced to 1 for the line victim)
  int negatives = 1;
  int dim = 32;
  double l2 = 1e-4;
};

struct ExperimentConfig {
  std::string edges_path;
  std::string features_path;
  std::string labels_path;
  Victim victim = Victim::sgc;
  VictimParams victim_params;
  AttackKind attack = AttackKind::gf_sym;
  AttackConfig attack_cfg;
  Mode mode = Mode::evasion;
  int num_targets = 40;
  std::uint64_t seed = 1;
  std::string out_path;
  int time_repetitions = 0;  // > 0 also measures attack-phase wall time
};

struct TargetRecord {
  int target = -1;       // id inside the largest connected component
  int original_id = -1;  // id in the input files
  bool clean_correct = false;
  bool attacked_correct = false;
  std::vector<Flip> flips;
  std::vector<double> scores;
  std::optional<double> wall_time_ms;  // absent unless timing was requested
};

struct RuntimeStats {
  int repetitions = 0;
  double per_target_mean_ms = 0.0;
  std::optional<double> per_target_stddev_ms;  // absent when repetitions == 1
};

struct ExperimentReport {
  ExperimentConfig config;
  double clean_accuracy = 0.0;
  double attacked_accuracy = 0.0;
  double accuracy_drop = 0.0;  // clean - attacked over the target set
  std::vector<TargetRecord> targets;
  std::optional<RuntimeStats> timing;
};

struct Split {
  std::vector<int> train, val, test;
};

/// Seeded 10% / 10% / 80% partition of vertex ids.
Split split_dataset(const std::vector<int>& labels, std::uint64_t seed);

/// Loads the dataset, restricts to the largest connected component, trains
/// the victim on the clean graph, attacks each sampled target independently
/// from the clean graph, and aggregates the accuracy change. Writes the JSON
/// report to config.out_path when it is set.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Wall time of the attack phase only (victim training excluded), averaged
/// per target over `repetitions` runs.
RuntimeStats measure_runtime(const ExperimentConfig& config, int repetitions);

std::string report_json(const ExperimentReport& report);
void write_report(const ExperimentReport& report, const std::string& path);

/// One summary line per report for table assembly.
std::string csv_header();
std::string csv_summary_row(const ExperimentReport& report);

}  // namespace gfa
