#include "gfa/attack.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "gfa/random.hpp"

namespace gfa {

namespace {

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int other_endpoint(const Flip& flip, int target) { return flip.u == target ? flip.v : flip.u; }

// Selection order shared by gf_attack and baseline_degree: score descending,
// then smaller non-target endpoint.
std::vector<ScoredFlip> top_by_score(std::vector<ScoredFlip> scored, int target, int budget) {
  std::sort(scored.begin(), scored.end(), [target](const ScoredFlip& a, const ScoredFlip& b) {
    if (a.score != b.score) return a.score > b.score;
    return other_endpoint(a.flip, target) < other_endpoint(b.flip, target);
  });
  scored.resize(budget);
  return scored;
}

AttackResult assemble_result(const Graph& graph, int target, std::vector<ScoredFlip> chosen) {
  AttackResult result;
  result.target = target;
  Graph perturbed = graph;
  for (const ScoredFlip& sf : chosen) {
    result.selected.push_back(sf.flip);
    result.scores.push_back(sf.score);
    perturbed = apply_flip(perturbed, sf.flip);
  }
  result.perturbed_graph = std::move(perturbed);
  return result;
}

std::vector<Flip> candidates_or_throw(const Graph& graph, int target, int budget) {
  std::vector<Flip> candidates = enumerate_candidates(graph, target);
  if (candidates.empty()) {
    throw std::runtime_error("attack: no valid candidate flips for target " + std::to_string(target));
  }
  if (budget < 1 || budget > static_cast<int>(candidates.size())) {
    throw std::invalid_argument("attack: budget " + std::to_string(budget) +
                                " outside [1, " + std::to_string(candidates.size()) + "]");
  }
  return candidates;
}

}  // namespace

std::vector<Flip> enumerate_candidates(const Graph& graph, int target) {
  const int n = graph.vertex_count();
  if (target < 0 || target >= n) {
    throw std::invalid_argument("enumerate_candidates: target " + std::to_string(target) +
                                " is not a vertex id below " + std::to_string(n));
  }
  std::vector<Flip> flips;
  flips.reserve(n - 1);
  for (int v = 0; v < n; ++v) {
    if (v == target) continue;
    if (graph.has_edge(v, target)) {
      if (graph.degree(v) <= 1 || graph.degree(target) <= 1) continue;  // would isolate
      flips.push_back({v, target, -1});
    } else {
      flips.push_back({v, target, +1});
    }
  }
  return flips;
}

double sym_eigen_factor(const Eigen::VectorXd& values_desc, int tail, int order) {
  const int n = static_cast<int>(values_desc.size());
  if (tail < 1 || tail > n) throw std::invalid_argument("sym_eigen_factor: tail out of range");
  if (order < 1) throw std::invalid_argument("sym_eigen_factor: order must be >= 1");
  double sum = 0.0;
  for (int i = n - tail; i < n; ++i) {
    sum += ipow(values_desc(i) + 1.0, 2 * order);
  }
  return sum;
}

double rw_eigen_factor(const Eigen::VectorXd& values_desc, int tail, int order, double d_min) {
  const int n = static_cast<int>(values_desc.size());
  if (tail < 1 || tail > n) throw std::invalid_argument("rw_eigen_factor: tail out of range");
  if (order < 1) throw std::invalid_argument("rw_eigen_factor: order must be >= 1");
  if (d_min <= 0.0) throw std::invalid_argument("rw_eigen_factor: d_min must be positive");
  double sum = 0.0;
  for (int i = n - tail; i < n; ++i) {
    const double lambda = values_desc(i);
    double term = 0.0;
    double power = 1.0;
    for (int k = 1; k <= order; ++k) {
      power *= lambda;
      term += power;
    }
    // |.| is redundant under the square; the loss is written with it
    const double scaled = std::abs(term / order) / d_min;
    sum += scaled * scaled;
  }
  return sum;
}

ScoringContext make_scoring_context(const EigenSystem& eig, const DegreeProfile& deg,
                                    const Eigen::MatrixXd& x, const AttackConfig& cfg) {
  const int n = static_cast<int>(eig.values.size());
  if (n < 2) throw std::invalid_argument("make_scoring_context: graph too small to score");
  if (cfg.tail < 1) throw std::invalid_argument("make_scoring_context: tail must be >= 1");
  if (cfg.order < 1) throw std::invalid_argument("make_scoring_context: order must be >= 1");
  ScoringContext ctx{eig, deg, cfg, std::min(cfg.tail, n - 1), 0.0};
  ctx.tail_energy = tail_feature_energy(eig, x, ctx.effective_tail);
  return ctx;
}

double score_flip(const ScoringContext& ctx, const Flip& flip) {
  const PerturbedSpectrum spectrum = estimate_perturbed_eigenvalues(ctx.eig, ctx.deg, flip);
  const double factor =
      ctx.cfg.loss_family == LossFamily::sym
          ? sym_eigen_factor(spectrum.values, ctx.effective_tail, ctx.cfg.order)
          : rw_eigen_factor(spectrum.values, ctx.effective_tail, ctx.cfg.order,
                            static_cast<double>(ctx.deg.d_min));
  return factor * ctx.tail_energy;
}

double score_flip_sym(const EigenSystem& eig, const DegreeProfile& deg, const Eigen::MatrixXd& x,
                      const Flip& flip, const AttackConfig& cfg) {
  if (cfg.loss_family != LossFamily::sym) {
    throw std::invalid_argument("score_flip_sym: config selects a different loss family");
  }
  return score_flip(make_scoring_context(eig, deg, x, cfg), flip);
}

double score_flip_rw(const EigenSystem& eig, const DegreeProfile& deg, const Eigen::MatrixXd& x,
                     const Flip& flip, const AttackConfig& cfg) {
  if (cfg.loss_family != LossFamily::rw) {
    throw std::invalid_argument("score_flip_rw: config selects a different loss family");
  }
  return score_flip(make_scoring_context(eig, deg, x, cfg), flip);
}

AttackResult gf_attack(const Graph& graph, const EigenSystem& eig, const DegreeProfile& deg,
                       int target, const AttackConfig& cfg) {
  std::vector<Flip> candidates = candidates_or_throw(graph, target, cfg.budget);
  if (!graph.has_features()) {
    throw std::invalid_argument("gf_attack: graph has no feature matrix");
  }
  const ScoringContext ctx = make_scoring_context(eig, deg, graph.features(), cfg);

  std::vector<ScoredFlip> scored;
  scored.reserve(candidates.size());
  for (const Flip& flip : candidates) {
    const double score = score_flip(ctx, flip);
    if (!std::isfinite(score)) {
      std::cerr << "gf_attack: skipping candidate (" << flip.u << "," << flip.v
                << ") with non-finite score\n";
      continue;
    }
    scored.push_back({flip, score});
  }
  if (static_cast<int>(scored.size()) < cfg.budget) {
    throw std::runtime_error("gf_attack: fewer scored candidates than budget");
  }
  return assemble_result(graph, target, top_by_score(std::move(scored), target, cfg.budget));
}

AttackResult gf_attack(const Graph& graph, int target, const AttackConfig& cfg) {
  const EigenSystem eig = decompose(graph);
  const DegreeProfile deg = degree_profile(graph);
  return gf_attack(graph, eig, deg, target, cfg);
}

AttackResult baseline_random(const Graph& graph, int target, int budget, std::uint64_t seed) {
  std::vector<Flip> candidates = candidates_or_throw(graph, target, budget);
  Rng rng(seed);
  // Partial Fisher-Yates: the first `budget` slots are a uniform sample
  // without replacement.
  for (int i = 0; i < budget; ++i) {
    const std::size_t j = i + rng.below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  std::vector<ScoredFlip> chosen;
  for (int i = 0; i < budget; ++i) chosen.push_back({candidates[i], 0.0});
  return assemble_result(graph, target, std::move(chosen));
}

AttackResult baseline_degree(const Graph& graph, int target, int budget) {
  std::vector<Flip> candidates = candidates_or_throw(graph, target, budget);
  std::vector<ScoredFlip> scored;
  scored.reserve(candidates.size());
  for (const Flip& flip : candidates) {
    const int v = other_endpoint(flip, target);
    scored.push_back({flip, static_cast<double>(graph.degree(v) + graph.degree(target))});
  }
  return assemble_result(graph, target, top_by_score(std::move(scored), target, budget));
}

}  // namespace gfa
