#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gfa/graph.hpp"
#include "gfa/spectral.hpp"

namespace gfa {

enum class LossFamily { sym, rw };

struct AttackConfig {
  LossFamily loss_family = LossFamily::sym;
  int order = 2;             // filter order / window size K
  int tail = 128;            // number of smallest eigenvalues scored (n - T)
  int budget = 1;            // edge flips per target
  int negative_samples = 1;  // b; carried for the rw family, not used by the loss
  std::uint64_t seed = 1;
};

struct ScoredFlip {
  Flip flip;
  double score = 0.0;
};

struct AttackResult {
  int target = -1;
  std::vector<Flip> selected;
  std::vector<double> scores;
  Graph perturbed_graph;
};

/// One flip per vertex v != target (deletion if the edge exists, insertion
/// otherwise), excluding deletions that would drop an endpoint to degree 0.
/// Candidates come back with u = the non-target endpoint, v = target, in
/// ascending order of u.
std::vector<Flip> enumerate_candidates(const Graph& graph, int target);

/// Eigenvalue factor of the symmetric-filter loss: the sum over the `tail`
/// smallest entries of a descending spectrum of (lambda + 1)^(2K).
double sym_eigen_factor(const Eigen::VectorXd& values_desc, int tail, int order);

/// Eigenvalue factor of the random-walk-filter loss: the sum over the `tail`
/// smallest entries of ((1/d_min) |(1/K) sum_k lambda^k|)^2.
double rw_eigen_factor(const Eigen::VectorXd& values_desc, int tail, int order, double d_min);

/// Shared per-graph scoring state: the clean eigensystem, degrees, features,
/// the tail clamped to n-1, and the tail feature energy (constant across
/// candidates, so computed once).
struct ScoringContext {
  const EigenSystem& eig;
  const DegreeProfile& deg;
  AttackConfig cfg;
  int effective_tail = 1;
  double tail_energy = 0.0;
};

ScoringContext make_scoring_context(const EigenSystem& eig, const DegreeProfile& deg,
                                    const Eigen::MatrixXd& x, const AttackConfig& cfg);

double score_flip(const ScoringContext& ctx, const Flip& flip);

double score_flip_sym(const EigenSystem& eig, const DegreeProfile& deg, const Eigen::MatrixXd& x,
                      const Flip& flip, const AttackConfig& cfg);
double score_flip_rw(const EigenSystem& eig, const DegreeProfile& deg, const Eigen::MatrixXd& x,
                     const Flip& flip, const AttackConfig& cfg);

/// Scores every candidate against a precomputed clean eigensystem and picks
/// the `budget` best in one pass (ties broken by the smaller non-target
/// endpoint id). All selected flips are applied together to form the
/// perturbed graph.
AttackResult gf_attack(const Graph& graph, const EigenSystem& eig, const DegreeProfile& deg,
                       int target, const AttackConfig& cfg);

/// Convenience overload that decomposes the graph itself.
AttackResult gf_attack(const Graph& graph, int target, const AttackConfig& cfg);

/// Budget-many candidates drawn uniformly without replacement.
AttackResult baseline_random(const Graph& graph, int target, int budget, std::uint64_t seed);

/// Candidates ranked by degree centrality d_v + d_target on the clean graph.
AttackResult baseline_degree(const Graph& graph, int target, int budget);

}  // namespace gfa
