#pragma once

#include "gfa/graph.hpp"
#include "gfa/random.hpp"

namespace gfa {

/// G(n, p): each unordered pair is an edge independently with probability p.
Graph erdos_renyi(int n, double p, Rng& rng);

/// Two equal blocks with within/between edge probabilities, block id as the
/// vertex label, and feature rows drawn N(mu_label, noise^2 I) where
/// mu_0 = +shift * 1 and mu_1 = -shift * 1 over `feature_dim` columns.
Graph sbm_two_block(int n, double p_in, double p_out, int feature_dim, double feature_shift,
                    double feature_noise, Rng& rng);

}  // namespace gfa
