#pragma once

#include <optional>
#include <vector>

#include "gsbm/graph.hpp"
#include "gsbm/partition.hpp"
#include "gsbm/preference.hpp"

namespace gsbm {

/**
 * Classic label-propagation objective: sum over ordered pairs (i, j),
 * i != j, of W_ij [z_i == z_j] — i.e. twice the intra-community edge
 * weight.
 */
double lpa_objective(const WeightedGraph& g, const Partition& p);

/**
 * Profile likelihood objective of the preference model:
 * Q = sum_z lambda_z^2 with lambda_z the principal eigenvalue of the
 * community subgraph. Maximizing Q minimizes the Gaussian residual
 * sigma^2. Communities with no intra edges contribute 0.
 *
 * Throws NegativeWeightError if some community subgraph has a negative
 * intra-community weight.
 */
double gsbm_objective(const WeightedGraph& g, const Partition& p, double tol = kPowerTol,
                      int max_iters = kPowerMaxIters);

/**
 * Residual variance at the model optimum:
 * sigma^2 = (1/n^2) sum over ordered pairs (i, j), including i == j with
 * W_ii = 0, of (W_ij - p_i p_j [z_i == z_j])^2. Fallback (all-ones)
 * preference vectors are treated as p = 0 here: they exist only to keep
 * label updates meaningful on edgeless communities.
 *
 * `prefs` must cover every community of `p` exactly once
 * (InconsistentStateError otherwise). Evaluated sparsely as
 * (2 sum_E w^2 - 2 sum_z p^T W_z p + sum_z (sum_{i in z} p_i^2)^2) / n^2.
 */
double sigma2_mle(const WeightedGraph& g, const Partition& p,
                  const std::vector<PreferenceVector>& prefs);

/**
 * Constant-mean (constrained) objective. With mu absent, each community
 * uses its MLE mean mu_z = S_z / n_z^2 (S_z = intra weight over ordered
 * pairs), giving Q = sum_z S_z^2 / n_z^2. With mu fixed,
 * Q = mu * (2 * lpa_objective - mu * sum_z n_z^2) — the constant-Potts
 * form whose mu acts as a resolution knob.
 *
 * MLE mode requires nonnegative weights (NegativeWeightError); fixed-mu
 * mode accepts any sign.
 */
double constrained_objective(const WeightedGraph& g, const Partition& p,
                             std::optional<double> mu = std::nullopt);

}  // namespace gsbm
