#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gsbm/graph.hpp"
#include "gsbm/partition.hpp"
#include "gsbm/preference.hpp"

namespace gsbm {

/**
 * When preferences are refreshed during a gsbm-p sweep:
 *  - immediate: after every accepted move, for the two affected
 *    communities (warm-started power iteration);
 *  - per_sweep: once for all communities at the end of each sweep.
 */
enum class PreferenceUpdate { immediate, per_sweep };

struct DetectConfig {
  std::uint64_t seed = 0;
  /** Independent coordinate-ascent runs; the best-objective one wins. */
  int restarts = 1;
  /** Cap on outer sweeps per run. */
  int max_outer_iters = 100;
  /** A sweep must improve the objective by more than this to continue. */
  double objective_tol = 1e-9;
  PreferenceUpdate preference_update = PreferenceUpdate::immediate;
  /** Power-iteration stopping tolerance and iteration cap. */
  double power_tol = kPowerTol;
  int power_max_iters = kPowerMaxIters;
  /** Hard sweep cap for detect_lpa_p (the conventional 50). */
  int lpa_p_sweeps = 50;
  /** Vote-weight exponent m for detect_lpa_p: votes are p_j^m W_ij. */
  double preference_exponent = 1.0;
};

struct DetectResult {
  Partition partition;
  /** Final objective recomputed from scratch on the returned partition. */
  double objective = 0.0;
  /**
   * Objective after each completed sweep of the winning run. For
   * detect_gsbm_p a terminal sweep that fails to improve the objective
   * ends the run and is not recorded, so the trace is non-decreasing;
   * `iterations` still counts that sweep.
   */
  std::vector<double> objective_trace;
  /** Residual variance where the model defines one (gsbm-p, gsbm-c, cpm). */
  std::optional<double> sigma2;
  /** Sweeps executed by the winning run, including any terminal sweep. */
  int iterations = 0;
  int community_count = 0;
};

/**
 * Coordinate ascent for the Gaussian preference model.
 *
 * Starts from the all-singleton partition (edgeless communities fall back
 * to all-ones preferences, so sweep 1 scores exactly like classic label
 * propagation). Each sweep visits vertices in fresh random order; vertex i
 * moves to the candidate label (neighbor labels plus its own) maximizing
 * sum_{j != i} p_j W_ij [z_j == z]; the current label is kept on ties it
 * attains, otherwise a seeded-uniform choice among the maximizers.
 * Preferences refresh per `preference_update`. After each sweep
 * Q = sum_z lambda_z^2 is recorded; a run stops when a sweep moves no
 * vertex, fails to improve Q by more than objective_tol, or
 * max_outer_iters is reached, and returns the best-Q partition seen.
 * Restarts run on independent RNG streams derived from (seed, restart).
 *
 * Throws NegativeWeightError when a negative weight ends up inside a
 * community (intra-community weights are model-nonnegative); negative
 * inter-community weights are tolerated.
 */
DetectResult detect_gsbm_p(const WeightedGraph& g, const DetectConfig& config = {});

/**
 * Constant-mean variant. With mu absent each community's mean is its MLE
 * mu_z = S_z / n_z^2 and Q = sum_z S_z^2 / n_z^2 (requires nonnegative
 * weights); with mu fixed the objective is the constant-Potts form
 * mu * (2 * lpa_objective - mu * sum_z n_z^2) and any weight sign is
 * accepted. Moves are accepted only when they strictly increase Q, so the
 * trace is non-decreasing from the first sweep. Candidates are scored by
 * the fixed-mu gain g = 2 (s_b - s_a) - mu (n_b - n_a + 1) without the
 * 2 mu prefactor. At mu = 0 that objective is identically zero and cannot
 * rank partitions, so the run degenerates to classic label propagation
 * (identical moves, stops, and returned partition as detect_lpa with the
 * same config; the trace then records Q_LPA, while `objective` still
 * reports the recomputed constrained value, i.e. 0). Negative mu is
 * rejected (OutOfRangeError): the resolution knob is meaningful only for
 * mu >= 0.
 */
DetectResult detect_constrained(const WeightedGraph& g, const DetectConfig& config = {},
                                std::optional<double> mu = std::nullopt);

/**
 * Classic label propagation: moves maximize sum_{j != i} W_ij [z_j == z],
 * ties keep the current label when it attains the max. Stops on a
 * no-move sweep or max_outer_iters. `initial` defaults to all-singletons.
 */
DetectResult detect_lpa(const WeightedGraph& g, const DetectConfig& config = {},
                        std::optional<Partition> initial = std::nullopt);

/**
 * Preference-weighted label propagation: votes are p_j^m W_ij with p the
 * random-walk (stationary-distribution) preferences of j's community,
 * refreshed immediately after every accepted move. Runs at most
 * config.lpa_p_sweeps sweeps (or until a no-move sweep) and returns the
 * final partition; objective and trace report the preference-weighted
 * score sum_z p^T W_z p. Requires nonnegative weights.
 */
DetectResult detect_lpa_p(const WeightedGraph& g, const DetectConfig& config = {});

}  // namespace gsbm
