#pragma once

#include <span>
#include <vector>

#include "gsbm/graph.hpp"
#include "gsbm/partition.hpp"

namespace gsbm {

/** Eigenvalues below this are treated as zero (edgeless community). */
inline constexpr double kLambdaEpsilon = 1e-12;

/** Default stopping tolerance and iteration cap for power iteration. */
inline constexpr double kPowerTol = 1e-10;
inline constexpr int kPowerMaxIters = 200;

struct PowerResult {
  double eigenvalue = 0.0;
  /** Unit (L2) principal eigenvector, aligned with the member list. */
  std::vector<double> vector;
  bool converged = true;
  int iterations = 0;
};

/**
 * Principal eigenpair of the weighted adjacency matrix of the subgraph
 * induced by `members`, by power iteration on the diagonally shifted
 * matrix W + cI with c = half the max subgraph strength. The shift makes
 * the dominant eigenvalue of the iterated matrix the one with the largest
 * *signed* W-eigenvalue, so bipartite-like subgraphs (a single edge, a
 * path) whose spectrum is symmetric still converge.
 *
 * Starts from the uniform positive vector (or `warm_start`, blended 9:1
 * with uniform). Stops when both the eigenvalue residual
 * ||W v - lambda v||_2 <= tol * max(lambda, 1) and the relative eigenvalue
 * change drop below tol. Edgeless subgraphs return eigenvalue 0,
 * converged, with the uniform vector.
 *
 * Throws NegativeWeightError if the induced subgraph has a negative edge
 * weight (the model's intra-community weights are nonnegative), and
 * OutOfRangeError / InconsistentStateError for malformed member lists.
 */
PowerResult power_iterate(const WeightedGraph& g, std::span<const int> members,
                          double tol = kPowerTol, int max_iters = kPowerMaxIters,
                          std::span<const double> warm_start = {});

/**
 * Preference values for one community of a partition.
 *
 * For gsbm-p these are p_i = sqrt(lambda) * v_i with (lambda, v) the
 * principal eigenpair of the community subgraph; communities with
 * lambda <= kLambdaEpsilon (no intra edges) fall back to all-ones values
 * with `fallback` set — the fallback keeps label updates meaningful but
 * contributes nothing to the objective or sigma^2.
 */
struct PreferenceVector {
  int label = 0;
  /** Sorted member vertices. */
  std::vector<int> members;
  /** Preference value per member, aligned with `members`. */
  std::vector<double> values;
  double eigenvalue = 0.0;
  bool fallback = false;
  bool converged = true;
};

/** Eigenvector-based preferences for the community with this label. */
PreferenceVector community_preferences(const WeightedGraph& g, const Partition& p, int label,
                                       double tol = kPowerTol, int max_iters = kPowerMaxIters);

/**
 * Random-walk preferences for lpa-p: the stationary distribution of the
 * walk restricted to the community subgraph. For an undirected walk this
 * is the closed form p_i = s_i / sum_j s_j with s_i the intra-community
 * strength; values sum to 1. Communities with no intra edges fall back to
 * the uniform distribution 1/|members| with `fallback` set. The eigenvalue
 * field reports 1 (the stationary eigenvalue) unless fallback.
 *
 * Throws NegativeWeightError if the community subgraph has a negative
 * weight (a signed walk has no stationary distribution).
 */
PreferenceVector random_walk_preferences(const WeightedGraph& g, const Partition& p, int label,
                                         double tol = kPowerTol, int max_iters = kPowerMaxIters);

namespace detail {

/** Community subgraph in local CSR form, for reuse by the detect engine. */
struct LocalSubgraph {
  int size = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> weight;
  double max_strength = 0.0;
  bool has_edge = false;
  bool has_negative = false;
};

/**
 * Builds the induced subgraph over `members` in local indices.
 * `slot_scratch` must be a vertex-indexed array filled with -1; it is
 * restored to -1 before returning.
 */
void build_subgraph(const WeightedGraph& g, std::span<const int> members,
                    std::vector<int>& slot_scratch, LocalSubgraph& out);

/** Power iteration on a prebuilt subgraph; same contract as power_iterate. */
PowerResult power_on_subgraph(const LocalSubgraph& sub, double tol, int max_iters,
                              std::span<const double> warm_start);

}  // namespace detail

}  // namespace gsbm
