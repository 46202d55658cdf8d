#include "gsbm/objectives.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "gsbm/errors.hpp"

namespace gsbm {

namespace {

void require_same_size(const WeightedGraph& g, const Partition& p) {
  if (g.vertex_count() != p.size()) {
    throw SizeMismatchError("graph has " + std::to_string(g.vertex_count()) +
                            " vertices but partition covers " + std::to_string(p.size()));
  }
}

}  // namespace

double lpa_objective(const WeightedGraph& g, const Partition& p) {
  require_same_size(g, p);
  double intra = 0.0;
  for (const Edge& e : g.edges()) {
    if (p.labels()[e.u] == p.labels()[e.v]) intra += e.weight;
  }
  return 2.0 * intra;  // ordered pairs
}

double gsbm_objective(const WeightedGraph& g, const Partition& p, double tol, int max_iters) {
  require_same_size(g, p);
  double q = 0.0;
  for (const auto& [label, members] : p.communities()) {
    PowerResult eig = power_iterate(g, members, tol, max_iters);
    if (eig.eigenvalue > kLambdaEpsilon) q += eig.eigenvalue * eig.eigenvalue;
  }
  return q;
}

double sigma2_mle(const WeightedGraph& g, const Partition& p,
                  const std::vector<PreferenceVector>& prefs) {
  require_same_size(g, p);
  const int n = g.vertex_count();
  if (n == 0) throw SizeMismatchError("sigma2 undefined on an empty graph");

  // Per-vertex preference, zero for fallback communities (their all-ones
  // values exist only for label updates, not for the model fit).
  std::vector<double> pv(static_cast<std::size_t>(n), 0.0);
  std::unordered_map<int, const PreferenceVector*> by_label;
  by_label.reserve(prefs.size());
  for (const PreferenceVector& pref : prefs) {
    if (!by_label.emplace(pref.label, &pref).second) {
      throw InconsistentStateError("preference vector for label " + std::to_string(pref.label) +
                                   " supplied twice");
    }
  }
  for (const auto& [label, size] : p.sizes()) {
    auto it = by_label.find(label);
    if (it == by_label.end()) {
      throw InconsistentStateError("no preference vector for community " + std::to_string(label));
    }
    const PreferenceVector& pref = *it->second;
    if (static_cast<int>(pref.members.size()) != size) {
      throw InconsistentStateError("preference vector for community " + std::to_string(label) +
                                   " covers " + std::to_string(pref.members.size()) +
                                   " vertices, community has " + std::to_string(size));
    }
    if (pref.fallback) continue;
    for (std::size_t k = 0; k < pref.members.size(); ++k) {
      int v = pref.members[k];
      if (v < 0 || v >= n || p.labels()[v] != label) {
        throw InconsistentStateError("preference member " + std::to_string(v) +
                                     " is not in community " + std::to_string(label));
      }
      pv[v] = pref.values[k];
    }
  }

  // sum over ordered pairs (i,j), incl. i=j with W_ii = 0, of
  // (W_ij - p_i p_j [z_i = z_j])^2
  //   = 2 sum_E w^2 - 2 sum_z p^T W_z p + sum_z (sum_{i in z} p_i^2)^2.
  double sum_w2 = 0.0;
  double cross = 0.0;
  for (const Edge& e : g.edges()) {
    sum_w2 += e.weight * e.weight;
    if (p.labels()[e.u] == p.labels()[e.v]) cross += e.weight * pv[e.u] * pv[e.v];
  }
  double quartic = 0.0;
  for (const auto& [label, members] : p.communities()) {
    double sq = 0.0;
    for (int v : members) sq += pv[v] * pv[v];
    quartic += sq * sq;
  }
  double nn = static_cast<double>(n) * static_cast<double>(n);
  return (2.0 * sum_w2 - 4.0 * cross + quartic) / nn;
}

double constrained_objective(const WeightedGraph& g, const Partition& p,
                             std::optional<double> mu) {
  require_same_size(g, p);
  if (!mu.has_value()) {
    if (g.has_negative_weight()) {
      throw NegativeWeightError("per-community mean MLE requires nonnegative weights");
    }
    // Q = sum_z S_z^2 / n_z^2 with S_z the ordered intra weight sum.
    std::unordered_map<int, double> intra;
    for (const Edge& e : g.edges()) {
      if (p.labels()[e.u] == p.labels()[e.v]) intra[p.labels()[e.u]] += 2.0 * e.weight;
    }
    double q = 0.0;
    for (const auto& [label, size] : p.sizes()) {
      auto it = intra.find(label);
      if (it == intra.end()) continue;
      double nz = static_cast<double>(size);
      q += (it->second * it->second) / (nz * nz);
    }
    return q;
  }
  double m = *mu;
  double sum_sq_sizes = 0.0;
  for (const auto& [label, size] : p.sizes()) {
    sum_sq_sizes += static_cast<double>(size) * static_cast<double>(size);
  }
  return m * (2.0 * lpa_objective(g, p) - m * sum_sq_sizes);
}

}  // namespace gsbm
