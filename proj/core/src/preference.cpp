#include "gsbm/preference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsbm/errors.hpp"

namespace gsbm {

namespace detail {

void build_subgraph(const WeightedGraph& g, std::span<const int> members,
                    std::vector<int>& slot_scratch, LocalSubgraph& out) {
  const int m = static_cast<int>(members.size());
  out.size = m;
  out.row_ptr.assign(static_cast<std::size_t>(m) + 1, 0);
  out.col.clear();
  out.weight.clear();
  out.max_strength = 0.0;
  out.has_edge = false;
  out.has_negative = false;

  for (int k = 0; k < m; ++k) {
    int v = members[k];
    if (v < 0 || v >= g.vertex_count()) {
      throw OutOfRangeError("member vertex " + std::to_string(v) + " outside [0, " +
                            std::to_string(g.vertex_count()) + ")");
    }
    if (slot_scratch[v] != -1) {
      throw InconsistentStateError("vertex " + std::to_string(v) +
                                   " listed twice in one community");
    }
    slot_scratch[v] = k;
  }
  for (int k = 0; k < m; ++k) {
    double s = 0.0;
    out.row_ptr[k] = static_cast<int>(out.col.size());
    for (const auto& nb : g.neighbors(members[k])) {
      int slot = slot_scratch[nb.vertex];
      if (slot < 0) continue;
      out.col.push_back(slot);
      out.weight.push_back(nb.weight);
      s += nb.weight;
      out.has_edge = true;
      if (nb.weight < 0.0) out.has_negative = true;
    }
    out.max_strength = std::max(out.max_strength, s);
  }
  out.row_ptr[m] = static_cast<int>(out.col.size());
  for (int v : members) slot_scratch[v] = -1;
}

PowerResult power_on_subgraph(const LocalSubgraph& sub, double tol, int max_iters,
                              std::span<const double> warm_start) {
  const int m = sub.size;
  PowerResult result;
  if (m == 0) return result;
  if (sub.has_negative) {
    throw NegativeWeightError("negative intra-community edge weight");
  }
  const double uniform = 1.0 / std::sqrt(static_cast<double>(m));
  result.vector.assign(static_cast<std::size_t>(m), uniform);
  if (!sub.has_edge) {
    // No intra edges: lambda = 0 and any unit vector is fine.
    return result;
  }

  std::vector<double>& v = result.vector;
  if (static_cast<int>(warm_start.size()) == m) {
    // Blend the previous direction with uniform so entries stay positive
    // and a stale direction cannot pin the iteration to a minor component.
    double norm2 = 0.0;
    for (int k = 0; k < m; ++k) {
      v[k] = 0.9 * std::max(warm_start[k], 0.0) + 0.1 * uniform;
      norm2 += v[k] * v[k];
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
  }

  // Iterate on W + cI, c = max subgraph strength / 2. Gershgorin bounds the
  // spectrum to [-c*2, c*2] and lambda_1 > 0 whenever a positive edge
  // exists, so lambda_1 + c > |lambda_i + c| strictly for every i: the
  // shift makes the largest signed eigenvalue dominant even on bipartite
  // subgraphs whose W-spectrum is symmetric, without slowing convergence
  // more than necessary.
  const double shift = 0.5 * sub.max_strength;
  std::vector<double> wv(static_cast<std::size_t>(m));
  double lambda = 0.0;
  double prev_lambda = 0.0;
  for (int iter = 1; iter <= max_iters; ++iter) {
    result.iterations = iter;
    for (int k = 0; k < m; ++k) {
      double acc = 0.0;
      for (int e = sub.row_ptr[k]; e < sub.row_ptr[k + 1]; ++e) {
        acc += sub.weight[e] * v[sub.col[e]];
      }
      wv[k] = acc;
    }
    // Rayleigh quotient of W (v is unit).
    lambda = 0.0;
    for (int k = 0; k < m; ++k) lambda += v[k] * wv[k];

    double residual2 = 0.0;
    for (int k = 0; k < m; ++k) {
      double r = wv[k] - lambda * v[k];
      residual2 += r * r;
    }
    double scale = std::max(std::abs(lambda), 1.0);
    bool residual_ok = std::sqrt(residual2) <= tol * scale;
    bool lambda_ok = iter > 1 && std::abs(lambda - prev_lambda) <= tol * scale;
    if (residual_ok && lambda_ok) {
      result.eigenvalue = lambda;
      result.converged = true;
      return result;
    }
    prev_lambda = lambda;

    double norm2 = 0.0;
    for (int k = 0; k < m; ++k) {
      v[k] = wv[k] + shift * v[k];
      norm2 += v[k] * v[k];
    }
    if (norm2 <= 1e-300) {
      // All-zero weights: the matrix is 0, lambda = 0, any unit vector works.
      result.eigenvalue = 0.0;
      result.converged = true;
      std::fill(v.begin(), v.end(), uniform);
      return result;
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
  }
  result.eigenvalue = lambda;
  result.converged = false;
  return result;
}

}  // namespace detail

PowerResult power_iterate(const WeightedGraph& g, std::span<const int> members, double tol,
                          int max_iters, std::span<const double> warm_start) {
  std::vector<int> scratch(static_cast<std::size_t>(g.vertex_count()), -1);
  detail::LocalSubgraph sub;
  detail::build_subgraph(g, members, scratch, sub);
  return detail::power_on_subgraph(sub, tol, max_iters, warm_start);
}

PreferenceVector community_preferences(const WeightedGraph& g, const Partition& p, int label,
                                       double tol, int max_iters) {
  if (g.vertex_count() != p.size()) {
    throw SizeMismatchError("graph has " + std::to_string(g.vertex_count()) +
                            " vertices but partition covers " + std::to_string(p.size()));
  }
  PreferenceVector pref;
  pref.label = label;
  pref.members = p.members_of(label);
  PowerResult eig = power_iterate(g, pref.members, tol, max_iters);
  pref.converged = eig.converged;
  if (eig.eigenvalue <= kLambdaEpsilon) {
    // Edgeless community: all-ones fallback keeps votes meaningful while
    // the community contributes nothing to the objective.
    pref.eigenvalue = 0.0;
    pref.fallback = true;
    pref.values.assign(pref.members.size(), 1.0);
    return pref;
  }
  pref.eigenvalue = eig.eigenvalue;
  double root = std::sqrt(eig.eigenvalue);
  pref.values.resize(pref.members.size());
  // p_i = sqrt(lambda) v_i solves p = W_z p / ||p||^2 restricted to the block.
  for (std::size_t k = 0; k < pref.values.size(); ++k) pref.values[k] = root * eig.vector[k];
  return pref;
}

PreferenceVector random_walk_preferences(const WeightedGraph& g, const Partition& p, int label,
                                         double /*tol*/, int /*max_iters*/) {
  if (g.vertex_count() != p.size()) {
    throw SizeMismatchError("graph has " + std::to_string(g.vertex_count()) +
                            " vertices but partition covers " + std::to_string(p.size()));
  }
  PreferenceVector pref;
  pref.label = label;
  pref.members = p.members_of(label);
  pref.values.resize(pref.members.size());
  // Stationary distribution of the undirected walk on the community
  // subgraph is proportional to intra-community strength.
  double total = 0.0;
  for (std::size_t k = 0; k < pref.members.size(); ++k) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(pref.members[k])) {
      if (p.label_of(nb.vertex) != label) continue;
      if (nb.weight < 0.0) {
        throw NegativeWeightError("negative intra-community edge weight");
      }
      s += nb.weight;
    }
    pref.values[k] = s;
    total += s;
  }
  if (total <= 0.0) {
    pref.fallback = true;
    pref.eigenvalue = 0.0;
    double uniform = pref.members.empty() ? 0.0 : 1.0 / static_cast<double>(pref.members.size());
    std::fill(pref.values.begin(), pref.values.end(), uniform);
    return pref;
  }
  pref.eigenvalue = 1.0;
  for (double& x : pref.values) x /= total;
  return pref;
}

}  // namespace gsbm
