#pragma once

#include <span>
#include <vector>

namespace gsbm {

/** One undirected weighted edge; canonical storage keeps u < v. */
struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

/**
 * Immutable undirected weighted graph on vertices 0..n-1.
 *
 * Stores the canonical edge list plus a per-vertex adjacency index for
 * O(degree) neighborhood scans. Weights may be negative (they arise from
 * Gaussian edge sampling); algorithms that require nonnegative weights
 * check for themselves.
 */
class WeightedGraph {
 public:
  struct Neighbor {
    int vertex;
    double weight;
  };

  WeightedGraph() = default;

  /**
   * Builds a graph from an edge list.
   *
   * Edges may be given in either vertex order; they are canonicalized to
   * u < v and sorted. Throws SelfLoopError for u == v, OutOfRangeError for
   * endpoints outside [0, n), and DuplicateEdgeError if the same vertex
   * pair appears twice.
   */
  static WeightedGraph from_edges(int n, std::vector<Edge> edges);

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

  /** Canonical edge list, sorted by (u, v) with u < v. */
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /** Neighbors of v with edge weights; throws OutOfRangeError. */
  std::span<const Neighbor> neighbors(int v) const;

  /** strength(i) = sum of weights of edges incident to i. */
  double strength(int v) const;

  /** Sum of all edge weights (each undirected edge counted once). */
  double total_weight() const noexcept { return total_weight_; }

  /** Largest edge weight, 0 for an edgeless graph. */
  double max_weight() const noexcept { return max_weight_; }

  bool has_negative_weight() const noexcept { return has_negative_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
  double max_weight_ = 0.0;
  bool has_negative_ = false;
};

}  // namespace gsbm
