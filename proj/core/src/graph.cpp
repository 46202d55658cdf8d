#include "gsbm/graph.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "gsbm/errors.hpp"

namespace gsbm {

WeightedGraph WeightedGraph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) {
    throw OutOfRangeError("vertex count must be nonnegative, got " + std::to_string(n));
  }
  WeightedGraph g;
  g.n_ = n;
  for (Edge& e : edges) {
    if (e.u == e.v) {
      throw SelfLoopError("self-loop on vertex " + std::to_string(e.u));
    }
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw OutOfRangeError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") outside vertex range [0, " + std::to_string(n) + ")");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v) {
      throw DuplicateEdgeError("duplicate edge (" + std::to_string(edges[i].u) + ", " +
                               std::to_string(edges[i].v) + ")");
    }
  }
  g.edges_ = std::move(edges);
  g.adj_.assign(n, {});
  g.strength_.assign(n, 0.0);
  for (const Edge& e : g.edges_) {
    g.adj_[e.u].push_back({e.v, e.weight});
    g.adj_[e.v].push_back({e.u, e.weight});
    g.strength_[e.u] += e.weight;
    g.strength_[e.v] += e.weight;
    g.total_weight_ += e.weight;
    g.max_weight_ = std::max(g.max_weight_, e.weight);
    if (e.weight < 0.0) g.has_negative_ = true;
  }
  return g;
}

std::span<const WeightedGraph::Neighbor> WeightedGraph::neighbors(int v) const {
  if (v < 0 || v >= n_) {
    throw OutOfRangeError("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n_) +
                          ")");
  }
  return adj_[v];
}

double WeightedGraph::strength(int v) const {
  if (v < 0 || v >= n_) {
    throw OutOfRangeError("vertex " + std::to_string(v) + " outside [0, " + std::to_string(n_) +
                          ")");
  }
  return strength_[v];
}

}  // namespace gsbm
