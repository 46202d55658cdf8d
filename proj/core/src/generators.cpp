#include "gsbm/generators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gsbm/errors.hpp"
#include "gsbm/random.hpp"

namespace gsbm {

namespace {

/** Sampled weights below this magnitude leave the pair edgeless. */
constexpr double kOmitEpsilon = 1e-12;

}  // namespace

WeightedGraph gen_er(int n, double avg_degree, std::uint64_t seed) {
  if (n < 2) throw OutOfRangeError("gen_er requires n >= 2");
  if (avg_degree < 0.0 || avg_degree > static_cast<double>(n - 1)) {
    throw OutOfRangeError("gen_er requires 0 <= avg_degree <= n - 1");
  }
  const double p = avg_degree / static_cast<double>(n - 1);
  auto rng = make_rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({i, j, 1.0});
    }
  }
  return WeightedGraph::from_edges(n, std::move(edges));
}

std::pair<WeightedGraph, Partition> gen_ring_of_cliques(int cliques, int clique_size) {
  if (cliques < 3) throw OutOfRangeError("a ring needs at least 3 cliques");
  if (clique_size < 2) throw OutOfRangeError("cliques need at least 2 vertices");
  const int n = cliques * clique_size;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(cliques) * clique_size * (clique_size - 1) / 2 + cliques);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int c = 0; c < cliques; ++c) {
    const int base = c * clique_size;
    for (int a = 0; a < clique_size; ++a) {
      labels[base + a] = c;
      for (int b = a + 1; b < clique_size; ++b) {
        edges.push_back({base + a, base + b, 1.0});
      }
    }
    // One unit bridge between consecutive cliques' local vertex 0.
    edges.push_back({base, ((c + 1) % cliques) * clique_size, 1.0});
  }
  return {WeightedGraph::from_edges(n, std::move(edges)), Partition(std::move(labels))};
}

namespace {

WeightedGraph sample_pairwise_gaussian(int n, const std::vector<int>& labels,
                                       const std::vector<double>* prefs, double w_in, double w_out,
                                       double sigma, std::uint64_t seed) {
  // Two callers share this loop: preference means p_i p_j (prefs != nullptr)
  // or constant means w_in / w_out.
  auto rng = make_rng(seed);
  std::normal_distribution<double> std_normal(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double mean;
      if (prefs) {
        mean = labels[i] == labels[j] ? (*prefs)[i] * (*prefs)[j] : 0.0;
      } else {
        mean = labels[i] == labels[j] ? w_in : w_out;
      }
      double w = mean;
      if (sigma > 0.0) w += sigma * std_normal(rng);
      if (std::abs(w) < kOmitEpsilon) continue;  // no edge for near-zero weights
      edges.push_back({i, j, w});
    }
  }
  return WeightedGraph::from_edges(n, std::move(edges));
}

}  // namespace

WeightedGraph sample_gsbm(const Partition& planted, const std::vector<double>& node_preferences,
                          double sigma, std::uint64_t seed) {
  const int n = planted.size();
  if (n < 1) throw SizeMismatchError("sample_gsbm requires a nonempty partition");
  if (static_cast<int>(node_preferences.size()) != n) {
    throw SizeMismatchError("preference vector covers " +
                            std::to_string(node_preferences.size()) + " vertices, partition " +
                            std::to_string(n));
  }
  for (double p : node_preferences) {
    if (p < 0.0) throw OutOfRangeError("node preferences must be nonnegative");
  }
  if (sigma < 0.0) throw OutOfRangeError("sigma must be nonnegative");
  return sample_pairwise_gaussian(n, planted.labels(), &node_preferences, 0.0, 0.0, sigma, seed);
}

std::pair<WeightedGraph, Partition> gen_planted(int n, int communities, double w_in, double w_out,
                                                double sigma, std::uint64_t seed) {
  if (n < 1) throw OutOfRangeError("gen_planted requires n >= 1");
  if (communities < 1 || communities > n) {
    throw OutOfRangeError("gen_planted requires 1 <= communities <= n");
  }
  if (!(w_in > w_out)) throw OutOfRangeError("gen_planted requires w_in > w_out");
  if (w_out < 0.0) throw OutOfRangeError("gen_planted requires w_out >= 0");
  if (sigma < 0.0) throw OutOfRangeError("sigma must be nonnegative");

  // Near-equal contiguous blocks; the first n % communities blocks get one
  // extra vertex.
  std::vector<int> labels(static_cast<std::size_t>(n));
  int base = n / communities;
  int remainder = n % communities;
  int v = 0;
  for (int c = 0; c < communities; ++c) {
    int size = base + (c < remainder ? 1 : 0);
    for (int k = 0; k < size; ++k) labels[v++] = c;
  }
  WeightedGraph g = sample_pairwise_gaussian(n, labels, nullptr, w_in, w_out, sigma, seed);
  return {std::move(g), Partition(std::move(labels))};
}

}  // namespace gsbm
