#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gsbm/graph.hpp"
#include "gsbm/partition.hpp"

namespace gsbm {

/**
 * Erdos–Renyi G(n, p) with p = avg_degree / (n - 1): every unordered pair
 * receives a unit-weight edge independently. Requires n >= 2 and
 * 0 <= avg_degree <= n - 1.
 */
WeightedGraph gen_er(int n, double avg_degree, std::uint64_t seed);

/**
 * Ring of `cliques` complete graphs K_{clique_size}, consecutive cliques
 * joined by one unit bridge edge between their local vertex 0; a ring
 * needs at least 3 cliques of size >= 2. Returns the graph and the planted
 * one-label-per-clique partition. Deterministic (no seed).
 */
std::pair<WeightedGraph, Partition> gen_ring_of_cliques(int cliques, int clique_size);

/**
 * Samples W_ij ~ Normal(p_i p_j [z_i == z_j], sigma^2) independently for
 * every unordered pair. `node_preferences` holds p_i per vertex and must
 * be nonnegative. Draws with |w| < 1e-12 leave the pair edgeless;
 * negative draws are kept. sigma = 0 writes the means exactly (without
 * consuming randomness).
 */
WeightedGraph sample_gsbm(const Partition& planted, const std::vector<double>& node_preferences,
                          double sigma, std::uint64_t seed);

/**
 * Planted-partition instance: n vertices in `communities` near-equal
 * contiguous blocks (remainder spread one per block), pair means w_in
 * inside blocks and w_out across, Gaussian noise sigma. Requires
 * w_in > w_out >= 0 and sigma >= 0. Returns the graph and planted
 * partition.
 */
std::pair<WeightedGraph, Partition> gen_planted(int n, int communities, double w_in,
                                                double w_out, double sigma, std::uint64_t seed);

}  // namespace gsbm
