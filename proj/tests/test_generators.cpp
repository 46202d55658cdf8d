#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "gsbm/errors.hpp"
#include "gsbm/generators.hpp"
#include "gsbm/graph.hpp"
#include "gsbm/objectives.hpp"
#include "gsbm/partition.hpp"
#include "gsbm/preference.hpp"

using namespace gsbm;

namespace {

std::set<std::pair<int, int>> edge_set(const WeightedGraph& g) {
  std::set<std::pair<int, int>> s;
  for (const Edge& e : g.edges()) s.insert({e.u, e.v});
  return s;
}

std::map<std::pair<int, int>, double> edge_weights(const WeightedGraph& g) {
  std::map<std::pair<int, int>, double> m;
  for (const Edge& e : g.edges()) m[{e.u, e.v}] = e.weight;
  return m;
}

}  // namespace

TEST_CASE("gen_er: edge count concentrates on the expected value") {
  WeightedGraph g = gen_er(1000, 10.0, 42);
  CHECK(g.vertex_count() == 1000);
  // M = C(1000,2) pairs at p = 10/999: mean 5000, sigma ~ 70.4; 4 sigma.
  double mean = 499500.0 * (10.0 / 999.0);
  double sigma = std::sqrt(499500.0 * (10.0 / 999.0) * (1.0 - 10.0 / 999.0));
  CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) <= 4.0 * sigma);
  for (const Edge& e : g.edges()) {
    CHECK(e.weight == 1.0);
  }
}

TEST_CASE("gen_er is deterministic in the seed") {
  WeightedGraph a = gen_er(100, 6.0, 7);
  WeightedGraph b = gen_er(100, 6.0, 7);
  CHECK(edge_set(a) == edge_set(b));
  WeightedGraph c = gen_er(100, 6.0, 8);
  CHECK(edge_set(a) != edge_set(c));
}

TEST_CASE("gen_er edge counts across seeds pass a chi-square normality check") {
  // 200 seeds of G(50, p = 5/49): edge count ~ Binomial(1225, 5/49).
  // Standardized counts are binned into five z-bins; the bin probabilities
  // are the standard normal masses of (-inf,-1.5), (-1.5,-0.5), (-0.5,0.5),
  // (0.5,1.5), (1.5,inf). chi^2 over 4 degrees of freedom at the 1e-4
  // level rejects above 23.512742444991076.
  const double kM = 1225.0;
  const double kP = 5.0 / 49.0;
  const double mu = kM * kP;
  const double sd = std::sqrt(kM * kP * (1.0 - kP));
  const std::array<double, 5> probs = {0.0668072, 0.24173034, 0.38292492, 0.24173034, 0.0668072};
  std::array<int, 5> observed = {0, 0, 0, 0, 0};
  const int kSeeds = 200;
  for (int seed = 0; seed < kSeeds; ++seed) {
    WeightedGraph g = gen_er(50, 5.0, static_cast<std::uint64_t>(seed));
    double z = (static_cast<double>(g.edge_count()) - mu) / sd;
    int bin = z < -1.5 ? 0 : z < -0.5 ? 1 : z < 0.5 ? 2 : z < 1.5 ? 3 : 4;
    ++observed[bin];
  }
  double chi2 = 0.0;
  for (int b = 0; b < 5; ++b) {
    double expected = probs[b] * kSeeds;
    chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  CHECK(chi2 < 23.512742444991076);
}

TEST_CASE("gen_er validates its arguments") {
  CHECK_THROWS_AS(gen_er(1, 0.0, 0), OutOfRangeError);
  CHECK_THROWS_AS(gen_er(10, -1.0, 0), OutOfRangeError);
  CHECK_THROWS_AS(gen_er(10, 9.5, 0), OutOfRangeError);
}

TEST_CASE("gen_ring_of_cliques: exact structure of the 8 x 4 ring") {
  auto [g, planted] = gen_ring_of_cliques(8, 4);
  CHECK(g.vertex_count() == 32);
  CHECK(g.edge_count() == 56);  // 8 cliques x 6 edges + 8 bridges
  CHECK(planted.community_count() == 8);

  auto edges = edge_set(g);
  for (int c = 0; c < 8; ++c) {
    int base = 4 * c;
    // All six intra-clique pairs present, labeled c.
    for (int a = 0; a < 4; ++a) {
      CHECK(planted.label_of(base + a) == c);
      for (int b = a + 1; b < 4; ++b) {
        CHECK(edges.count({base + a, base + b}) == 1);
      }
    }
    // One bridge between consecutive local-0 vertices.
    int next = 4 * ((c + 1) % 8);
    CHECK((edges.count({std::min(base, next), std::max(base, next)}) == 1));
  }
  // Bridge endpoints have degree 5, everyone else 3 (unit weights).
  for (int v = 0; v < 32; ++v) {
    CHECK(g.strength(v) == (v % 4 == 0 ? 5.0 : 3.0));
  }
  for (const Edge& e : g.edges()) CHECK(e.weight == 1.0);
}

TEST_CASE("gen_ring_of_cliques validates its arguments") {
  CHECK_THROWS_AS(gen_ring_of_cliques(2, 4), OutOfRangeError);
  CHECK_THROWS_AS(gen_ring_of_cliques(3, 1), OutOfRangeError);
  // Smallest legal ring: 3 cliques of 2 = a 6-cycle plus nothing extra.
  auto [g, planted] = gen_ring_of_cliques(3, 2);
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 6);
  CHECK(planted.community_count() == 3);
}

TEST_CASE("sample_gsbm at sigma = 0 writes the exact rank-one means") {
  Partition planted({0, 0, 0, 1, 1, 1});
  std::vector<double> prefs = {1.0, 0.5, 2.0, 1.5, 0.8, 1.2};
  WeightedGraph g = sample_gsbm(planted, prefs, 0.0, 123);
  auto weights = edge_weights(g);
  // Every intra pair carries exactly p_u p_v; no inter edges at all.
  CHECK(weights.size() == 6);  // 3 pairs per block
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (planted.label_of(i) == planted.label_of(j)) {
        CHECK(weights.at({i, j}) == prefs[i] * prefs[j]);
      } else {
        CHECK(weights.count({i, j}) == 0);
      }
    }
  }
  // Zero preference silences a vertex entirely: mean 0, weight omitted.
  std::vector<double> muted = prefs;
  muted[0] = 0.0;
  WeightedGraph m = sample_gsbm(planted, muted, 0.0, 123);
  CHECK(edge_weights(m).size() == 3 + 1);  // block 0 keeps only pair (1,2)
}

TEST_CASE("sample_gsbm eigenvalue obeys the Weyl bracket for the planted block") {
  // W_block = p p^T - diag(p_i^2), so lambda_max lies within
  // [||p||^2 - max p_i^2, ||p||^2 - min p_i^2]; uniform p makes it exact.
  Partition uniform_block(std::vector<int>(8, 0));
  std::vector<double> ones(8, 1.0);
  WeightedGraph g = sample_gsbm(uniform_block, ones, 0.0, 5);
  std::vector<int> members(8);
  for (int v = 0; v < 8; ++v) members[v] = v;
  PowerResult eig = power_iterate(g, members);
  CHECK(eig.eigenvalue == doctest::Approx(7.0).epsilon(1e-9));  // m - 1 exactly

  std::vector<double> varied = {0.5, 0.8, 1.1, 1.4, 0.9, 1.2, 0.7, 1.3};
  WeightedGraph h = sample_gsbm(uniform_block, varied, 0.0, 5);
  double norm2 = 0.0, pmax = 0.0, pmin = 1e9;
  for (double p : varied) {
    norm2 += p * p;
    pmax = std::max(pmax, p * p);
    pmin = std::min(pmin, p * p);
  }
  PowerResult veig = power_iterate(h, members);
  CHECK(veig.eigenvalue >= norm2 - pmax - 1e-9);
  CHECK(veig.eigenvalue <= norm2 - pmin + 1e-9);

  // Recovered-preference identity: (sum_i p_hat_i^2)^2 = lambda^2 exactly,
  // so Q matches the fourth power of the recovered norm.
  Partition two_blocks({0, 0, 0, 0, 1, 1, 1, 1});
  WeightedGraph k = sample_gsbm(two_blocks, varied, 0.0, 9);
  double q = gsbm_objective(k, two_blocks);
  double sum_quartic = 0.0;
  for (int label : {0, 1}) {
    PreferenceVector pref = community_preferences(k, two_blocks, label);
    double s = 0.0;
    for (double val : pref.values) s += val * val;
    sum_quartic += s * s;
  }
  CHECK(q == doctest::Approx(sum_quartic).epsilon(1e-6));
}

TEST_CASE("sample_gsbm with noise keeps negative draws and is deterministic") {
  Partition planted(std::vector<int>(40, 0));
  std::vector<double> prefs(40, 0.1);  // means 0.01 << sigma
  WeightedGraph a = sample_gsbm(planted, prefs, 1.0, 77);
  WeightedGraph b = sample_gsbm(planted, prefs, 1.0, 77);
  CHECK(edge_weights(a) == edge_weights(b));
  CHECK(a.has_negative_weight());  // ~half of all draws are negative
  int negatives = 0;
  for (const Edge& e : a.edges()) negatives += e.weight < 0.0 ? 1 : 0;
  CHECK(negatives > 100);  // of 780 pairs, about half
  CHECK(negatives < 680);
}

TEST_CASE("sample_gsbm validates its arguments") {
  Partition p({0, 0});
  CHECK_THROWS_AS(sample_gsbm(Partition(), {}, 0.1, 0), SizeMismatchError);
  CHECK_THROWS_AS(sample_gsbm(p, {1.0}, 0.1, 0), SizeMismatchError);
  CHECK_THROWS_AS(sample_gsbm(p, {1.0, -0.5}, 0.1, 0), OutOfRangeError);
  CHECK_THROWS_AS(sample_gsbm(p, {1.0, 1.0}, -0.1, 0), OutOfRangeError);
}

TEST_CASE("gen_planted: noiseless instance is disjoint cliques") {
  auto [g, planted] = gen_planted(12, 3, 1.0, 0.0, 0.0, 4);
  CHECK(g.vertex_count() == 12);
  CHECK(g.edge_count() == 18);  // 3 x C(4,2)
  CHECK(planted.labels() == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2});
  for (const Edge& e : g.edges()) {
    CHECK(planted.label_of(e.u) == planted.label_of(e.v));
    CHECK(e.weight == 1.0);
  }
}

TEST_CASE("gen_planted spreads the remainder one vertex per block") {
  auto [g, planted] = gen_planted(13, 3, 1.0, 0.0, 0.0, 4);
  std::vector<int> sizes;
  for (const auto& [label, size] : planted.sizes()) sizes.push_back(size);
  CHECK(sizes == std::vector<int>{5, 4, 4});
  CHECK(g.vertex_count() == 13);
}

TEST_CASE("gen_planted with noise perturbs weights around the planted means") {
  auto [g, planted] = gen_planted(60, 3, 1.0, 0.2, 0.05, 11);
  // All pair means are >= 0.2 >> 5 sigma of 0.05... every pair keeps an edge.
  CHECK(g.edge_count() == 60 * 59 / 2);
  double intra_sum = 0.0, inter_sum = 0.0;
  int intra_cnt = 0, inter_cnt = 0;
  for (const Edge& e : g.edges()) {
    if (planted.label_of(e.u) == planted.label_of(e.v)) {
      intra_sum += e.weight;
      ++intra_cnt;
    } else {
      inter_sum += e.weight;
      ++inter_cnt;
    }
  }
  // Sample means sit within 5 standard errors of the planted means.
  double se_intra = 0.05 / std::sqrt(static_cast<double>(intra_cnt));
  double se_inter = 0.05 / std::sqrt(static_cast<double>(inter_cnt));
  CHECK(std::abs(intra_sum / intra_cnt - 1.0) <= 5.0 * se_intra);
  CHECK(std::abs(inter_sum / inter_cnt - 0.2) <= 5.0 * se_inter);
}

TEST_CASE("gen_planted validates its arguments") {
  CHECK_THROWS_AS(gen_planted(0, 1, 1.0, 0.0, 0.0, 0), OutOfRangeError);
  CHECK_THROWS_AS(gen_planted(10, 0, 1.0, 0.0, 0.0, 0), OutOfRangeError);
  CHECK_THROWS_AS(gen_planted(10, 11, 1.0, 0.0, 0.0, 0), OutOfRangeError);
  CHECK_THROWS_AS(gen_planted(10, 2, 0.5, 0.5, 0.0, 0), OutOfRangeError);  // w_in == w_out
  CHECK_THROWS_AS(gen_planted(10, 2, 0.5, -0.1, 0.0, 0), OutOfRangeError);
  CHECK_THROWS_AS(gen_planted(10, 2, 1.0, 0.0, -1.0, 0), OutOfRangeError);
}
