#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "gsbm/detect.hpp"
#include "gsbm/graph.hpp"
#include "gsbm/metrics.hpp"
#include "gsbm/partition.hpp"

namespace gsbm::cli {

struct DetectOptions {
  std::string algo;
  std::string input;     ///< Edge-list path; empty when the LFR pair is used.
  std::string lfr_net;   ///< LFR network.dat path (paired with lfr_comm).
  std::string lfr_comm;  ///< LFR community.dat path.
  std::string output;    ///< Partition destination; empty skips the file.
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iters = 100;
  std::optional<double> mu;  ///< cpm resolution; required for --algo cpm.
  std::string pref_update = "immediate";
};

struct EvalOptions {
  std::string truth;
  std::string pred;
  std::string metric;  ///< nmi | rnmi | rrnmi
  int samples = 100;
  std::uint64_t seed = 0;
};

struct GenOptions {
  std::string kind;  ///< ring | er | planted
  int cliques = 0;
  int clique_size = 0;
  int n = 0;
  double avg_degree = 0.0;
  int communities = 0;
  double w_in = 0.0;
  double w_out = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string output;
  std::string labels;  ///< Planted-partition destination; empty skips it.
};

/** A flag combination the parser cannot rule out statically (exit 1). */
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Dispatches one detection run. `mu` is consulted only by cpm. gsbm-p
 * rejects graphs with any negative weight up front (NegativeWeightError)
 * rather than waiting for one to land inside a community mid-run, so the
 * command fails the same way regardless of seed.
 */
DetectResult run_algo(const std::string& algo, const WeightedGraph& g, const DetectConfig& config,
                      std::optional<double> mu);

/** Translates the CLI flag {immediate, per-sweep} into the enum. */
PreferenceUpdate parse_pref_update(const std::string& flag);

/** Dispatches one metric by name ({nmi, rnmi, rrnmi}). */
double eval_metric(const std::string& metric, const Partition& truth, const Partition& pred,
                   const MetricConfig& config);

/**
 * Loads the graph, runs the algorithm, optionally writes the partition
 * file, and prints a one-object JSON summary {algo, n, edges, communities,
 * objective, sigma2, iterations, wall_time_ms}. Everything except
 * wall_time_ms is deterministic in (inputs, flags, seed).
 */
void cmd_detect(const DetectOptions& opt, std::ostream& out);

/** Compares two partition files; prints JSON {metric, value, samples, seed}. */
void cmd_eval(const EvalOptions& opt, std::ostream& out);

/**
 * Writes the requested synthetic graph (and its planted partition when a
 * --labels path is given) and prints a JSON echo of the parameters plus
 * realized vertex/edge counts.
 */
void cmd_gen(const GenOptions& opt, std::ostream& out);

}  // namespace gsbm::cli
