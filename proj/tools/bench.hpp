#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace gsbm::cli {

/**
 * Parsed bench configuration. The file is flat `key = value` text ('#'
 * comments, blank lines allowed); list values are comma-separated.
 *
 * Keys:
 *   kind         ring | er | planted | lfr             (required)
 *   param        swept knob for the kind               (required unless lfr)
 *                  ring:    cliques | clique_size
 *                  er:      n | avg_degree
 *                  planted: n | communities | w_in | w_out | sigma
 *   values       comma-separated numbers, one sweep point each
 *   graphs       instances per point (default 1)
 *   algos        comma-separated from {gsbm-p, gsbm-c, cpm, lpa, lpa-p}
 *   restarts     detection restarts per run (default 1)
 *   max_iters    outer-sweep cap (default 100)
 *   pref_update  immediate | per-sweep (default immediate)
 *   mu           cpm resolution (required iff algos include cpm)
 *   metric       rrnmi | rnmi | nmi | none (default rrnmi); applied only
 *                when the generator plants a partition (er never does)
 *   samples      random references per metric call (default 100)
 *   seed         base seed (default 0)
 *   threads      worker-pool size (default 0 = hardware concurrency)
 *   lfr_dir      directory holding network.dat/community.dat, or
 *                subdirectories that each hold such a pair (kind lfr)
 *
 * Fixed generator knobs (clique_size, n, avg_degree, communities, w_in,
 * w_out, sigma) are given as plain keys; the swept one comes from
 * `values` instead and must not also be set as a fixed key.
 */
struct BenchConfig {
  std::string kind;
  std::string param;
  std::vector<double> values;
  int graphs = 1;
  std::vector<std::string> algos;
  int restarts = 1;
  int max_iters = 100;
  std::string pref_update = "immediate";
  double mu = 0.0;
  bool has_mu = false;
  std::string metric = "rrnmi";
  int samples = 100;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string lfr_dir;
  // Fixed generator knobs; -1 / NaN-free sentinel handling is the
  // parser's job, so plain zero-initialized fields suffice here.
  int cliques = 0;
  int clique_size = 0;
  int n = 0;
  double avg_degree = 0.0;
  int communities = 0;
  double w_in = 0.0;
  double w_out = 0.0;
  double sigma = 0.0;
};

/** Parses and validates a config; throws ParseError with the line number. */
BenchConfig parse_bench_config(std::istream& in);

/**
 * Runs the sweep on a bounded worker pool and writes the CSV:
 * a header, one row per (point, graph, algo) in that nesting order, then
 * one mean row per algo after each point's graphs (graph_index column
 * "mean", seed and error empty, numeric columns the plain running mean of
 * that point's non-error rows). Column order is fixed:
 * kind,n,param_name,param_value,graph_index,algo,seed,communities,
 * objective,metric_name,metric_value,wall_time_ms,error.
 * Per-row failures land in `error` and the run continues. Algorithms run
 * with library semantics — in particular gsbm-p accepts the negative
 * inter-community draws of noisy generators and only faults if a negative
 * weight lands inside a community (unlike `detect`, which rejects signed
 * input up front); gsbm-c and lpa-p require wholly nonnegative graphs.
 * The per-graph seed is mix_seed(base, point, graph); detection derives
 * its restart streams from it, so any row can be replayed in isolation.
 * Output is byte-identical across runs and thread counts except
 * wall_time_ms.
 */
void cmd_bench(const BenchConfig& config, std::ostream& csv);

}  // namespace gsbm::cli
