#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bench.hpp"
#include "commands.hpp"
#include "gsbm/errors.hpp"

namespace {

/**
 * Exit codes: 0 success, 1 parse/config problems (bad flags, malformed
 * files, mismatched sizes, out-of-range parameters), 2 algorithm errors
 * (negative weights where a model forbids them, internal inconsistency),
 * 3 degenerate rrnmi reference.
 */
int run(int argc, char** argv) {
  CLI::App app{
      "Community detection in weighted graphs: Gaussian block-model "
      "coordinate ascent, label-propagation baselines, comparison metrics, "
      "synthetic generators, and parameter sweeps."};
  app.set_version_flag("--version", "1.0.0");
  app.require_subcommand(1);

  gsbm::cli::DetectOptions detect_options;
  CLI::App* detect = app.add_subcommand("detect", "Run a detection algorithm on a graph");
  detect->add_option("--algo", detect_options.algo, "Algorithm to run")
      ->required()
      ->check(CLI::IsMember({"gsbm-p", "gsbm-c", "cpm", "lpa", "lpa-p"}));
  detect->add_option("--input", detect_options.input, "Edge-list file (u v [weight] lines)");
  detect->add_option("--lfr-net", detect_options.lfr_net, "LFR network.dat (with --lfr-comm)");
  detect->add_option("--lfr-comm", detect_options.lfr_comm, "LFR community.dat");
  detect->add_option("--output", detect_options.output, "Write the partition here");
  detect->add_option("--seed", detect_options.seed, "Base RNG seed (default 0)");
  detect->add_option("--restarts", detect_options.restarts, "Independent runs (default 1)");
  detect->add_option("--max-iters", detect_options.max_iters, "Outer-sweep cap (default 100)");
  detect->add_option("--mu", detect_options.mu, "Fixed mean for cpm (cpm only)");
  detect->add_option("--pref-update", detect_options.pref_update,
                     "Preference refresh schedule (default immediate)")
      ->check(CLI::IsMember({"immediate", "per-sweep"}));
  detect->callback([&] { gsbm::cli::cmd_detect(detect_options, std::cout); });

  gsbm::cli::EvalOptions eval_options;
  CLI::App* eval = app.add_subcommand("eval", "Compare two partition files");
  eval->add_option("--truth", eval_options.truth, "Reference partition file")->required();
  eval->add_option("--pred", eval_options.pred, "Obtained partition file")->required();
  eval->add_option("--metric", eval_options.metric, "Comparison metric")
      ->required()
      ->check(CLI::IsMember({"nmi", "rnmi", "rrnmi"}));
  eval->add_option("--samples", eval_options.samples,
                   "Random references for rnmi/rrnmi (default 100)");
  eval->add_option("--seed", eval_options.seed, "RNG seed (default 0)");
  eval->callback([&] { gsbm::cli::cmd_eval(eval_options, std::cout); });

  gsbm::cli::GenOptions gen_options;
  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic graph");
  gen->require_subcommand(1);

  CLI::App* ring = gen->add_subcommand("ring", "Ring of cliques (deterministic)");
  ring->add_option("--cliques", gen_options.cliques, "Number of cliques (>= 3)")->required();
  ring->add_option("--size", gen_options.clique_size, "Vertices per clique (>= 2)")->required();
  ring->add_option("--output", gen_options.output, "Edge-list destination")->required();
  ring->add_option("--labels", gen_options.labels, "Planted-partition destination");
  ring->callback([&] {
    gen_options.kind = "ring";
    gsbm::cli::cmd_gen(gen_options, std::cout);
  });

  CLI::App* er = gen->add_subcommand("er", "Erdos-Renyi G(n, p) with p = avg_degree/(n-1)");
  er->add_option("--n", gen_options.n, "Vertices (>= 2)")->required();
  er->add_option("--avg-degree", gen_options.avg_degree, "Expected degree")->required();
  er->add_option("--seed", gen_options.seed, "RNG seed")->required();
  er->add_option("--output", gen_options.output, "Edge-list destination")->required();
  er->callback([&] {
    gen_options.kind = "er";
    gsbm::cli::cmd_gen(gen_options, std::cout);
  });

  CLI::App* planted = gen->add_subcommand("planted", "Planted partition with Gaussian noise");
  planted->add_option("--n", gen_options.n, "Vertices")->required();
  planted->add_option("--k", gen_options.communities, "Planted communities")->required();
  planted->add_option("--win", gen_options.w_in, "Intra-community pair mean")->required();
  planted->add_option("--wout", gen_options.w_out, "Inter-community pair mean (default 0)");
  planted->add_option("--sigma", gen_options.sigma, "Noise level (default 0)");
  planted->add_option("--seed", gen_options.seed, "RNG seed")->required();
  planted->add_option("--output", gen_options.output, "Edge-list destination")->required();
  planted->add_option("--labels", gen_options.labels, "Planted-partition destination");
  planted->callback([&] {
    gen_options.kind = "planted";
    gsbm::cli::cmd_gen(gen_options, std::cout);
  });

  std::string bench_config_path;
  std::string bench_output;
  CLI::App* bench = app.add_subcommand("bench", "Run a parameter sweep from a config file");
  bench->add_option("--config", bench_config_path, "key = value sweep description")->required();
  bench->add_option("--output", bench_output, "CSV destination (default stdout)");
  bench->callback([&] {
    std::ifstream in(bench_config_path);
    if (!in) throw gsbm::ParseError("cannot open config '" + bench_config_path + "'");
    gsbm::cli::BenchConfig config = gsbm::cli::parse_bench_config(in);
    if (bench_output.empty()) {
      gsbm::cli::cmd_bench(config, std::cout);
    } else {
      std::ofstream out(bench_output);
      if (!out) throw gsbm::ParseError("cannot open output '" + bench_output + "'");
      gsbm::cli::cmd_bench(config, out);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message or the requested help text
    return code == 0 ? 0 : 1;
  } catch (const gsbm::DegenerateReferenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const gsbm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gsbm::SizeMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gsbm::OutOfRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gsbm::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gsbm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
