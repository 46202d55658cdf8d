#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "commands.hpp"
#include "gsbm/errors.hpp"
#include "gsbm/generators.hpp"
#include "gsbm/io.hpp"
#include "gsbm/random.hpp"

namespace gsbm::cli {
namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& value, std::size_t line) {
  try {
    std::size_t used = 0;
    double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ParseError("invalid number '" + value + "'", line);
  }
}

int parse_int(const std::string& value, std::size_t line) {
  double parsed = parse_double(value, line);
  if (parsed != std::floor(parsed) || std::abs(parsed) > 2e9) {
    throw ParseError("expected an integer, got '" + value + "'", line);
  }
  return static_cast<int>(parsed);
}

std::uint64_t parse_u64(const std::string& value, std::size_t line) {
  try {
    std::size_t used = 0;
    unsigned long long parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ParseError("invalid seed '" + value + "'", line);
  }
}

const std::set<std::string> kAlgos = {"gsbm-p", "gsbm-c", "cpm", "lpa", "lpa-p"};
const std::set<std::string> kMetrics = {"rrnmi", "rnmi", "nmi", "none"};

/** Sweepable knobs per kind; the non-swept ones must arrive as fixed keys. */
std::vector<std::string> knobs_for(const std::string& kind) {
  if (kind == "ring") return {"cliques", "clique_size"};
  if (kind == "er") return {"n", "avg_degree"};
  return {"n", "communities", "w_in", "w_out", "sigma"};  // planted
}

bool integral_knob(const std::string& knob) {
  return knob == "cliques" || knob == "clique_size" || knob == "n" || knob == "communities";
}

/** Generator arguments for one sweep point, after applying the swept value. */
struct PointParams {
  int cliques = 0;
  int clique_size = 0;
  int n = 0;
  double avg_degree = 0.0;
  int communities = 0;
  double w_in = 0.0;
  double w_out = 0.0;
  double sigma = 0.0;
  std::string param_value;  ///< Formatted swept value, or LFR pair name.
  std::string lfr_net;
  std::string lfr_comm;
};

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

struct Row {
  std::string n;
  std::string graph_index;
  std::string algo;
  std::string seed;
  std::optional<double> communities;
  std::optional<double> objective;
  std::string metric_name;
  std::optional<double> metric_value;
  std::optional<double> wall_time_ms;
  std::string error;
};

void write_row(std::ostream& csv, const BenchConfig& config, const std::string& param_name,
               const PointParams& point, const Row& row) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : ""; };
  csv << csv_escape(config.kind) << ',' << row.n << ',' << csv_escape(param_name) << ','
      << csv_escape(point.param_value) << ',' << row.graph_index << ',' << csv_escape(row.algo)
      << ',' << row.seed << ',' << opt(row.communities) << ',' << opt(row.objective) << ','
      << csv_escape(row.metric_name) << ',' << opt(row.metric_value) << ','
      << opt(row.wall_time_ms) << ',' << csv_escape(row.error) << '\n';
}

/** Builds the graph (and planted partition if the kind has one). */
std::pair<WeightedGraph, std::optional<Partition>> make_graph(const BenchConfig& config,
                                                              const PointParams& point,
                                                              std::uint64_t graph_seed) {
  if (config.kind == "ring") {
    auto [g, planted] = gen_ring_of_cliques(point.cliques, point.clique_size);
    return {std::move(g), std::move(planted)};
  }
  if (config.kind == "er") {
    return {gen_er(point.n, point.avg_degree, graph_seed), std::nullopt};
  }
  if (config.kind == "planted") {
    auto [g, planted] =
        gen_planted(point.n, point.communities, point.w_in, point.w_out, point.sigma, graph_seed);
    return {std::move(g), std::move(planted)};
  }
  auto [g, planted] = load_lfr(point.lfr_net, point.lfr_comm);
  return {std::move(g), std::move(planted)};
}

std::vector<Row> run_task(const BenchConfig& config, const PointParams& point, int point_index,
                          int graph_index) {
  std::uint64_t graph_seed = mix_seed(config.seed, static_cast<std::uint64_t>(point_index),
                                      static_cast<std::uint64_t>(graph_index));
  std::vector<Row> rows(config.algos.size());
  for (std::size_t a = 0; a < config.algos.size(); ++a) {
    rows[a].graph_index = std::to_string(graph_index);
    rows[a].algo = config.algos[a];
  }

  WeightedGraph g;
  std::optional<Partition> planted;
  try {
    std::tie(g, planted) = make_graph(config, point, graph_seed);
  } catch (const std::exception& e) {
    for (Row& row : rows) row.error = e.what();
    return rows;
  }

  DetectConfig detect_config;
  detect_config.seed = graph_seed;
  detect_config.restarts = config.restarts;
  detect_config.max_outer_iters = config.max_iters;
  detect_config.preference_update = parse_pref_update(config.pref_update);

  MetricConfig metric_config;
  metric_config.samples = config.samples;
  metric_config.seed = graph_seed;

  for (std::size_t a = 0; a < config.algos.size(); ++a) {
    Row& row = rows[a];
    row.n = std::to_string(g.vertex_count());
    row.seed = std::to_string(graph_seed);
    try {
      std::optional<double> mu;
      if (config.has_mu) mu = config.mu;
      auto start = std::chrono::steady_clock::now();
      DetectResult res = run_algo(config.algos[a], g, detect_config, mu);
      std::chrono::duration<double, std::milli> elapsed =
          std::chrono::steady_clock::now() - start;
      row.communities = res.community_count;
      row.objective = res.objective;
      row.wall_time_ms = elapsed.count();
      if (planted.has_value() && config.metric != "none") {
        double value = eval_metric(config.metric, *planted, res.partition, metric_config);
        row.metric_name = config.metric;
        row.metric_value = value;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  return rows;
}

/** Plain running mean, in row order, so a reader can reproduce it exactly. */
std::optional<double> mean_of(const std::vector<Row>& rows,
                              std::optional<double> Row::*field) {
  double sum = 0.0;
  int count = 0;
  for (const Row& row : rows) {
    if (!row.error.empty() || !(row.*field).has_value()) continue;
    sum += *(row.*field);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

std::vector<PointParams> realize_points(const BenchConfig& config) {
  std::vector<PointParams> points;
  if (config.kind == "lfr") {
    std::vector<std::pair<std::string, fs::path>> pairs;
    fs::path root(config.lfr_dir);
    if (!fs::is_directory(root)) {
      throw ParseError("lfr_dir '" + config.lfr_dir + "' is not a directory");
    }
    if (fs::exists(root / "network.dat")) {
      pairs.emplace_back(root.filename().string(), root);
    } else {
      for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "network.dat")) {
          pairs.emplace_back(entry.path().filename().string(), entry.path());
        }
      }
      std::sort(pairs.begin(), pairs.end());
    }
    if (pairs.empty()) {
      throw ParseError("no network.dat found under '" + config.lfr_dir + "'");
    }
    for (const auto& [name, dir] : pairs) {
      if (!fs::exists(dir / "community.dat")) {
        throw ParseError("'" + (dir / "network.dat").string() + "' has no community.dat");
      }
      PointParams point;
      point.param_value = name;
      point.lfr_net = (dir / "network.dat").string();
      point.lfr_comm = (dir / "community.dat").string();
      points.push_back(std::move(point));
    }
    return points;
  }

  for (double value : config.values) {
    PointParams point;
    point.cliques = config.cliques;
    point.clique_size = config.clique_size;
    point.n = config.n;
    point.avg_degree = config.avg_degree;
    point.communities = config.communities;
    point.w_in = config.w_in;
    point.w_out = config.w_out;
    point.sigma = config.sigma;
    point.param_value = format_number(value);
    if (config.param == "cliques") point.cliques = static_cast<int>(value);
    if (config.param == "clique_size") point.clique_size = static_cast<int>(value);
    if (config.param == "n") point.n = static_cast<int>(value);
    if (config.param == "avg_degree") point.avg_degree = value;
    if (config.param == "communities") point.communities = static_cast<int>(value);
    if (config.param == "w_in") point.w_in = value;
    if (config.param == "w_out") point.w_out = value;
    if (config.param == "sigma") point.sigma = value;
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig config;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto equals = line.find('=');
    if (equals == std::string::npos) {
      throw ParseError("expected 'key = value', got '" + line + "'", line_number);
    }
    std::string key = trim(line.substr(0, equals));
    std::string value = trim(line.substr(equals + 1));
    if (key.empty() || value.empty()) {
      throw ParseError("expected 'key = value', got '" + line + "'", line_number);
    }
    if (!seen.insert(key).second) {
      throw ParseError("duplicate key '" + key + "'", line_number);
    }

    if (key == "kind") {
      config.kind = value;
    } else if (key == "param") {
      config.param = value;
    } else if (key == "values") {
      for (const std::string& item : split_list(value)) {
        config.values.push_back(parse_double(item, line_number));
      }
    } else if (key == "graphs") {
      config.graphs = parse_int(value, line_number);
    } else if (key == "algos") {
      config.algos = split_list(value);
    } else if (key == "restarts") {
      config.restarts = parse_int(value, line_number);
    } else if (key == "max_iters") {
      config.max_iters = parse_int(value, line_number);
    } else if (key == "pref_update") {
      config.pref_update = value;
    } else if (key == "mu") {
      config.mu = parse_double(value, line_number);
      config.has_mu = true;
    } else if (key == "metric") {
      config.metric = value;
    } else if (key == "samples") {
      config.samples = parse_int(value, line_number);
    } else if (key == "seed") {
      config.seed = parse_u64(value, line_number);
    } else if (key == "threads") {
      config.threads = parse_int(value, line_number);
    } else if (key == "lfr_dir") {
      config.lfr_dir = value;
    } else if (key == "cliques") {
      config.cliques = parse_int(value, line_number);
    } else if (key == "clique_size") {
      config.clique_size = parse_int(value, line_number);
    } else if (key == "n") {
      config.n = parse_int(value, line_number);
    } else if (key == "avg_degree") {
      config.avg_degree = parse_double(value, line_number);
    } else if (key == "communities") {
      config.communities = parse_int(value, line_number);
    } else if (key == "w_in") {
      config.w_in = parse_double(value, line_number);
    } else if (key == "w_out") {
      config.w_out = parse_double(value, line_number);
    } else if (key == "sigma") {
      config.sigma = parse_double(value, line_number);
    } else {
      throw ParseError("unknown key '" + key + "'", line_number);
    }
  }

  if (config.kind != "ring" && config.kind != "er" && config.kind != "planted" &&
      config.kind != "lfr") {
    throw ParseError(config.kind.empty() ? "missing required key 'kind'"
                                         : "unknown kind '" + config.kind + "'");
  }
  if (config.algos.empty()) throw ParseError("missing required key 'algos'");
  for (const std::string& algo : config.algos) {
    if (!kAlgos.count(algo)) throw ParseError("unknown algorithm '" + algo + "'");
    if (algo == "cpm" && !config.has_mu) throw ParseError("algos include cpm but 'mu' is unset");
  }
  if (!kMetrics.count(config.metric)) throw ParseError("unknown metric '" + config.metric + "'");
  if (config.pref_update != "immediate" && config.pref_update != "per-sweep") {
    throw ParseError("pref_update must be 'immediate' or 'per-sweep'");
  }
  if (config.graphs < 1) throw ParseError("'graphs' must be at least 1");
  if (config.restarts < 1) throw ParseError("'restarts' must be at least 1");
  if (config.max_iters < 1) throw ParseError("'max_iters' must be at least 1");
  if (config.samples < 1) throw ParseError("'samples' must be at least 1");
  if (config.threads < 0) throw ParseError("'threads' must be nonnegative");

  if (config.kind == "lfr") {
    if (config.lfr_dir.empty()) throw ParseError("kind lfr requires 'lfr_dir'");
    if (!config.param.empty() || !config.values.empty()) {
      throw ParseError("kind lfr sweeps files, not parameters: drop 'param'/'values'");
    }
    return config;
  }

  std::vector<std::string> knobs = knobs_for(config.kind);
  if (std::find(knobs.begin(), knobs.end(), config.param) == knobs.end()) {
    throw ParseError(config.param.empty()
                         ? "missing required key 'param'"
                         : "'" + config.param + "' is not sweepable for kind " + config.kind);
  }
  if (config.values.empty()) throw ParseError("missing required key 'values'");
  if (seen.count(config.param)) {
    throw ParseError("'" + config.param + "' is the swept parameter; remove the fixed key");
  }
  if (integral_knob(config.param)) {
    for (double value : config.values) {
      if (value != std::floor(value)) {
        throw ParseError("'" + config.param + "' values must be integers");
      }
    }
  }
  // Every non-swept knob needs an explicit value, except the two with a
  // natural zero default (w_out, sigma).
  for (const std::string& knob : knobs) {
    if (knob == config.param || knob == "w_out" || knob == "sigma") continue;
    if (!seen.count(knob)) throw ParseError("kind " + config.kind + " requires '" + knob + "'");
  }
  return config;
}

void cmd_bench(const BenchConfig& config, std::ostream& csv) {
  std::vector<PointParams> points = realize_points(config);
  std::string param_name = config.kind == "lfr" ? "pair" : config.param;

  struct Task {
    int point;
    int graph;
  };
  std::vector<Task> tasks;
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    for (int g = 0; g < config.graphs; ++g) tasks.push_back({p, g});
  }

  std::vector<std::vector<Row>> results(tasks.size());
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      results[index] =
          run_task(config, points[tasks[index].point], tasks[index].point, tasks[index].graph);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  csv << "kind,n,param_name,param_value,graph_index,algo,seed,communities,objective,"
         "metric_name,metric_value,wall_time_ms,error\n";
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    for (int g = 0; g < config.graphs; ++g) {
      for (const Row& row : results[p * config.graphs + g]) {
        write_row(csv, config, param_name, points[p], row);
      }
    }
    // One mean row per algorithm, aggregating this point's non-error rows.
    for (std::size_t a = 0; a < config.algos.size(); ++a) {
      std::vector<Row> algo_rows;
      for (int g = 0; g < config.graphs; ++g) {
        algo_rows.push_back(results[p * config.graphs + g][a]);
      }
      Row mean;
      mean.graph_index = "mean";
      mean.algo = config.algos[a];
      for (const Row& row : algo_rows) {
        if (row.error.empty() && !row.n.empty()) {
          mean.n = row.n;
          break;
        }
      }
      mean.communities = mean_of(algo_rows, &Row::communities);
      mean.objective = mean_of(algo_rows, &Row::objective);
      mean.metric_value = mean_of(algo_rows, &Row::metric_value);
      mean.wall_time_ms = mean_of(algo_rows, &Row::wall_time_ms);
      for (const Row& row : algo_rows) {
        if (!row.metric_name.empty()) {
          mean.metric_name = row.metric_name;
          break;
        }
      }
      write_row(csv, config, param_name, points[p], mean);
    }
  }
}

}  // namespace gsbm::cli
