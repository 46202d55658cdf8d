#include "gsbm/detect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <utility>

#include "gsbm/errors.hpp"
#include "gsbm/objectives.hpp"
#include "gsbm/random.hpp"

namespace gsbm {

namespace {

void require_nonempty(const WeightedGraph& g) {
  if (g.vertex_count() < 1) throw SizeMismatchError("detection requires at least one vertex");
}

/** One coordinate-ascent run's outcome, before restart selection. */
struct RunOutcome {
  std::vector<int> labels;
  double objective = 0.0;
  std::vector<double> trace;
  int iterations = 0;
};

/**
 * Shared bookkeeping for label-sweep engines: slot-based communities
 * (slots never outnumber vertices since labels only ever propagate),
 * O(1) member removal, and per-vertex score accumulation scratch.
 */
struct SweepState {
  int n = 0;
  std::vector<int> labels;                  // vertex -> slot
  std::vector<std::vector<int>> members;    // slot -> vertices (unordered)
  std::vector<int> member_pos;              // vertex -> index in its slot's list
  std::vector<double> score;                // slot-indexed accumulator
  std::vector<char> score_set;
  std::vector<int> touched;
  std::vector<int> order;
  std::vector<int> maximizers;

  void init_singletons(int vertex_count) {
    n = vertex_count;
    labels.resize(n);
    members.assign(n, {});
    member_pos.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      labels[v] = v;
      members[v] = {v};
    }
    score.assign(n, 0.0);
    score_set.assign(n, 0);
    touched.clear();
    order.resize(n);
    for (int v = 0; v < n; ++v) order[v] = v;
  }

  void init_from(const std::vector<int>& canonical) {
    n = static_cast<int>(canonical.size());
    labels = canonical;
    members.assign(n, {});
    member_pos.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      member_pos[v] = static_cast<int>(members[labels[v]].size());
      members[labels[v]].push_back(v);
    }
    score.assign(n, 0.0);
    score_set.assign(n, 0);
    touched.clear();
    order.resize(n);
    for (int v = 0; v < n; ++v) order[v] = v;
  }

  void relocate(int v, int from, int to) {
    auto& src = members[from];
    int pos = member_pos[v];
    src[pos] = src.back();
    member_pos[src.back()] = pos;
    src.pop_back();
    member_pos[v] = static_cast<int>(members[to].size());
    members[to].push_back(v);
    labels[v] = to;
  }

  void add_score(int slot, double value) {
    if (!score_set[slot]) {
      score_set[slot] = 1;
      score[slot] = 0.0;
      touched.push_back(slot);
    }
    score[slot] += value;
  }

  void clear_scores() {
    for (int slot : touched) score_set[slot] = 0;
    touched.clear();
  }
};

/**
 * Trace recording shared by the ascent engines: a sweep whose objective
 * drops below the last recorded value terminates the run without being
 * recorded (it cannot be the returned optimum — the best-seen partition
 * is), keeping traces non-decreasing. `record_flat` controls whether the
 * run continues after a sweep that fails to improve by > tol.
 */
struct TraceKeeper {
  std::vector<double> trace;
  double tol;

  explicit TraceKeeper(double objective_tol) : tol(objective_tol) {}

  /** Returns false when the run must stop. */
  bool record(double q) {
    if (!trace.empty() && q < trace.back()) return false;  // terminal, unrecorded
    trace.push_back(q);
    return true;
  }

  bool improved() const {
    std::size_t k = trace.size();
    if (k < 2) return true;
    return trace[k - 1] > trace[k - 2] + tol;
  }
};

// ---------------------------------------------------------------------------
// gsbm-p engine
// ---------------------------------------------------------------------------

class GsbmEngine {
 public:
  GsbmEngine(const WeightedGraph& g, const DetectConfig& cfg)
      : g_(g), cfg_(cfg), slot_scratch_(static_cast<std::size_t>(g.vertex_count()), -1) {}

  RunOutcome run(std::mt19937_64 rng) {
    const int n = g_.vertex_count();
    st_.init_singletons(n);
    pref_.assign(n, 1.0);  // singletons are edgeless: all-ones fallback
    lambda_.assign(n, 0.0);

    RunOutcome out;
    out.labels = st_.labels;  // all-singleton start has Q = 0
    double best_q = 0.0;
    TraceKeeper keeper(cfg_.objective_tol);

    for (int sweep = 1; sweep <= cfg_.max_outer_iters; ++sweep) {
      out.iterations = sweep;
      std::shuffle(st_.order.begin(), st_.order.end(), rng);
      int moved = 0;
      for (int v : st_.order) {
        moved += visit(v, rng);
      }
      if (cfg_.preference_update == PreferenceUpdate::per_sweep) {
        // refresh() zeroes lambda on slots that emptied during the sweep.
        for (int slot = 0; slot < n; ++slot) refresh(slot);
      }
      double q = 0.0;
      for (int slot = 0; slot < n; ++slot) q += lambda_[slot] * lambda_[slot];

      if (!keeper.record(q)) break;
      if (q > best_q) {
        best_q = q;
        out.labels = st_.labels;
      }
      if (moved == 0) break;
      if (!keeper.improved()) break;
    }
    out.objective = best_q;
    out.trace = std::move(keeper.trace);
    return out;
  }

 private:
  /** Returns 1 if the vertex moved. */
  int visit(int v, std::mt19937_64& rng) {
    const int cur = st_.labels[v];
    for (const auto& nb : g_.neighbors(v)) {
      st_.add_score(st_.labels[nb.vertex], pref_[nb.vertex] * nb.weight);
    }
    double cur_score = st_.score_set[cur] ? st_.score[cur] : 0.0;
    double best = cur_score;
    for (int slot : st_.touched) best = std::max(best, st_.score[slot]);
    if (cur_score == best) {
      st_.clear_scores();
      return 0;  // the current label attains the max: stay
    }
    st_.maximizers.clear();
    for (int slot : st_.touched) {
      if (st_.score[slot] == best) st_.maximizers.push_back(slot);
    }
    int target = st_.maximizers.front();
    if (st_.maximizers.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, st_.maximizers.size() - 1);
      target = st_.maximizers[pick(rng)];
    }
    st_.clear_scores();

    st_.relocate(v, cur, target);
    if (cfg_.preference_update == PreferenceUpdate::immediate) {
      refresh(cur);
      refresh(target);
    }
    return 1;
  }

  /** Recomputes the eigenpair-based preferences of one community slot. */
  void refresh(int slot) {
    const auto& members = st_.members[slot];
    if (members.empty()) {
      lambda_[slot] = 0.0;
      return;
    }
    detail::build_subgraph(g_, members, slot_scratch_, sub_);
    if (!sub_.has_edge) {
      lambda_[slot] = 0.0;
      for (int v : members) pref_[v] = 1.0;  // fallback
      return;
    }
    warm_.resize(members.size());
    for (std::size_t k = 0; k < members.size(); ++k) warm_[k] = pref_[members[k]];
    PowerResult eig = detail::power_on_subgraph(sub_, cfg_.power_tol, cfg_.power_max_iters, warm_);
    if (eig.eigenvalue <= kLambdaEpsilon) {
      lambda_[slot] = 0.0;
      for (int v : members) pref_[v] = 1.0;
      return;
    }
    lambda_[slot] = eig.eigenvalue;
    double root = std::sqrt(eig.eigenvalue);
    for (std::size_t k = 0; k < members.size(); ++k) pref_[members[k]] = root * eig.vector[k];
  }

  const WeightedGraph& g_;
  const DetectConfig& cfg_;
  SweepState st_;
  std::vector<double> pref_;
  std::vector<double> lambda_;
  std::vector<int> slot_scratch_;
  std::vector<double> warm_;
  detail::LocalSubgraph sub_;
};

// ---------------------------------------------------------------------------
// Potts-family engine: classic LPA, constrained MLE, constrained fixed-mu
// ---------------------------------------------------------------------------

enum class PottsMode { lpa, mle, fixed_mu };

class PottsEngine {
 public:
  PottsEngine(const WeightedGraph& g, const DetectConfig& cfg, PottsMode mode, double mu)
      : g_(g), cfg_(cfg), mode_(mode), mu_(mu) {}

  RunOutcome run(std::mt19937_64 rng, const std::vector<int>* initial) {
    const int n = g_.vertex_count();
    if (initial) {
      st_.init_from(*initial);
    } else {
      st_.init_singletons(n);
    }
    intra_.assign(n, 0.0);  // S_z over ordered pairs = 2 * intra edge weight
    for (const Edge& e : g_.edges()) {
      if (st_.labels[e.u] == st_.labels[e.v]) intra_[st_.labels[e.u]] += 2.0 * e.weight;
    }

    RunOutcome out;
    out.labels = st_.labels;
    double best_q = objective();
    TraceKeeper keeper(cfg_.objective_tol);

    for (int sweep = 1; sweep <= cfg_.max_outer_iters; ++sweep) {
      out.iterations = sweep;
      std::shuffle(st_.order.begin(), st_.order.end(), rng);
      int moved = 0;
      for (int v : st_.order) moved += visit(v, rng);

      double q = objective();
      if (!keeper.record(q)) break;
      if (q > best_q) {
        best_q = q;
        out.labels = st_.labels;
      }
      if (moved == 0) break;
      // Classic LPA stops only on a no-move sweep or the iteration cap.
      if (mode_ != PottsMode::lpa && !keeper.improved()) break;
    }
    out.objective = best_q;
    out.trace = std::move(keeper.trace);
    return out;
  }

 private:
  double contrib(double s, int size) const {
    if (size <= 0) return 0.0;
    double nz = static_cast<double>(size);
    return (s * s) / (nz * nz);
  }

  double objective() const {
    double q = 0.0;
    if (mode_ == PottsMode::lpa) {
      for (int slot = 0; slot < st_.n; ++slot) q += intra_[slot];
    } else if (mode_ == PottsMode::mle) {
      for (int slot = 0; slot < st_.n; ++slot) {
        q += contrib(intra_[slot], static_cast<int>(st_.members[slot].size()));
      }
    } else {
      double lpa = 0.0;
      double sq_sizes = 0.0;
      for (int slot = 0; slot < st_.n; ++slot) {
        lpa += intra_[slot];
        double sz = static_cast<double>(st_.members[slot].size());
        sq_sizes += sz * sz;
      }
      q = mu_ * (2.0 * lpa - mu_ * sq_sizes);
    }
    return q;
  }

  int visit(int v, std::mt19937_64& rng) {
    const int cur = st_.labels[v];
    for (const auto& nb : g_.neighbors(v)) {
      st_.add_score(st_.labels[nb.vertex], nb.weight);
    }
    double s_cur = st_.score_set[cur] ? st_.score[cur] : 0.0;

    // Score candidates relative to staying put; the current label scores 0.
    const int n_cur = static_cast<int>(st_.members[cur].size());
    double best = 0.0;
    st_.maximizers.clear();
    for (int slot : st_.touched) {
      if (slot == cur) continue;
      double gain = 0.0;
      double s_to = st_.score[slot];
      int n_to = static_cast<int>(st_.members[slot].size());
      switch (mode_) {
        case PottsMode::lpa:
          gain = s_to - s_cur;
          break;
        case PottsMode::mle:
          gain = contrib(intra_[cur] - 2.0 * s_cur, n_cur - 1) +
                 contrib(intra_[slot] + 2.0 * s_to, n_to + 1) - contrib(intra_[cur], n_cur) -
                 contrib(intra_[slot], n_to);
          break;
        case PottsMode::fixed_mu:
          // Q-gain / (2 mu): ranks identically for mu > 0 and reduces to
          // the LPA gain at mu = 0.
          gain = 2.0 * (s_to - s_cur) - mu_ * static_cast<double>(n_to - n_cur + 1);
          break;
      }
      if (gain > best) {
        best = gain;
        st_.maximizers.clear();
        st_.maximizers.push_back(slot);
      } else if (gain == best && best > 0.0) {
        st_.maximizers.push_back(slot);
      }
    }
    if (best <= 0.0 || st_.maximizers.empty()) {
      st_.clear_scores();
      return 0;  // staying attains the max
    }
    int target = st_.maximizers.front();
    if (st_.maximizers.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, st_.maximizers.size() - 1);
      target = st_.maximizers[pick(rng)];
    }
    double s_to = st_.score[target];
    st_.clear_scores();

    intra_[cur] -= 2.0 * s_cur;
    intra_[target] += 2.0 * s_to;
    st_.relocate(v, cur, target);
    return 1;
  }

  const WeightedGraph& g_;
  const DetectConfig& cfg_;
  PottsMode mode_;
  double mu_;
  SweepState st_;
  std::vector<double> intra_;
};

// ---------------------------------------------------------------------------
// lpa-p engine: random-walk preferences, immediate refresh, hard sweep cap
// ---------------------------------------------------------------------------

class LpaPEngine {
 public:
  LpaPEngine(const WeightedGraph& g, const DetectConfig& cfg) : g_(g), cfg_(cfg) {}

  RunOutcome run(std::mt19937_64 rng) {
    const int n = g_.vertex_count();
    st_.init_singletons(n);
    pref_.assign(n, 1.0);  // one-member stationary distribution

    RunOutcome out;
    for (int sweep = 1; sweep <= cfg_.lpa_p_sweeps; ++sweep) {
      out.iterations = sweep;
      std::shuffle(st_.order.begin(), st_.order.end(), rng);
      int moved = 0;
      for (int v : st_.order) moved += visit(v, rng);
      out.trace.push_back(objective());
      if (moved == 0) break;
    }
    // lpa-p keeps the final partition, not the best-scoring sweep.
    out.labels = st_.labels;
    out.objective = out.trace.empty() ? 0.0 : out.trace.back();
    return out;
  }

 private:
  double objective() const {
    // Preference-weighted score sum_z p^T W_z p with the current p.
    double q = 0.0;
    for (const Edge& e : g_.edges()) {
      if (st_.labels[e.u] == st_.labels[e.v]) q += 2.0 * e.weight * pref_[e.u] * pref_[e.v];
    }
    return q;
  }

  int visit(int v, std::mt19937_64& rng) {
    const int cur = st_.labels[v];
    const double m = cfg_.preference_exponent;
    for (const auto& nb : g_.neighbors(v)) {
      double weight = m == 1.0 ? pref_[nb.vertex] : std::pow(pref_[nb.vertex], m);
      st_.add_score(st_.labels[nb.vertex], weight * nb.weight);
    }
    double cur_score = st_.score_set[cur] ? st_.score[cur] : 0.0;
    double best = cur_score;
    for (int slot : st_.touched) best = std::max(best, st_.score[slot]);
    if (cur_score == best) {
      st_.clear_scores();
      return 0;
    }
    st_.maximizers.clear();
    for (int slot : st_.touched) {
      if (st_.score[slot] == best) st_.maximizers.push_back(slot);
    }
    int target = st_.maximizers.front();
    if (st_.maximizers.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, st_.maximizers.size() - 1);
      target = st_.maximizers[pick(rng)];
    }
    st_.clear_scores();

    st_.relocate(v, cur, target);
    refresh(cur);
    refresh(target);
    return 1;
  }

  /** Stationary distribution of the walk restricted to one community. */
  void refresh(int slot) {
    const auto& members = st_.members[slot];
    if (members.empty()) return;
    double total = 0.0;
    for (int u : members) {
      double s = 0.0;
      for (const auto& nb : g_.neighbors(u)) {
        if (st_.labels[nb.vertex] == slot && nb.vertex != u) s += nb.weight;
      }
      pref_[u] = s;
      total += s;
    }
    if (total <= 0.0) {
      double uniform = 1.0 / static_cast<double>(members.size());
      for (int u : members) pref_[u] = uniform;
      return;
    }
    for (int u : members) pref_[u] /= total;
  }

  const WeightedGraph& g_;
  const DetectConfig& cfg_;
  SweepState st_;
  std::vector<double> pref_;
};

/** Runs `restarts` independent streams of `run_fn`, keeping the best objective. */
template <typename RunFn>
RunOutcome best_of_restarts(const DetectConfig& cfg, RunFn&& run_fn) {
  RunOutcome best;
  bool have = false;
  int restarts = std::max(cfg.restarts, 1);
  for (int r = 0; r < restarts; ++r) {
    RunOutcome out = run_fn(derive_rng(cfg.seed, static_cast<std::uint64_t>(r)));
    if (!have || out.objective > best.objective) {
      best = std::move(out);
      have = true;
    }
  }
  return best;
}

std::vector<PreferenceVector> all_preferences(const WeightedGraph& g, const Partition& p,
                                              const DetectConfig& cfg) {
  std::vector<PreferenceVector> prefs;
  prefs.reserve(p.sizes().size());
  for (const auto& [label, size] : p.sizes()) {
    prefs.push_back(community_preferences(g, p, label, cfg.power_tol, cfg.power_max_iters));
  }
  return prefs;
}

double constrained_sigma2(const WeightedGraph& g, const Partition& p, std::optional<double> mu) {
  // sigma^2 = (2 sum_E w^2 - 2 sum_z mu_z S_z + sum_z mu_z^2 n_z^2) / n^2
  // with mu_z the community mean (MLE S_z / n_z^2, or the fixed mu).
  double sum_w2 = 0.0;
  std::map<int, double> intra;
  for (const Edge& e : g.edges()) {
    sum_w2 += e.weight * e.weight;
    if (p.labels()[e.u] == p.labels()[e.v]) intra[p.labels()[e.u]] += 2.0 * e.weight;
  }
  double acc = 2.0 * sum_w2;
  for (const auto& [label, size] : p.sizes()) {
    double nz = static_cast<double>(size);
    double s = 0.0;
    if (auto it = intra.find(label); it != intra.end()) s = it->second;
    double mz = mu.has_value() ? *mu : s / (nz * nz);
    acc += -2.0 * mz * s + mz * mz * nz * nz;
  }
  double n = static_cast<double>(g.vertex_count());
  return acc / (n * n);
}

}  // namespace

DetectResult detect_gsbm_p(const WeightedGraph& g, const DetectConfig& config) {
  require_nonempty(g);
  GsbmEngine engine(g, config);
  RunOutcome out = best_of_restarts(config, [&](std::mt19937_64 rng) { return engine.run(rng); });

  DetectResult result;
  result.partition = Partition(std::move(out.labels));
  result.objective = gsbm_objective(g, result.partition, config.power_tol, config.power_max_iters);
  result.objective_trace = std::move(out.trace);
  result.iterations = out.iterations;
  result.community_count = result.partition.community_count();
  result.sigma2 =
      sigma2_mle(g, result.partition, all_preferences(g, result.partition, config));
  return result;
}

DetectResult detect_constrained(const WeightedGraph& g, const DetectConfig& config,
                                std::optional<double> mu) {
  require_nonempty(g);
  if (!mu.has_value() && g.has_negative_weight()) {
    throw NegativeWeightError("per-community mean MLE requires nonnegative weights");
  }
  if (mu.has_value() && *mu < 0.0) {
    throw OutOfRangeError("mu must be nonnegative, got " + std::to_string(*mu));
  }
  // At mu = 0 the fixed-mu objective is identically zero, so it cannot rank
  // partitions; the gain formula degenerates to the LPA gain, and the run
  // is exactly classic label propagation (the trace then records Q_LPA).
  PottsMode mode = PottsMode::mle;
  if (mu.has_value()) mode = *mu == 0.0 ? PottsMode::lpa : PottsMode::fixed_mu;
  PottsEngine engine(g, config, mode, mu.value_or(0.0));
  RunOutcome out =
      best_of_restarts(config, [&](std::mt19937_64 rng) { return engine.run(rng, nullptr); });

  DetectResult result;
  result.partition = Partition(std::move(out.labels));
  result.objective = constrained_objective(g, result.partition, mu);
  result.objective_trace = std::move(out.trace);
  result.iterations = out.iterations;
  result.community_count = result.partition.community_count();
  result.sigma2 = constrained_sigma2(g, result.partition, mu);
  return result;
}

DetectResult detect_lpa(const WeightedGraph& g, const DetectConfig& config,
                        std::optional<Partition> initial) {
  require_nonempty(g);
  std::vector<int> init_labels;
  const std::vector<int>* init = nullptr;
  if (initial.has_value()) {
    if (initial->size() != g.vertex_count()) {
      throw SizeMismatchError("initial partition covers " + std::to_string(initial->size()) +
                              " vertices, graph has " + std::to_string(g.vertex_count()));
    }
    init_labels = initial->canonical_labels();
    init = &init_labels;
  }
  PottsEngine engine(g, config, PottsMode::lpa, 0.0);
  RunOutcome out =
      best_of_restarts(config, [&](std::mt19937_64 rng) { return engine.run(rng, init); });

  DetectResult result;
  result.partition = Partition(std::move(out.labels));
  result.objective = lpa_objective(g, result.partition);
  result.objective_trace = std::move(out.trace);
  result.iterations = out.iterations;
  result.community_count = result.partition.community_count();
  return result;
}

DetectResult detect_lpa_p(const WeightedGraph& g, const DetectConfig& config) {
  require_nonempty(g);
  if (g.has_negative_weight()) {
    throw NegativeWeightError("random-walk preferences require nonnegative weights");
  }
  LpaPEngine engine(g, config);
  RunOutcome out = best_of_restarts(config, [&](std::mt19937_64 rng) { return engine.run(rng); });

  DetectResult result;
  result.partition = Partition(std::move(out.labels));
  result.objective = out.objective;
  result.objective_trace = std::move(out.trace);
  result.iterations = out.iterations;
  result.community_count = result.partition.community_count();
  return result;
}

}  // namespace gsbm
