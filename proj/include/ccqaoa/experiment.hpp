#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccqaoa/analytic.hpp"
#include "ccqaoa/error.hpp"
#include "ccqaoa/graph.hpp"
#include "ccqaoa/ising.hpp"
#include "ccqaoa/optimize.hpp"
#include "ccqaoa/qsim.hpp"
#include "ccqaoa/rng.hpp"
#include "ccqaoa/warmstart.hpp"

namespace ccqaoa {

class IoError : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class ExperimentKind { mwvc, mvc_warmstart, local_minima };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
  case ExperimentKind::mwvc:
    return "mwvc";
  case ExperimentKind::mvc_warmstart:
    return "mvc-warmstart";
  case ExperimentKind::local_minima:
    return "local-minima";
  }
  return "?";
}

inline ExperimentKind parse_experiment(const std::string &s) {
  if (s == "mwvc")
    return ExperimentKind::mwvc;
  if (s == "mvc-warmstart")
    return ExperimentKind::mvc_warmstart;
  if (s == "local-minima")
    return ExperimentKind::local_minima;
  throw InvalidArgument("unknown experiment '" + s +
                        "' (expected mwvc|mvc-warmstart|local-minima)");
}

struct AngleBox {
  double gamma_lo = -std::numbers::pi, gamma_hi = std::numbers::pi;
  double beta_lo = -std::numbers::pi, beta_hi = std::numbers::pi;

  ParamPoint draw(std::size_t depth, Rng &rng) const {
    ParamPoint p = ParamPoint::zeros(depth);
    for (auto &g : p.gammas)
      g = rng.uniform(gamma_lo, gamma_hi);
    for (auto &b : p.betas)
      b = rng.uniform(beta_lo, beta_hi);
    return p;
  }

  friend bool operator==(const AngleBox &, const AngleBox &) = default;
};

/// (a, b) selection: fixed values, or b fixed and a = b * (sum of weights)
/// + margin (unit weights for unweighted problems).
struct CoefficientRule {
  enum class Kind { fixed, weighted } kind = Kind::fixed;
  double a = 2.0;
  double b = 1.0;
  double margin = 0.1;

  std::pair<double, double> resolve(const Graph &g) const {
    if (kind == Kind::fixed)
      return {a, b};
    double total = static_cast<double>(g.num_vertices());
    if (g.has_weights())
      total = std::accumulate(g.weights().begin(), g.weights().end(), 0.0);
    return {total * b + margin, b};
  }

  friend bool operator==(const CoefficientRule &, const CoefficientRule &) = default;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::mwvc;
  Problem problem = Problem::mwvc;
  std::vector<std::size_t> sizes{4, 6, 8, 10};
  double edge_prob = 0.5;
  std::vector<double> edge_probs; // local-minima sweep; empty means {edge_prob}
  std::size_t cases_per_size = 10;
  std::vector<std::size_t> depths{1, 2, 3};
  std::size_t n_inits = 20;
  AngleBox init_domain;
  CoefficientRule coeff_rule;
  double weight_lo = 0.0;
  double weight_hi = 3.0;
  LossMode loss_mode = LossMode::simulated;
  OptimizerSettings optimizer;
  MHConfig mh;
  DescentSettings descent{0.01, 200};
  double local_min_tolerance = 1e-3;
  std::uint64_t seed = 2023;

  std::size_t max_size() const {
    return experiment == ExperimentKind::mwvc ? 14 : 12;
  }

  std::vector<double> swept_edge_probs() const {
    return edge_probs.empty() ? std::vector<double>{edge_prob} : edge_probs;
  }

  void validate() const {
    detail::require(!sizes.empty(), "sizes must be nonempty");
    for (auto n : sizes) {
      detail::require(n >= 1, "sizes must be positive");
      if (n > max_size())
        throw SizeLimitError("experiment " + to_string(experiment) +
                             " supports sizes up to " +
                             std::to_string(max_size()) + ", got " +
                             std::to_string(n));
    }
    for (double p : swept_edge_probs())
      detail::require(p >= 0.0 && p <= 1.0, "edge probabilities must lie in [0, 1]");
    detail::require(cases_per_size >= 1, "cases_per_size must be positive");
    detail::require(n_inits >= 1, "n_inits must be positive");
    detail::require(!depths.empty(), "depths must be nonempty");
    for (auto p : depths) {
      detail::require(p >= 1, "depths must be positive");
      if (loss_mode == LossMode::analytic && p != 1)
        throw ScopeError("analytic loss mode supports depth 1 only");
    }
    detail::require(weight_lo <= weight_hi && weight_lo >= 0.0,
                    "weight range must satisfy 0 <= lo <= hi");
    detail::require(optimizer.iters >= 1 && optimizer.eta >= 0.0,
                    "optimizer settings invalid");
    detail::require(local_min_tolerance >= 0.0,
                    "local minimum tolerance must be nonnegative");
    if (experiment == ExperimentKind::mvc_warmstart && mh.t_max > 0)
      mh.validate(); // t_max == 0 is the disabled-chain ablation
  }

  friend bool operator==(const ExperimentConfig &a, const ExperimentConfig &b) {
    auto key = [](const ExperimentConfig &c) {
      return std::tie(c.experiment, c.problem, c.sizes, c.edge_prob,
                      c.edge_probs, c.cases_per_size, c.depths, c.n_inits,
                      c.init_domain, c.coeff_rule, c.weight_lo, c.weight_hi,
                      c.loss_mode, c.optimizer.kind, c.optimizer.eta,
                      c.optimizer.iters, c.optimizer.gradient_tolerance,
                      c.mh.t_max, c.mh.alpha, c.mh.eta, c.mh.xi,
                      c.mh.noise_mode, c.descent.eta, c.descent.iters,
                      c.local_min_tolerance, c.seed);
    };
    return key(a) == key(b);
  }
};

/// MWVC depth sweep: ER(0.5), weights on [0, 3], b = 0.5,
/// a = b * sum(weights) + 0.1, angles from [-pi, pi]^2p, BFGS.
inline ExperimentConfig default_mwvc_config() {
  ExperimentConfig c;
  c.experiment = ExperimentKind::mwvc;
  c.problem = Problem::mwvc;
  c.sizes = {4, 6, 8, 10};
  c.edge_prob = 0.5;
  c.cases_per_size = 10;
  c.depths = {1, 2, 3};
  c.n_inits = 20;
  c.coeff_rule = {CoefficientRule::Kind::weighted, 0.0, 0.5, 0.1};
  c.loss_mode = LossMode::simulated;
  c.optimizer = {OptimizerKind::bfgs, 0.01, 200, 1e-8};
  return c;
}

/// MVC warm-start comparison: ER(0.6), a = 2, b = 1, depth 1 analytic loss,
/// angles from [0, 2pi] x [0, pi], MH (600, 0.5, 0.4, 0.1).
inline ExperimentConfig default_warmstart_config() {
  ExperimentConfig c;
  c.experiment = ExperimentKind::mvc_warmstart;
  c.problem = Problem::mvc;
  c.sizes = {10};
  c.edge_prob = 0.6;
  c.cases_per_size = 30;
  c.depths = {1};
  c.n_inits = 10;
  c.init_domain = {0.0, 2 * std::numbers::pi, 0.0, std::numbers::pi};
  c.coeff_rule = {CoefficientRule::Kind::fixed, 2.0, 1.0, 0.0};
  c.loss_mode = LossMode::analytic;
  c.optimizer = {OptimizerKind::gradient_descent, 0.01, 200, 1e-8};
  c.mh = MHConfig{600, 0.5, 0.1, 0.4, 0, NoiseMode::per_component};
  c.descent = {0.01, 200};
  return c;
}

/// Cold-start local-minimum census: MVC on ER graphs over a sweep of edge
/// probabilities, 20 cases x 20 inits, depth 1 analytic loss. Plain
/// gradient descent run long enough to settle in the starting basin; a line
/// search would hop between basins.
inline ExperimentConfig default_local_minima_config() {
  ExperimentConfig c;
  c.experiment = ExperimentKind::local_minima;
  c.problem = Problem::mvc;
  c.sizes = {10};
  c.edge_prob = 0.6;
  c.edge_probs = {0.2, 0.4, 0.6, 0.8};
  c.cases_per_size = 20;
  c.depths = {1};
  c.n_inits = 20;
  c.init_domain = {0.0, 2 * std::numbers::pi, 0.0, std::numbers::pi};
  c.coeff_rule = {CoefficientRule::Kind::fixed, 2.0, 1.0, 0.0};
  c.loss_mode = LossMode::analytic;
  c.optimizer = {OptimizerKind::gradient_descent, 0.01, 5000, 1e-8};
  return c;
}

inline ExperimentConfig default_config(ExperimentKind k) {
  switch (k) {
  case ExperimentKind::mwvc:
    return default_mwvc_config();
  case ExperimentKind::mvc_warmstart:
    return default_warmstart_config();
  case ExperimentKind::local_minima:
    return default_local_minima_config();
  }
  return default_mwvc_config();
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/// One optimization from one initial point.
struct RunRecord {
  std::size_t depth = 1;
  std::size_t init = 0;
  ParamPoint initial;
  ParamPoint final_params;
  double final_loss = 0.0;
  std::optional<double> solution_probability;
  std::optional<bool> local_minimum;
  // Warm-started run from the same initial point (mvc-warmstart only).
  std::optional<double> warm_final_loss;
  std::optional<double> warm_mh_best_loss;
  std::vector<double> trace;      // cold / standard run losses
  std::vector<double> warm_trace; // closing-descent losses after MH

  friend bool operator==(const RunRecord &, const RunRecord &) = default;
};

struct CaseRecord {
  std::size_t case_id = 0;
  std::size_t size = 0;
  double edge_prob = 0.0;
  std::uint64_t seed = 0;
  std::size_t num_edges = 0;
  double a = 0.0;
  double b = 0.0;
  double exact_optimum = 0.0;
  std::vector<std::string> ground_states;
  std::vector<RunRecord> runs;

  friend bool operator==(const CaseRecord &, const CaseRecord &) = default;
};

struct AggregateRow {
  std::size_t size = 0;
  double edge_prob = 0.0;
  std::size_t depth = 1;
  std::size_t cases = 0;
  std::map<std::string, double> metrics;
  std::map<std::string, std::vector<double>> series;

  friend bool operator==(const AggregateRow &, const AggregateRow &) = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CaseRecord> cases;
  std::vector<AggregateRow> aggregates;

  friend bool operator==(const ExperimentReport &, const ExperimentReport &) = default;
};

namespace detail {

// Population mean and variance.
inline std::pair<double, double> mean_var(const std::vector<double> &x) {
  if (x.empty())
    return {0.0, 0.0};
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x)
    ss += (v - mean) * (v - mean);
  return {mean, ss / n};
}

// Pointwise mean and variance of equal-length traces.
inline std::pair<std::vector<double>, std::vector<double>>
trace_mean_var(const std::vector<const std::vector<double> *> &traces) {
  if (traces.empty())
    return {};
  const std::size_t len = traces.front()->size();
  std::vector<double> mean(len), var(len);
  for (std::size_t t = 0; t < len; ++t) {
    std::vector<double> col;
    for (const auto *tr : traces)
      col.push_back(t < tr->size() ? (*tr)[t] : tr->back());
    std::tie(mean[t], var[t]) = mean_var(col);
  }
  return {mean, var};
}

inline const RunRecord *best_run(const CaseRecord &c, std::size_t depth) {
  const RunRecord *best = nullptr;
  for (const auto &r : c.runs)
    if (r.depth == depth && (!best || r.final_loss < best->final_loss))
      best = &r;
  return best;
}

} // namespace detail

/// Aggregates recomputed from the per-case records, one row per
/// (size, edge probability, depth) in first-appearance order.
inline std::vector<AggregateRow> aggregate(const ExperimentConfig &cfg,
                                           const std::vector<CaseRecord> &cases) {
  using Key = std::tuple<std::size_t, double, std::size_t>;
  std::vector<Key> order;
  std::map<Key, std::vector<const CaseRecord *>> groups;
  for (const auto &c : cases)
    for (auto p : cfg.depths) {
      Key k{c.size, c.edge_prob, p};
      if (!groups.count(k))
        order.push_back(k);
      groups[k].push_back(&c);
    }

  std::vector<AggregateRow> rows;
  for (const auto &k : order) {
    const auto &members = groups[k];
    AggregateRow row;
    std::tie(row.size, row.edge_prob, row.depth) = k;
    row.cases = members.size();
    const std::size_t depth = row.depth;

    std::vector<double> optimum;
    for (const auto *c : members)
      optimum.push_back(c->exact_optimum);
    row.metrics["mean_exact_optimum"] = detail::mean_var(optimum).first;

    switch (cfg.experiment) {
    case ExperimentKind::mwvc: {
      std::vector<double> best, prob;
      for (const auto *c : members) {
        const auto *r = detail::best_run(*c, depth);
        best.push_back(r->final_loss);
        prob.push_back(r->solution_probability.value_or(0.0));
      }
      std::tie(row.metrics["mean_best_loss"], row.metrics["var_best_loss"]) =
          detail::mean_var(best);
      std::tie(row.metrics["mean_probability"], row.metrics["var_probability"]) =
          detail::mean_var(prob);
      break;
    }
    case ExperimentKind::mvc_warmstart: {
      std::vector<double> cold_mean, cold_var, warm_mean, warm_var;
      std::vector<std::vector<double>> cm_tr, cv_tr, wm_tr, wv_tr;
      double var_wins = 0, mean_wins = 0;
      for (const auto *c : members) {
        std::vector<double> cold, warm;
        std::vector<const std::vector<double> *> ct, wt;
        for (const auto &r : c->runs) {
          if (r.depth != depth)
            continue;
          cold.push_back(r.final_loss);
          warm.push_back(r.warm_final_loss.value_or(r.final_loss));
          ct.push_back(&r.trace);
          wt.push_back(&r.warm_trace);
        }
        const auto [cm, cv] = detail::mean_var(cold);
        const auto [wm, wv] = detail::mean_var(warm);
        cold_mean.push_back(cm);
        cold_var.push_back(cv);
        warm_mean.push_back(wm);
        warm_var.push_back(wv);
        var_wins += wv <= cv ? 1 : 0;
        mean_wins += wm <= cm + 1e-9 ? 1 : 0;
        auto [a, b] = detail::trace_mean_var(ct);
        auto [x, y] = detail::trace_mean_var(wt);
        cm_tr.push_back(std::move(a));
        cv_tr.push_back(std::move(b));
        wm_tr.push_back(std::move(x));
        wv_tr.push_back(std::move(y));
      }
      const double n = static_cast<double>(members.size());
      row.metrics["mean_cold_final_loss"] = detail::mean_var(cold_mean).first;
      row.metrics["mean_warm_final_loss"] = detail::mean_var(warm_mean).first;
      row.metrics["mean_cold_final_variance"] = detail::mean_var(cold_var).first;
      row.metrics["mean_warm_final_variance"] = detail::mean_var(warm_var).first;
      row.metrics["fraction_warm_variance_le_cold"] = var_wins / n;
      row.metrics["fraction_warm_mean_le_cold"] = mean_wins / n;
      auto average = [](const std::vector<std::vector<double>> &trs) {
        std::vector<const std::vector<double> *> ptrs;
        for (const auto &t : trs)
          ptrs.push_back(&t);
        return detail::trace_mean_var(ptrs).first;
      };
      row.series["cold_mean_trace"] = average(cm_tr);
      row.series["cold_variance_trace"] = average(cv_tr);
      row.series["warm_mean_trace"] = average(wm_tr);
      row.series["warm_variance_trace"] = average(wv_tr);
      break;
    }
    case ExperimentKind::local_minima: {
      std::vector<double> fractions;
      for (const auto *c : members) {
        double hits = 0, total = 0;
        for (const auto &r : c->runs) {
          if (r.depth != depth)
            continue;
          total += 1;
          hits += r.local_minimum.value_or(false) ? 1 : 0;
        }
        fractions.push_back(total > 0 ? hits / total : 0.0);
      }
      std::tie(row.metrics["mean_local_min_fraction"],
               row.metrics["var_local_min_fraction"]) = detail::mean_var(fractions);
      break;
    }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

namespace detail {

struct Instance {
  Graph graph;
  IsingModel model;
  double a = 0.0, b = 0.0;
};

// Graph, weights and Hamiltonian of one case. Aborts when the encoding fails
// the exhaustive ground-state check.
inline Instance make_instance(const ExperimentConfig &cfg, std::size_t n,
                              double edge_prob, std::uint64_t case_seed) {
  Instance inst;
  inst.graph = gen_erdos_renyi(n, edge_prob, derive_seed(case_seed, 1));
  if (cfg.problem == Problem::mwvc)
    inst.graph = assign_random_weights(inst.graph, cfg.weight_lo, cfg.weight_hi,
                                       derive_seed(case_seed, 2));
  std::tie(inst.a, inst.b) = cfg.coeff_rule.resolve(inst.graph);
  inst.model = build_problem(cfg.problem, inst.graph, inst.a, inst.b);
  const auto pair = problem_pair(cfg.problem, inst.graph);
  const auto check = verify_theorem1(pair.constraint, pair.objective, inst.a, inst.b);
  if (!check.holds)
    throw ConsistencyError("case with seed " + std::to_string(case_seed) +
                           " fails the encoding check: " +
                           nlohmann::json(check).dump());
  return inst;
}

inline CaseRecord case_header(std::size_t id, std::size_t n, double p,
                              std::uint64_t seed, const Instance &inst) {
  CaseRecord c;
  c.case_id = id;
  c.size = n;
  c.edge_prob = p;
  c.seed = seed;
  c.num_edges = inst.graph.num_edges();
  c.a = inst.a;
  c.b = inst.b;
  const auto gs = brute_force(inst.model);
  c.exact_optimum = gs.min_energy;
  for (const auto &z : gs.configs())
    c.ground_states.push_back(z.to_bitstring());
  return c;
}

inline std::uint64_t init_seed(std::uint64_t case_seed, std::size_t depth,
                               std::size_t init) {
  return derive_seed(case_seed, 100 + depth, init);
}

template <typename PerCase>
ExperimentReport run_cases(const ExperimentConfig &cfg, PerCase per_case) {
  cfg.validate();
  ExperimentReport report;
  report.config = cfg;
  std::size_t id = 0;
  for (double p : cfg.swept_edge_probs())
    for (auto n : cfg.sizes)
      for (std::size_t c = 0; c < cfg.cases_per_size; ++c, ++id) {
        const auto seed = derive_seed(cfg.seed, id);
        const auto inst = make_instance(cfg, n, p, seed);
        auto rec = case_header(id, n, p, seed, inst);
        per_case(inst, rec);
        report.cases.push_back(std::move(rec));
      }
  report.aggregates = aggregate(cfg, report.cases);
  return report;
}

} // namespace detail

/// Standard QAOA depth sweep on exhaustively solved instances: best loss and
/// ground-set probability per case and depth.
inline ExperimentReport run_mwvc_experiment(const ExperimentConfig &cfg) {
  return detail::run_cases(cfg, [&](const detail::Instance &inst, CaseRecord &rec) {
    std::vector<std::uint64_t> targets;
    for (const auto &bits : rec.ground_states)
      targets.push_back(SpinConfig::from_bitstring(bits).to_index());
    const DiagonalHamiltonian diag(inst.model);
    for (auto depth : cfg.depths) {
      const LossProvider provider(inst.model, depth, cfg.loss_mode);
      const auto f = provider.evaluator();
      for (std::size_t k = 0; k < cfg.n_inits; ++k) {
        Rng rng(detail::init_seed(rec.seed, depth, k));
        RunRecord run;
        run.depth = depth;
        run.init = k;
        run.initial = cfg.init_domain.draw(depth, rng);
        auto res = run_optimizer(f, run.initial, cfg.optimizer);
        run.final_params = res.params;
        run.final_loss = res.loss;
        run.trace = std::move(res.trace);
        run.solution_probability =
            solution_probability(ansatz(diag, run.final_params), targets);
        rec.runs.push_back(std::move(run));
      }
    }
  });
}

/// Cold-start descent versus MH warm start from the same initial angles.
inline ExperimentReport run_mvc_warmstart_experiment(const ExperimentConfig &cfg) {
  return detail::run_cases(cfg, [&](const detail::Instance &inst, CaseRecord &rec) {
    for (auto depth : cfg.depths) {
      const LossProvider provider(inst.model, depth, cfg.loss_mode);
      const auto f = provider.evaluator();
      for (std::size_t k = 0; k < cfg.n_inits; ++k) {
        const auto seed = detail::init_seed(rec.seed, depth, k);
        Rng rng(seed);
        RunRecord run;
        run.depth = depth;
        run.init = k;
        run.initial = cfg.init_domain.draw(depth, rng);
        auto cold = gradient_descent(f, run.initial, cfg.descent.eta,
                                     cfg.descent.iters);
        MHConfig mh = cfg.mh;
        mh.seed = derive_seed(seed, 7);
        auto warm = warm_started_qaoa(f, run.initial, mh, cfg.descent);
        run.final_params = cold.params;
        run.final_loss = cold.loss;
        run.trace = std::move(cold.trace);
        run.warm_final_loss = warm.loss;
        run.warm_mh_best_loss = warm.mh_best_loss;
        run.warm_trace = std::move(warm.descent_trace);
        rec.runs.push_back(std::move(run));
      }
    }
  });
}

/// Fraction of cold-start runs that stop more than the tolerance above the
/// best of all runs on the same case.
inline ExperimentReport estimate_local_minima_probability(const ExperimentConfig &cfg) {
  return detail::run_cases(cfg, [&](const detail::Instance &inst, CaseRecord &rec) {
    for (auto depth : cfg.depths) {
      const LossProvider provider(inst.model, depth, cfg.loss_mode);
      const auto f = provider.evaluator();
      const auto first = rec.runs.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < cfg.n_inits; ++k) {
        Rng rng(detail::init_seed(rec.seed, depth, k));
        RunRecord run;
        run.depth = depth;
        run.init = k;
        run.initial = cfg.init_domain.draw(depth, rng);
        auto res = run_optimizer(f, run.initial, cfg.optimizer);
        run.final_params = res.params;
        run.final_loss = res.loss;
        run.trace = std::move(res.trace);
        best = std::min(best, run.final_loss);
        rec.runs.push_back(std::move(run));
      }
      for (auto i = first; i < rec.runs.size(); ++i)
        rec.runs[i].local_minimum =
            rec.runs[i].final_loss > best + cfg.local_min_tolerance;
    }
  });
}

inline ExperimentReport run_experiment(const ExperimentConfig &cfg) {
  switch (cfg.experiment) {
  case ExperimentKind::mwvc:
    return run_mwvc_experiment(cfg);
  case ExperimentKind::mvc_warmstart:
    return run_mvc_warmstart_experiment(cfg);
  case ExperimentKind::local_minima:
    return estimate_local_minima_probability(cfg);
  }
  throw InvalidArgument("unknown experiment");
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json &j, const ParamPoint &p) {
  j = nlohmann::json{{"gammas", p.gammas}, {"betas", p.betas}};
}

inline void from_json(const nlohmann::json &j, ParamPoint &p) {
  p = ParamPoint(j.at("gammas").get<std::vector<double>>(),
                 j.at("betas").get<std::vector<double>>());
}

namespace detail {

template <typename T>
void put_optional(nlohmann::json &j, const char *key, const std::optional<T> &v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> get_optional(const nlohmann::json &j, const char *key) {
  if (!j.contains(key) || j.at(key).is_null())
    return std::nullopt;
  return j.at(key).get<T>();
}

} // namespace detail

inline void to_json(nlohmann::json &j, const ExperimentConfig &c) {
  j = nlohmann::json{
      {"experiment", to_string(c.experiment)},
      {"problem", to_string(c.problem)},
      {"sizes", c.sizes},
      {"edge_prob", c.edge_prob},
      {"edge_probs", c.edge_probs},
      {"cases_per_size", c.cases_per_size},
      {"depths", c.depths},
      {"n_inits", c.n_inits},
      {"init_domain",
       {{"gamma", {c.init_domain.gamma_lo, c.init_domain.gamma_hi}},
        {"beta", {c.init_domain.beta_lo, c.init_domain.beta_hi}}}},
      {"coeff_rule",
       {{"kind", c.coeff_rule.kind == CoefficientRule::Kind::fixed ? "fixed"
                                                                    : "weighted"},
        {"a", c.coeff_rule.a},
        {"b", c.coeff_rule.b},
        {"margin", c.coeff_rule.margin}}},
      {"weight_range", {c.weight_lo, c.weight_hi}},
      {"loss_mode", c.loss_mode == LossMode::analytic ? "analytic" : "simulated"},
      {"optimizer",
       {{"method", to_string(c.optimizer.kind)},
        {"eta", c.optimizer.eta},
        {"iters", c.optimizer.iters},
        {"gradient_tolerance", c.optimizer.gradient_tolerance}}},
      {"mh",
       {{"t_max", c.mh.t_max},
        {"alpha", c.mh.alpha},
        {"eta", c.mh.eta},
        {"xi", c.mh.xi},
        {"noise_mode", to_string(c.mh.noise_mode)}}},
      {"descent", {{"eta", c.descent.eta}, {"iters", c.descent.iters}}},
      {"local_min_tolerance", c.local_min_tolerance},
      {"seed", c.seed}};
}

/// Reads a config; absent fields take the defaults of the named experiment
/// (or of `fallback` when "experiment" is absent).
inline ExperimentConfig config_from_json(const nlohmann::json &j,
                                         ExperimentKind fallback) {
  try {
    const auto kind = j.contains("experiment")
                          ? parse_experiment(j.at("experiment").get<std::string>())
                          : fallback;
    ExperimentConfig c = default_config(kind);
    auto pair_of = [](const nlohmann::json &v, double &lo, double &hi) {
      detail::require(v.is_array() && v.size() == 2, "expected a [lo, hi] pair");
      lo = v[0].get<double>();
      hi = v[1].get<double>();
    };
    if (j.contains("problem"))
      c.problem = parse_problem(j["problem"].get<std::string>());
    c.sizes = j.value("sizes", c.sizes);
    c.edge_prob = j.value("edge_prob", c.edge_prob);
    c.edge_probs = j.value("edge_probs", c.edge_probs);
    c.cases_per_size = j.value("cases_per_size", c.cases_per_size);
    c.depths = j.value("depths", c.depths);
    c.n_inits = j.value("n_inits", c.n_inits);
    if (j.contains("init_domain")) {
      const auto &d = j["init_domain"];
      if (d.contains("gamma"))
        pair_of(d["gamma"], c.init_domain.gamma_lo, c.init_domain.gamma_hi);
      if (d.contains("beta"))
        pair_of(d["beta"], c.init_domain.beta_lo, c.init_domain.beta_hi);
    }
    if (j.contains("coeff_rule")) {
      const auto &r = j["coeff_rule"];
      if (r.contains("kind")) {
        const auto k = r["kind"].get<std::string>();
        detail::require(k == "fixed" || k == "weighted",
                        "coeff_rule.kind must be fixed|weighted");
        c.coeff_rule.kind = k == "fixed" ? CoefficientRule::Kind::fixed
                                         : CoefficientRule::Kind::weighted;
      }
      c.coeff_rule.a = r.value("a", c.coeff_rule.a);
      c.coeff_rule.b = r.value("b", c.coeff_rule.b);
      c.coeff_rule.margin = r.value("margin", c.coeff_rule.margin);
    }
    if (j.contains("weight_range"))
      pair_of(j["weight_range"], c.weight_lo, c.weight_hi);
    if (j.contains("loss_mode"))
      c.loss_mode = parse_loss_mode(j["loss_mode"].get<std::string>());
    if (j.contains("optimizer")) {
      const auto &o = j["optimizer"];
      if (o.contains("method"))
        c.optimizer.kind = parse_optimizer(o["method"].get<std::string>());
      c.optimizer.eta = o.value("eta", c.optimizer.eta);
      c.optimizer.iters = o.value("iters", c.optimizer.iters);
      c.optimizer.gradient_tolerance =
          o.value("gradient_tolerance", c.optimizer.gradient_tolerance);
    }
    if (j.contains("mh")) {
      const auto &m = j["mh"];
      c.mh.t_max = m.value("t_max", c.mh.t_max);
      c.mh.alpha = m.value("alpha", c.mh.alpha);
      c.mh.eta = m.value("eta", c.mh.eta);
      c.mh.xi = m.value("xi", c.mh.xi);
      if (m.contains("noise_mode"))
        c.mh.noise_mode = parse_noise_mode(m["noise_mode"].get<std::string>());
    }
    if (j.contains("descent")) {
      c.descent.eta = j["descent"].value("eta", c.descent.eta);
      c.descent.iters = j["descent"].value("iters", c.descent.iters);
    }
    c.local_min_tolerance = j.value("local_min_tolerance", c.local_min_tolerance);
    c.seed = j.value("seed", c.seed);
    return c;
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(std::string("malformed experiment config: ") + e.what());
  }
}

inline void to_json(nlohmann::json &j, const RunRecord &r) {
  j = nlohmann::json{{"depth", r.depth},
                     {"init", r.init},
                     {"initial", r.initial},
                     {"final_params", r.final_params},
                     {"final_loss", r.final_loss},
                     {"trace", r.trace},
                     {"warm_trace", r.warm_trace}};
  detail::put_optional(j, "solution_probability", r.solution_probability);
  detail::put_optional(j, "local_minimum", r.local_minimum);
  detail::put_optional(j, "warm_final_loss", r.warm_final_loss);
  detail::put_optional(j, "warm_mh_best_loss", r.warm_mh_best_loss);
}

inline void from_json(const nlohmann::json &j, RunRecord &r) {
  r.depth = j.at("depth").get<std::size_t>();
  r.init = j.at("init").get<std::size_t>();
  r.initial = j.at("initial").get<ParamPoint>();
  r.final_params = j.at("final_params").get<ParamPoint>();
  r.final_loss = j.at("final_loss").get<double>();
  r.trace = j.at("trace").get<std::vector<double>>();
  r.warm_trace = j.at("warm_trace").get<std::vector<double>>();
  r.solution_probability = detail::get_optional<double>(j, "solution_probability");
  r.local_minimum = detail::get_optional<bool>(j, "local_minimum");
  r.warm_final_loss = detail::get_optional<double>(j, "warm_final_loss");
  r.warm_mh_best_loss = detail::get_optional<double>(j, "warm_mh_best_loss");
}

inline void to_json(nlohmann::json &j, const CaseRecord &c) {
  j = nlohmann::json{{"case_id", c.case_id},       {"size", c.size},
                     {"edge_prob", c.edge_prob},   {"seed", c.seed},
                     {"num_edges", c.num_edges},   {"a", c.a},
                     {"b", c.b},                   {"exact_optimum", c.exact_optimum},
                     {"ground_states", c.ground_states}, {"runs", c.runs}};
}

inline void from_json(const nlohmann::json &j, CaseRecord &c) {
  c.case_id = j.at("case_id").get<std::size_t>();
  c.size = j.at("size").get<std::size_t>();
  c.edge_prob = j.at("edge_prob").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.num_edges = j.at("num_edges").get<std::size_t>();
  c.a = j.at("a").get<double>();
  c.b = j.at("b").get<double>();
  c.exact_optimum = j.at("exact_optimum").get<double>();
  c.ground_states = j.at("ground_states").get<std::vector<std::string>>();
  c.runs = j.at("runs").get<std::vector<RunRecord>>();
}

inline void to_json(nlohmann::json &j, const AggregateRow &r) {
  j = nlohmann::json{{"size", r.size},       {"edge_prob", r.edge_prob},
                     {"depth", r.depth},     {"cases", r.cases},
                     {"metrics", r.metrics}, {"series", r.series}};
}

inline void from_json(const nlohmann::json &j, AggregateRow &r) {
  r.size = j.at("size").get<std::size_t>();
  r.edge_prob = j.at("edge_prob").get<double>();
  r.depth = j.at("depth").get<std::size_t>();
  r.cases = j.at("cases").get<std::size_t>();
  r.metrics = j.at("metrics").get<std::map<std::string, double>>();
  r.series = j.at("series").get<std::map<std::string, std::vector<double>>>();
}

inline void to_json(nlohmann::json &j, const ExperimentReport &r) {
  j = nlohmann::json{{"config", r.config},
                     {"cases", r.cases},
                     {"aggregates", r.aggregates}};
}

inline void from_json(const nlohmann::json &j, ExperimentReport &r) {
  try {
    r.config = config_from_json(j.at("config"), ExperimentKind::mwvc);
    r.cases = j.at("cases").get<std::vector<CaseRecord>>();
    r.aggregates = j.at("aggregates").get<std::vector<AggregateRow>>();
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(std::string("malformed report JSON: ") + e.what());
  }
}

inline constexpr const char *kReportCsvHeader =
    "case_id,size,edge_prob,depth,init,final_loss,solution_probability,"
    "warm_final_loss,local_minimum";

namespace detail {

inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace detail

/// One row per (case, depth, init); empty cells for fields an experiment does
/// not produce.
inline std::string report_csv(const ExperimentReport &r) {
  std::ostringstream os;
  os << kReportCsvHeader << '\n';
  for (const auto &c : r.cases)
    for (const auto &run : c.runs) {
      os << c.case_id << ',' << c.size << ',' << detail::fmt_double(c.edge_prob)
         << ',' << run.depth << ',' << run.init << ','
         << detail::fmt_double(run.final_loss) << ',';
      if (run.solution_probability)
        os << detail::fmt_double(*run.solution_probability);
      os << ',';
      if (run.warm_final_loss)
        os << detail::fmt_double(*run.warm_final_loss);
      os << ',';
      if (run.local_minimum)
        os << (*run.local_minimum ? 1 : 0);
      os << '\n';
    }
  return os.str();
}

inline void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out)
    throw IoError("write to '" + path + "' failed");
}

inline std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

enum class ReportFormat { csv, json };

inline void emit_report(const ExperimentReport &r, ReportFormat format,
                        const std::string &path) {
  if (format == ReportFormat::csv)
    write_text(path, report_csv(r));
  else
    write_text(path, nlohmann::json(r).dump(1) + "\n");
}

inline ExperimentReport read_report_json(const std::string &path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error &e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
  return j.get<ExperimentReport>();
}

} // namespace ccqaoa
