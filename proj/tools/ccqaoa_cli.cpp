// Command-line front end: graph generation, Hamiltonian compilation, exact
// solving, QAOA evaluation/optimization and the experiment protocols.

#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ccqaoa/ccqaoa.hpp"

using namespace ccqaoa;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSize = 3;
constexpr int kExitConsistency = 4;

json read_json(const std::string &path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error &e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

template <typename T> T read_as(const std::string &path) {
  try {
    return read_json(path).get<T>();
  } catch (const json::exception &e) {
    throw InvalidArgument("'" + path + "': " + e.what());
  }
}

// Writes to `path`, or stdout when empty or "-".
void output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text(path, text);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::pair<double, double> parse_range(const std::string &s) {
  const auto comma = s.find(',');
  detail::require(comma != std::string::npos, "range must be 'lo,hi', got '" + s + "'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception &) {
    throw InvalidArgument("range must be 'lo,hi', got '" + s + "'");
  }
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string &s) {
  const auto x = s.find_first_of("xX");
  detail::require(x != std::string::npos, "grid must be 'GxH', got '" + s + "'");
  try {
    const long g = std::stol(s.substr(0, x));
    const long h = std::stol(s.substr(x + 1));
    detail::require(g >= 1 && h >= 1, "grid dimensions must be positive");
    return {static_cast<std::size_t>(g), static_cast<std::size_t>(h)};
  } catch (const InvalidArgument &) {
    throw;
  } catch (const std::exception &) {
    throw InvalidArgument("grid must be 'GxH', got '" + s + "'");
  }
}

double linspace_at(double lo, double hi, std::size_t i, std::size_t count) {
  return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
}

json params_json(const ParamPoint &p) { return {{"gammas", p.gammas}, {"betas", p.betas}}; }

// ---------------------------------------------------------------------------

struct GenGraphArgs {
  std::size_t n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string weights;
  std::string out;
};

void gen_graph(const GenGraphArgs &a) {
  Graph g = gen_erdos_renyi(a.n, a.p, a.seed);
  if (!a.weights.empty()) {
    const auto [lo, hi] = parse_range(a.weights);
    g = assign_random_weights(g, lo, hi, derive_seed(a.seed, 1));
  }
  output(a.out, json(g).dump() + "\n");
}

struct BuildArgs {
  std::string graph;
  std::string problem = "mvc";
  std::optional<double> a, b;
  bool warn = false;
  std::string out;
};

// Default coefficients: a = 2, b = 1 for MVC/MIS; b = 0.5,
// a = b * sum(weights) + 0.1 for MWVC.
std::pair<double, double> coefficients(Problem p, const Graph &g,
                                       std::optional<double> a,
                                       std::optional<double> b) {
  if (p == Problem::mwvc) {
    CoefficientRule rule{CoefficientRule::Kind::weighted, 0.0, b.value_or(0.5), 0.1};
    const auto def = rule.resolve(g);
    return {a.value_or(def.first), def.second};
  }
  return {a.value_or(2.0), b.value_or(1.0)};
}

void build_ising(const BuildArgs &args) {
  const auto g = read_as<Graph>(args.graph);
  const auto problem = parse_problem(args.problem);
  const auto [a, b] = coefficients(problem, g, args.a, args.b);
  const auto m = build_problem(problem, g, a, b,
                               args.warn ? CoefficientCheck::warn
                                         : CoefficientCheck::reject);
  output(args.out, json(m).dump() + "\n");
}

struct BruteArgs {
  std::string model;
  std::string problem;
  std::string out;
};

void brute(const BruteArgs &args) {
  const auto m = read_as<IsingModel>(args.model);
  const auto gs = brute_force(m);
  json j{{"n", gs.n}, {"min_energy", gs.min_energy}, {"ground_states", json::array()}};
  for (const auto &z : gs.configs()) {
    json entry{{"bits", z.to_bitstring()}, {"index", z.to_index()}};
    if (!args.problem.empty())
      entry["vertex_set"] = decode_vertex_set(parse_problem(args.problem), z);
    j["ground_states"].push_back(entry);
  }
  output(args.out, j.dump(1) + "\n");
}

struct VerifyArgs {
  std::string graph;
  std::string problem = "mvc";
  std::optional<double> a, b;
  bool spectrum = false;
  bool strict = false;
  std::string out;
};

int verify(const VerifyArgs &args) {
  const auto g = read_as<Graph>(args.graph);
  const auto problem = parse_problem(args.problem);
  const auto [a, b] = coefficients(problem, g, args.a, args.b);
  const auto pair = problem_pair(problem, g);
  const auto check = verify_theorem1(pair.constraint, pair.objective, a, b);
  json j = check;
  j["a"] = a;
  j["b"] = b;
  if (args.spectrum)
    j["spectrum"] = spectrum_analysis(pair.constraint, pair.objective);
  output(args.out, j.dump(1) + "\n");
  return (!check.holds && args.strict) ? kExitConsistency : 0;
}

struct F1Args {
  std::string model;
  std::optional<double> gamma, beta;
  std::string grid;
  std::string gamma_range = "0,6.283185307179586";
  std::string beta_range = "0,3.141592653589793";
  bool gradient = false;
  std::string out;
};

void f1_eval(const F1Args &args) {
  const AnalyticContext ctx(read_as<IsingModel>(args.model));
  if (args.grid.empty()) {
    detail::require(args.gamma && args.beta,
                    "f1-eval needs --gamma and --beta, or --grid");
    json j{{"gamma", *args.gamma}, {"beta", *args.beta},
           {"f1", f1(ctx, *args.gamma, *args.beta)}};
    if (args.gradient) {
      const auto g = grad_f1(ctx, *args.gamma, *args.beta);
      j["d_gamma"] = g.d_gamma;
      j["d_beta"] = g.d_beta;
    }
    output(args.out, j.dump() + "\n");
    return;
  }
  const auto [gn, bn] = parse_grid(args.grid);
  const auto [glo, ghi] = parse_range(args.gamma_range);
  const auto [blo, bhi] = parse_range(args.beta_range);
  std::ostringstream os;
  os << "gamma,beta,f1\n";
  for (std::size_t i = 0; i < gn; ++i) {
    const double g = linspace_at(glo, ghi, i, gn);
    for (std::size_t k = 0; k < bn; ++k) {
      const double b = linspace_at(blo, bhi, k, bn);
      os << fmt(g) << ',' << fmt(b) << ',' << fmt(f1(ctx, g, b)) << '\n';
    }
  }
  output(args.out, os.str());
}

struct QaoaArgs {
  std::string model;
  std::size_t depth = 1;
  std::string loss_mode = "simulated";
  std::string optimizer = "bfgs";
  double eta = 0.01;
  std::size_t iters = 200;
  std::size_t n_inits = 1;
  std::string gamma_range = "-3.141592653589793,3.141592653589793";
  std::string beta_range = "-3.141592653589793,3.141592653589793";
  std::uint64_t seed = 0;
  std::size_t shots = 0;
  std::string out;
};

void qaoa_run(const QaoaArgs &args) {
  const auto m = read_as<IsingModel>(args.model);
  const LossProvider provider(m, args.depth, parse_loss_mode(args.loss_mode));
  const OptimizerSettings opt{parse_optimizer(args.optimizer), args.eta, args.iters, 1e-8};
  detail::require(args.n_inits >= 1, "--n-inits must be positive");
  AngleBox box;
  std::tie(box.gamma_lo, box.gamma_hi) = parse_range(args.gamma_range);
  std::tie(box.beta_lo, box.beta_hi) = parse_range(args.beta_range);

  std::optional<DescentResult> best;
  json runs = json::array();
  for (std::size_t k = 0; k < args.n_inits; ++k) {
    Rng rng(derive_seed(args.seed, k));
    const auto x0 = box.draw(args.depth, rng);
    auto res = run_optimizer(provider.evaluator(), x0, opt);
    runs.push_back({{"init", k}, {"initial", params_json(x0)},
                    {"final_loss", res.loss}, {"iterations", res.trace.size() - 1}});
    if (!best || res.loss < best->loss)
      best = std::move(res);
  }

  const DiagonalHamiltonian diag(m);
  const auto state = ansatz(diag, best->params);
  const auto gs = brute_force(m);
  json j{{"depth", args.depth},
         {"loss", best->loss},
         {"params", params_json(best->params)},
         {"exact_minimum", gs.min_energy},
         {"ground_state_probability",
          solution_probability(state, std::span<const std::uint64_t>(gs.indices))},
         {"runs", runs}};
  if (args.shots > 0) {
    std::map<std::string, std::size_t> counts;
    for (const auto &z : sample(state, args.shots, derive_seed(args.seed, 99)))
      ++counts[z.to_bitstring()];
    j["samples"] = counts;
  }
  output(args.out, j.dump(1) + "\n");
}

struct WarmArgs {
  std::string model;
  std::size_t depth = 1;
  std::string loss_mode = "analytic";
  std::size_t tmax = 600;
  double alpha = 0.5;
  double xi = 0.4;
  double eta = 0.1;
  std::string noise = "per-component";
  double descent_eta = 0.01;
  std::size_t descent_iters = 200;
  std::optional<double> gamma0, beta0;
  std::uint64_t seed = 0;
  std::string trace;
  std::string out;
};

void warmstart_run(const WarmArgs &args) {
  const auto m = read_as<IsingModel>(args.model);
  ParamPoint theta0;
  if (args.gamma0 || args.beta0) {
    detail::require(args.gamma0 && args.beta0 && args.depth == 1,
                    "--gamma0/--beta0 must be given together and need depth 1");
    theta0 = ParamPoint({*args.gamma0}, {*args.beta0});
  } else {
    Rng rng(derive_seed(args.seed, 0));
    theta0 = AngleBox{0.0, 2 * std::numbers::pi, 0.0, std::numbers::pi}.draw(args.depth, rng);
  }
  MHConfig cfg{args.tmax, args.alpha, args.eta, args.xi, derive_seed(args.seed, 1),
               parse_noise_mode(args.noise)};
  if (cfg.t_max > 0)
    cfg.validate();
  const auto res = warm_started_qaoa(m, args.depth, parse_loss_mode(args.loss_mode),
                                     theta0, cfg, {args.descent_eta, args.descent_iters});
  if (!args.trace.empty()) {
    std::ostringstream os;
    os << "epoch,phase,loss,accepted\n";
    for (const auto &e : res.trace)
      os << e.epoch << ',' << to_string(e.phase) << ',' << fmt(e.loss) << ','
         << (e.accepted ? 1 : 0) << '\n';
    output(args.trace, os.str());
  }
  json j{{"initial", params_json(theta0)},
         {"mh_best", params_json(res.mh_best)},
         {"mh_best_loss", res.mh_best_loss},
         {"mh_accepts", res.mh_accepts},
         {"params", params_json(res.params)},
         {"params_wrapped", params_json(wrap_for_display(res.params))},
         {"loss", res.loss}};
  output(args.out, j.dump(1) + "\n");
}

struct ExperimentArgs {
  std::string kind;
  std::string config;
  std::string csv;
  std::string json_out;
  std::optional<std::uint64_t> seed;
};

void experiment(const ExperimentArgs &args) {
  const auto kind = parse_experiment(args.kind);
  ExperimentConfig cfg = default_config(kind);
  if (!args.config.empty()) {
    const auto j = read_json(args.config);
    if (j.contains("experiment") && parse_experiment(j["experiment"].get<std::string>()) != kind)
      throw InvalidArgument("config names experiment '" +
                            j["experiment"].get<std::string>() +
                            "' but '" + args.kind + "' was requested");
    cfg = config_from_json(j, kind);
  }
  if (args.seed)
    cfg.seed = *args.seed;
  const auto report = run_experiment(cfg);
  if (!args.csv.empty())
    emit_report(report, ReportFormat::csv, args.csv);
  if (!args.json_out.empty())
    emit_report(report, ReportFormat::json, args.json_out);
  json summary = json::array();
  for (const auto &row : report.aggregates)
    summary.push_back(row);
  std::cout << summary.dump(1) << "\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Constrained combinatorial optimization with QAOA"};
  app.require_subcommand(1);

  GenGraphArgs gg;
  auto *c_gen = app.add_subcommand("gen-graph", "Erdos-Renyi random graph as JSON");
  c_gen->add_option("--n", gg.n, "Vertex count")->required();
  c_gen->add_option("--p", gg.p, "Edge probability");
  c_gen->add_option("--seed", gg.seed, "Seed");
  c_gen->add_option("--weights", gg.weights, "Uniform vertex weights 'lo,hi'");
  c_gen->add_option("--out", gg.out, "Output path (default stdout)");

  BuildArgs ba;
  auto *c_build = app.add_subcommand("build-ising", "Compile a graph problem to an Ising model");
  c_build->add_option("--graph", ba.graph, "Graph JSON")->required();
  c_build->add_option("--problem", ba.problem, "mvc|mwvc|mis");
  c_build->add_option("--a", ba.a, "Constraint coefficient");
  c_build->add_option("--b", ba.b, "Objective coefficient");
  c_build->add_flag("--warn-coefficients", ba.warn,
                    "Warn instead of failing when the coefficient condition is violated");
  c_build->add_option("--out", ba.out, "Output path (default stdout)");

  BruteArgs bf;
  auto *c_brute = app.add_subcommand("brute-force", "Exhaustive ground states of an Ising model");
  c_brute->add_option("--model", bf.model, "Ising model JSON")->required();
  c_brute->add_option("--problem", bf.problem, "Decode vertex sets for mvc|mwvc|mis");
  c_brute->add_option("--out", bf.out, "Output path (default stdout)");

  VerifyArgs va;
  auto *c_verify = app.add_subcommand("verify-theorem1",
                                      "Check that a*H_a + b*H_b encodes the constrained problem");
  c_verify->add_option("--graph", va.graph, "Graph JSON")->required();
  c_verify->add_option("--problem", va.problem, "mvc|mwvc|mis");
  c_verify->add_option("--a", va.a, "Constraint coefficient");
  c_verify->add_option("--b", va.b, "Objective coefficient");
  c_verify->add_flag("--spectrum", va.spectrum, "Include the level analysis (U, L, o)");
  c_verify->add_flag("--strict", va.strict, "Exit with code 4 when the check fails");
  c_verify->add_option("--out", va.out, "Output path (default stdout)");

  F1Args fa;
  auto *c_f1 = app.add_subcommand("f1-eval", "Closed-form depth-1 loss");
  c_f1->add_option("--model", fa.model, "Ising model JSON")->required();
  c_f1->add_option("--gamma", fa.gamma, "Phase angle");
  c_f1->add_option("--beta", fa.beta, "Mixer angle");
  c_f1->add_flag("--gradient", fa.gradient, "Also print the gradient");
  c_f1->add_option("--grid", fa.grid, "Landscape grid 'GxH' (endpoints included)");
  c_f1->add_option("--gamma-range", fa.gamma_range, "Grid gamma range 'lo,hi'");
  c_f1->add_option("--beta-range", fa.beta_range, "Grid beta range 'lo,hi'");
  c_f1->add_option("--out", fa.out, "Output path (default stdout)");

  QaoaArgs qa;
  auto *c_qaoa = app.add_subcommand("qaoa-run", "Optimize standard QAOA from random initial angles");
  c_qaoa->add_option("--model", qa.model, "Ising model JSON")->required();
  c_qaoa->add_option("--depth", qa.depth, "Number of layers");
  c_qaoa->add_option("--loss-mode", qa.loss_mode, "analytic|simulated");
  c_qaoa->add_option("--optimizer", qa.optimizer, "gd|bfgs");
  c_qaoa->add_option("--eta", qa.eta, "Gradient-descent step");
  c_qaoa->add_option("--iters", qa.iters, "Iteration count (cap for bfgs)");
  c_qaoa->add_option("--n-inits", qa.n_inits, "Random initial points");
  c_qaoa->add_option("--gamma-range", qa.gamma_range, "Initial gamma range 'lo,hi'");
  c_qaoa->add_option("--beta-range", qa.beta_range, "Initial beta range 'lo,hi'");
  c_qaoa->add_option("--seed", qa.seed, "Seed");
  c_qaoa->add_option("--shots", qa.shots, "Measurement samples of the final state");
  c_qaoa->add_option("--out", qa.out, "Output path (default stdout)");

  WarmArgs wa;
  auto *c_warm = app.add_subcommand("warmstart-run", "Metropolis-Hastings warm start + descent");
  c_warm->add_option("--model", wa.model, "Ising model JSON")->required();
  c_warm->add_option("--depth", wa.depth, "Number of layers");
  c_warm->add_option("--loss-mode", wa.loss_mode, "analytic|simulated");
  c_warm->add_option("--tmax", wa.tmax, "Markov epochs (0 disables the warm start)");
  c_warm->add_option("--alpha", wa.alpha, "Inverse temperature");
  c_warm->add_option("--xi", wa.xi, "Proposal noise scale");
  c_warm->add_option("--eta", wa.eta, "Proposal gradient step");
  c_warm->add_option("--noise", wa.noise, "per-component|shared");
  c_warm->add_option("--descent-eta", wa.descent_eta, "Closing descent step");
  c_warm->add_option("--descent-iters", wa.descent_iters, "Closing descent iterations");
  c_warm->add_option("--gamma0", wa.gamma0, "Initial gamma (depth 1)");
  c_warm->add_option("--beta0", wa.beta0, "Initial beta (depth 1)");
  c_warm->add_option("--seed", wa.seed, "Seed");
  c_warm->add_option("--trace", wa.trace, "Trace CSV path");
  c_warm->add_option("--out", wa.out, "Result JSON path (default stdout)");

  ExperimentArgs ea;
  auto *c_exp = app.add_subcommand("experiment", "Run an experiment protocol");
  c_exp->add_option("kind", ea.kind, "mwvc|mvc-warmstart|local-minima")->required();
  c_exp->add_option("--config", ea.config, "Config JSON (missing fields take defaults)");
  c_exp->add_option("--seed", ea.seed, "Override the master seed");
  c_exp->add_option("--csv", ea.csv, "Per-run CSV output path");
  c_exp->add_option("--json", ea.json_out, "Full report JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (c_gen->parsed())
      gen_graph(gg);
    else if (c_build->parsed())
      build_ising(ba);
    else if (c_brute->parsed())
      brute(bf);
    else if (c_verify->parsed())
      return verify(va);
    else if (c_f1->parsed())
      f1_eval(fa);
    else if (c_qaoa->parsed())
      qaoa_run(qa);
    else if (c_warm->parsed())
      warmstart_run(wa);
    else if (c_exp->parsed())
      experiment(ea);
    return 0;
  } catch (const SizeLimitError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSize;
  } catch (const ConsistencyError &e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
