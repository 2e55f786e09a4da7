#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "support.hpp"

using namespace ccqaoa;
using namespace ccqaoa::testing;

namespace {

ExperimentConfig small_mwvc() {
  auto c = default_mwvc_config();
  c.sizes = {4, 5};
  c.cases_per_size = 2;
  c.depths = {1, 2};
  c.n_inits = 3;
  c.optimizer.iters = 50;
  return c;
}

ExperimentConfig small_warmstart() {
  auto c = default_warmstart_config();
  c.sizes = {6};
  c.cases_per_size = 3;
  c.n_inits = 4;
  c.mh.t_max = 100;
  c.descent.iters = 50;
  return c;
}

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() /
          ("ccqaoa_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

std::size_t count_lines(const std::string &text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

} // namespace

TEST(ExperimentConfig, DefaultsValidate) {
  for (auto k : {ExperimentKind::mwvc, ExperimentKind::mvc_warmstart,
                 ExperimentKind::local_minima}) {
    const auto c = default_config(k);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.experiment, k);
    EXPECT_EQ(parse_experiment(to_string(k)), k);
  }
  const auto w = default_warmstart_config();
  EXPECT_EQ(w.mh.t_max, 600u);
  EXPECT_EQ(w.mh.alpha, 0.5);
  EXPECT_EQ(w.mh.xi, 0.4);
  EXPECT_EQ(w.mh.eta, 0.1);
  EXPECT_EQ(default_mwvc_config().init_domain.gamma_lo, -std::numbers::pi);
  EXPECT_EQ(w.init_domain.gamma_hi, 2 * std::numbers::pi);
  EXPECT_EQ(w.init_domain.beta_hi, std::numbers::pi);
}

TEST(ExperimentConfig, BudgetAndScopeChecks) {
  auto c = default_mwvc_config();
  c.sizes = {15};
  EXPECT_THROW(c.validate(), SizeLimitError);
  c.sizes = {14};
  EXPECT_NO_THROW(c.validate());

  auto w = default_warmstart_config();
  w.sizes = {13};
  EXPECT_THROW(run_mvc_warmstart_experiment(w), SizeLimitError);

  auto l = default_local_minima_config();
  l.depths = {2};
  EXPECT_THROW(l.validate(), ScopeError);
  l = default_local_minima_config();
  l.edge_probs = {0.5, 1.2};
  EXPECT_THROW(l.validate(), InvalidArgument);
  l = default_local_minima_config();
  l.n_inits = 0;
  EXPECT_THROW(l.validate(), InvalidArgument);
}

TEST(ExperimentConfig, JsonRoundTripAndPartialFiles) {
  for (auto k : {ExperimentKind::mwvc, ExperimentKind::mvc_warmstart,
                 ExperimentKind::local_minima}) {
    auto c = default_config(k);
    c.seed = 77;
    c.sizes = {5, 7};
    const nlohmann::json j = c;
    EXPECT_EQ(config_from_json(j, ExperimentKind::mwvc), c);
  }
  const auto partial = nlohmann::json::parse(R"({"sizes": [6], "n_inits": 4})");
  const auto c = config_from_json(partial, ExperimentKind::local_minima);
  EXPECT_EQ(c.experiment, ExperimentKind::local_minima);
  EXPECT_EQ(c.sizes, (std::vector<std::size_t>{6}));
  EXPECT_EQ(c.n_inits, 4u);
  EXPECT_EQ(c.edge_probs, default_local_minima_config().edge_probs);

  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"sizes": "six"})"),
                                ExperimentKind::mwvc),
               InvalidArgument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"optimizer": {"method": "sgd"}})"),
                                ExperimentKind::mwvc),
               InvalidArgument);
}

TEST(MwvcExperiment, RecordsAndAggregates) {
  const auto cfg = small_mwvc();
  const auto r = run_mwvc_experiment(cfg);
  ASSERT_EQ(r.cases.size(), 4u);
  for (const auto &c : r.cases) {
    EXPECT_EQ(c.runs.size(), 2u * 3u);
    EXPECT_FALSE(c.ground_states.empty());
    // Exact optimum agrees with the combinatorial oracle.
    auto g = gen_erdos_renyi(c.size, c.edge_prob, derive_seed(c.seed, 1));
    g = assign_random_weights(g, 0, 3, derive_seed(c.seed, 2));
    std::set<std::uint64_t> expected;
    for (const auto &b : c.ground_states)
      expected.insert(SpinConfig::from_bitstring(b).to_index());
    EXPECT_EQ(expected, combinatorial_optima(Problem::mwvc, g));
    for (const auto &run : c.runs) {
      EXPECT_GE(run.final_loss, c.exact_optimum - 1e-9);
      ASSERT_TRUE(run.solution_probability);
      EXPECT_GE(*run.solution_probability, 0.0);
      EXPECT_LE(*run.solution_probability, 1.0 + 1e-12);
      EXPECT_EQ(run.trace.front(), LossProvider(build_mwvc(g, c.a, c.b), run.depth,
                                                LossMode::simulated)
                                       .loss(run.initial));
    }
  }
  EXPECT_EQ(r.aggregates, aggregate(cfg, r.cases));
  ASSERT_EQ(r.aggregates.size(), 4u);
  EXPECT_EQ(r.aggregates[0].cases, 2u);
  EXPECT_TRUE(r.aggregates[0].metrics.count("mean_probability"));
}

TEST(MwvcExperiment, SingleCaseDeterministic) {
  auto cfg = small_mwvc();
  cfg.sizes = {5};
  cfg.cases_per_size = 1;
  cfg.depths = {1};
  cfg.n_inits = 1;
  const nlohmann::json a = run_mwvc_experiment(cfg), b = run_mwvc_experiment(cfg);
  EXPECT_EQ(a.dump(), b.dump());
  cfg.seed += 1;
  EXPECT_NE(nlohmann::json(run_mwvc_experiment(cfg)).dump(), a.dump());
}

TEST(WarmstartExperiment, TracesAndAggregates) {
  const auto cfg = small_warmstart();
  const auto r = run_mvc_warmstart_experiment(cfg);
  ASSERT_EQ(r.cases.size(), 3u);
  for (const auto &c : r.cases)
    for (const auto &run : c.runs) {
      EXPECT_EQ(run.trace.size(), cfg.descent.iters + 1);
      EXPECT_EQ(run.warm_trace.size(), cfg.descent.iters + 1);
      ASSERT_TRUE(run.warm_final_loss && run.warm_mh_best_loss);
      EXPECT_EQ(run.warm_trace.front(), *run.warm_mh_best_loss);
      EXPECT_EQ(run.warm_trace.back(), *run.warm_final_loss);
    }
  EXPECT_EQ(r.aggregates, aggregate(cfg, r.cases));
  const auto &row = r.aggregates.at(0);
  EXPECT_EQ(row.series.at("cold_mean_trace").size(), cfg.descent.iters + 1);
  EXPECT_EQ(row.series.at("warm_variance_trace").size(), cfg.descent.iters + 1);
}

TEST(WarmstartExperiment, DisabledChainReproducesColdStart) {
  auto cfg = small_warmstart();
  cfg.mh.t_max = 0;
  const auto r = run_mvc_warmstart_experiment(cfg);
  for (const auto &c : r.cases)
    for (const auto &run : c.runs) {
      EXPECT_EQ(*run.warm_final_loss, run.final_loss);
      EXPECT_EQ(run.warm_trace, run.trace);
    }
  const auto &m = r.aggregates.at(0).metrics;
  EXPECT_EQ(m.at("mean_warm_final_loss"), m.at("mean_cold_final_loss"));
}

TEST(WarmstartExperiment, WarmStartBeatsColdStartOnMostCases) {
  auto cfg = default_warmstart_config();
  cfg.sizes = {8};
  cfg.cases_per_size = 10;
  const auto r = run_mvc_warmstart_experiment(cfg);
  const auto &m = r.aggregates.at(0).metrics;
  EXPECT_GE(m.at("fraction_warm_variance_le_cold"), 0.8);
  EXPECT_GE(m.at("fraction_warm_mean_le_cold"), 0.8);
}

TEST(LocalMinima, EmptyGraphsHaveNoLocalMinima) {
  auto cfg = default_local_minima_config();
  cfg.edge_probs = {0.0};
  cfg.sizes = {6};
  cfg.cases_per_size = 5;
  const auto r = estimate_local_minima_probability(cfg);
  ASSERT_EQ(r.aggregates.size(), 1u);
  EXPECT_NEAR(r.aggregates[0].metrics.at("mean_local_min_fraction"), 0.0, 0.1);
}

TEST(LocalMinima, SweepAndDeterminism) {
  auto cfg = default_local_minima_config();
  cfg.sizes = {6};
  cfg.cases_per_size = 3;
  cfg.n_inits = 5;
  cfg.edge_probs = {0.3, 0.7};
  const auto a = estimate_local_minima_probability(cfg);
  const auto b = estimate_local_minima_probability(cfg);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.aggregates.size(), 2u);
  EXPECT_EQ(a.aggregates[0].edge_prob, 0.3);
  EXPECT_EQ(a.aggregates[1].edge_prob, 0.7);
  EXPECT_EQ(a.aggregates, aggregate(cfg, a.cases));
  for (const auto &c : a.cases) {
    double best = 1e300;
    for (const auto &run : c.runs)
      best = std::min(best, run.final_loss);
    for (const auto &run : c.runs)
      EXPECT_EQ(*run.local_minimum, run.final_loss > best + cfg.local_min_tolerance);
  }
}

TEST(EmitReport, EmptyReportHasHeaderOnly) {
  ExperimentReport r;
  const auto path = temp_path("empty.csv");
  emit_report(r, ReportFormat::csv, path);
  EXPECT_EQ(read_text(path), std::string(kReportCsvHeader) + "\n");
  std::filesystem::remove(path);
}

TEST(EmitReport, CsvRowCountAndJsonRoundTrip) {
  const auto cfg = small_warmstart();
  const auto r = run_mvc_warmstart_experiment(cfg);
  const auto csv = report_csv(r);
  EXPECT_EQ(count_lines(csv),
            1 + cfg.sizes.size() * cfg.cases_per_size * cfg.depths.size() * cfg.n_inits);

  const auto path = temp_path("report.json");
  emit_report(r, ReportFormat::json, path);
  EXPECT_EQ(read_report_json(path), r);
  std::filesystem::remove(path);

  const auto mw = run_mwvc_experiment(small_mwvc());
  emit_report(mw, ReportFormat::json, path);
  EXPECT_EQ(read_report_json(path), mw);
  std::filesystem::remove(path);
}

TEST(EmitReport, IoErrorsCarryPath) {
  const std::string bad = "/nonexistent-dir/x/report.csv";
  try {
    emit_report(ExperimentReport{}, ReportFormat::csv, bad);
    FAIL() << "expected IoError";
  } catch (const IoError &e) {
    EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
  }
  EXPECT_THROW(read_report_json("/nonexistent-dir/r.json"), IoError);
}
