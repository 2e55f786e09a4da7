#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace ccqaoa;
using namespace ccqaoa::testing;

namespace {

double simulated_f1(const IsingModel &m, double gamma, double beta) {
  return expectation(ansatz(m, ParamPoint({gamma}, {beta})), m);
}

// Uniform-J model with arbitrary fields and constant.
IsingModel uniform_model(Rng &rng, std::size_t n, double p_edge) {
  const double J = rng.uniform(-1.5, 1.5);
  IsingModel m(n);
  const auto g = gen_erdos_renyi(n, p_edge, rng.next_u64());
  for (const auto &[u, v] : g.edges())
    m.add_coupling(u, v, J);
  for (std::size_t i = 0; i < n; ++i)
    m.add_field(i, rng.uniform(-1.5, 1.5));
  m.add_constant(rng.uniform(-3, 3));
  return m;
}

} // namespace

TEST(AnalyticContext, CouplingGraph) {
  IsingModel m(4, {{0, 1, -0.5}, {1, 2, 0.0}, {2, 3, -0.5}}, {0, 0, 0, 0});
  const AnalyticContext ctx(m);
  EXPECT_EQ(ctx.coupling_graph().num_edges(), 2u);
  EXPECT_EQ(ctx.degree(1), 1u);
  EXPECT_EQ(ctx.coupling(), -0.5);
}

TEST(AnalyticContext, RejectsNonUniformCouplings) {
  IsingModel m(3, {{0, 1, -0.5}, {1, 2, 0.25}}, {0, 0, 0});
  EXPECT_THROW(AnalyticContext{m}, ScopeError);
}

TEST(ExpZ, Examples) {
  const auto m = build_mvc(triangle(), 2, 1);
  const AnalyticContext ctx(m);
  for (Vertex u = 0; u < 3; ++u) {
    EXPECT_EQ(exp_z(ctx, u, 0.0, 0.7), 0.0);
    EXPECT_EQ(exp_z(ctx, u, 0.4, 0.0), 0.0);
  }
  const IsingModel two(2, {{0, 1, -0.5}}, {0.3, -0.2});
  const auto s = ansatz(two, ParamPoint({0.3}, {0.7}));
  EXPECT_NEAR(exp_z(AnalyticContext(two), 0, 0.3, 0.7), expectation_z(s, 0), 1e-12);
  EXPECT_NEAR(exp_z(AnalyticContext(two), 1, 0.3, 0.7), expectation_z(s, 1), 1e-12);
  EXPECT_THROW(exp_z(ctx, 3, 0.1, 0.1), InvalidArgument);
}

TEST(ExpZZ, Examples) {
  const auto m = build_mvc(triangle(), 2, 1);
  const AnalyticContext ctx(m);
  EXPECT_NEAR(exp_zz(ctx, 0, 1, 0.0, 0.6), 0.0, 1e-15);
  EXPECT_NEAR(exp_zz(ctx, 0, 1, 0.4, 0.0), 0.0, 1e-15);
  const auto s = ansatz(m, ParamPoint({0.4}, {0.6}));
  EXPECT_NEAR(exp_zz(ctx, 0, 1, 0.4, 0.6), expectation_zz(s, 0, 1), 1e-12);
  EXPECT_THROW(exp_zz(AnalyticContext(build_mvc(path3(), 2, 1)), 0, 2, 0.1, 0.1),
               InvalidArgument);
}

TEST(ExpZZ, MatchesSimulatorOnAllEdges) {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto m = uniform_model(rng, 2 + t % 7, 0.6);
    const AnalyticContext ctx(m);
    const double g = rng.uniform(-4, 4), b = rng.uniform(-4, 4);
    const auto s = ansatz(m, ParamPoint({g}, {b}));
    for (const auto &[u, v] : ctx.coupling_graph().edges())
      EXPECT_NEAR(exp_zz(ctx, u, v, g, b), expectation_zz(s, u, v), 1e-12);
    for (Vertex u = 0; u < m.num_spins(); ++u)
      EXPECT_NEAR(exp_z(ctx, u, g, b), expectation_z(s, u), 1e-12);
  }
}

TEST(F1, ZeroAnglesGiveConstant) {
  Rng rng(3);
  const auto m = uniform_model(rng, 6, 0.5);
  const AnalyticContext ctx(m);
  EXPECT_NEAR(f1(ctx, 0.0, 1.3), m.constant(), 1e-12);
  EXPECT_NEAR(f1(ctx, 2.1, 0.0), m.constant(), 1e-12);
}

TEST(F1, MatchesSimulatorOnProblemModels) {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_problem_model(rng, 2 + t % 9, 0.5);
    const AnalyticContext ctx(m);
    const double g = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double b = rng.uniform(-std::numbers::pi, std::numbers::pi);
    EXPECT_NEAR(f1(ctx, g, b), simulated_f1(m, g, b), 1e-9);
  }
}

TEST(F1, MatchesSimulatorOnArbitraryUniformModels) {
  Rng rng(19);
  for (int t = 0; t < 50; ++t) {
    const auto m = uniform_model(rng, 1 + t % 10, 0.3 + 0.1 * (t % 7));
    const AnalyticContext ctx(m);
    const double g = rng.uniform(-6, 6), b = rng.uniform(-6, 6);
    EXPECT_NEAR(f1(ctx, g, b), simulated_f1(m, g, b), 1e-9);
  }
}

TEST(GradF1, StationaryAtOrigin) {
  Rng rng(5);
  const auto m = uniform_model(rng, 5, 0.5);
  const auto gr = grad_f1(AnalyticContext(m), 0.0, 0.0);
  EXPECT_NEAR(gr.d_gamma, 0.0, 1e-12);
  EXPECT_NEAR(gr.d_beta, 0.0, 1e-12);
}

TEST(GradF1, ConstantModelHasZeroGradient) {
  const AnalyticContext ctx(IsingModel(4, {}, {0, 0, 0, 0}, 3.0));
  for (double g : {-1.0, 0.3, 2.0}) {
    const auto gr = grad_f1(ctx, g, 0.7 * g);
    EXPECT_EQ(gr.d_gamma, 0.0);
    EXPECT_EQ(gr.d_beta, 0.0);
  }
}

TEST(GradF1, MatchesCentralDifferences) {
  Rng rng(23);
  const double h = 1e-6;
  for (int t = 0; t < 100; ++t) {
    const auto m = t % 2 ? random_problem_model(rng, 2 + t % 9, 0.5)
                         : uniform_model(rng, 2 + t % 9, 0.5);
    const AnalyticContext ctx(m);
    const double g = rng.uniform(-4, 4), b = rng.uniform(-4, 4);
    const auto gr = grad_f1(ctx, g, b);
    EXPECT_NEAR(gr.d_gamma, (f1(ctx, g + h, b) - f1(ctx, g - h, b)) / (2 * h), 1e-6);
    EXPECT_NEAR(gr.d_beta, (f1(ctx, g, b + h) - f1(ctx, g, b - h)) / (2 * h), 1e-6);
  }
}

TEST(LossProvider, AnalyticAndSimulatedAgree) {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_problem_model(rng, 3 + t % 6, 0.5);
    const LossProvider a(m, 1, LossMode::analytic), s(m, 1, LossMode::simulated);
    const ParamPoint x({rng.uniform(-3, 3)}, {rng.uniform(-3, 3)});
    const auto ea = a.evaluate(x), es = s.evaluate(x);
    EXPECT_NEAR(ea.loss, es.loss, 1e-9);
    EXPECT_NEAR(ea.grad.gammas[0], es.grad.gammas[0], 1e-6);
    EXPECT_NEAR(ea.grad.betas[0], es.grad.betas[0], 1e-6);
  }
}

TEST(LossProvider, SimulatedDepthTwoAtZero) {
  Rng rng(2);
  const auto m = random_model(rng, 5, 0.5);
  const LossProvider s(m, 2, LossMode::simulated);
  EXPECT_NEAR(s.loss(ParamPoint::zeros(2)), m.constant(), 1e-12);
  EXPECT_THROW(s.loss(ParamPoint::zeros(1)), InvalidArgument);
}

TEST(LossProvider, ScopeErrors) {
  Rng rng(2);
  EXPECT_THROW(LossProvider(random_model(rng, 4, 0.9), 1, LossMode::analytic), ScopeError);
  EXPECT_THROW(LossProvider(build_mvc(triangle(), 2, 1), 2, LossMode::analytic), ScopeError);
  EXPECT_THROW(LossProvider(build_mvc(triangle(), 2, 1), 0, LossMode::simulated),
               InvalidArgument);
  EXPECT_THROW(parse_loss_mode("exact"), InvalidArgument);
}

TEST(Optimizers, BfgsFindsQuadraticMinimum) {
  const LossEvaluator f = [](const ParamPoint &x) {
    const double a = x.gammas[0] - 1.0, b = x.betas[0] + 2.0;
    return Evaluation{a * a + 10 * b * b + a * b, ParamPoint({2 * a + b}, {20 * b + a})};
  };
  const auto r = bfgs(f, ParamPoint({5.0}, {5.0}));
  EXPECT_NEAR(r.params.gammas[0], 1.0, 1e-6);
  EXPECT_NEAR(r.params.betas[0], -2.0, 1e-6);
  EXPECT_LT(r.loss, 1e-12);
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    EXPECT_LE(r.trace[i], r.trace[i - 1]);
}

TEST(Optimizers, GradientDescentTrace) {
  const LossEvaluator f = [](const ParamPoint &x) {
    return Evaluation{x.gammas[0] * x.gammas[0], ParamPoint({2 * x.gammas[0]}, {0.0})};
  };
  const auto r = gradient_descent(f, ParamPoint({1.0}, {0.0}), 0.25, 3);
  EXPECT_EQ(r.trace, (std::vector<double>{1.0, 0.25, 0.0625, 0.015625}));
  EXPECT_EQ(r.params.gammas[0], 0.125);
  EXPECT_THROW(parse_optimizer("adam"), InvalidArgument);
}
