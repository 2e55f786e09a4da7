#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ccqaoa/error.hpp"
#include "ccqaoa/graph.hpp"
#include "ccqaoa/ising.hpp"
#include "ccqaoa/qsim.hpp"

namespace ccqaoa {

/// Precomputed inputs of the closed-form depth-1 loss for a model whose
/// nonzero couplings all equal J.
///
/// Degrees and shared-neighbor counts are taken on the coupling graph (edges
/// = nonzero J_ij), not on whatever problem graph produced the model.
class AnalyticContext {
public:
  explicit AnalyticContext(const IsingModel &m)
      : n_(m.num_spins()), fields_(m.fields()), constant_(m.constant()) {
    if (!m.is_uniform_coupling())
      throw ScopeError("closed-form depth-1 loss requires uniform couplings");
    coupling_ = m.uniform_coupling();
    std::vector<Edge> edges;
    for (const auto &c : m.couplings())
      if (c.value != 0.0)
        edges.emplace_back(c.i, c.j);
    graph_ = Graph(n_, std::move(edges));
    degrees_.resize(n_);
    for (Vertex u = 0; u < n_; ++u)
      degrees_[u] = graph_.degree(u);
    shared_.reserve(graph_.num_edges());
    for (const auto &[u, v] : graph_.edges())
      shared_.push_back(graph_.common_neighbors(u, v));
  }

  std::size_t num_spins() const { return n_; }
  double coupling() const { return coupling_; }
  double constant() const { return constant_; }
  const std::vector<double> &fields() const { return fields_; }
  const Graph &coupling_graph() const { return graph_; }
  std::size_t degree(Vertex u) const { return degrees_.at(u); }
  /// Shared-neighbor count of the k-th coupling edge.
  std::size_t shared_neighbors(std::size_t k) const { return shared_.at(k); }

private:
  std::size_t n_;
  double coupling_ = 0.0;
  std::vector<double> fields_;
  double constant_;
  Graph graph_;
  std::vector<std::size_t> degrees_;
  std::vector<std::size_t> shared_;
};

namespace detail {

// x^k for a nonnegative integer k, with x^0 == 1 even at x == 0.
inline double ipow(double x, std::size_t k) {
  return k == 0 ? 1.0 : std::pow(x, static_cast<double>(k));
}

// d/dgamma of x(gamma)^k given dx/dgamma.
inline double dipow(double x, double dx, std::size_t k) {
  return k == 0 ? 0.0 : static_cast<double>(k) * ipow(x, k - 1) * dx;
}

// Value and gamma-derivative of the gamma-dependent part of <Z_u Z_v>.
struct EdgeGammaTerms {
  double p = 0.0, dp = 0.0; // multiplies sin(4 beta)
  double q = 0.0, dq = 0.0; // multiplies sin^2(2 beta)
};

inline EdgeGammaTerms edge_gamma_terms(double J, double hu, double hv,
                                       std::size_t du, std::size_t dv,
                                       std::size_t f, double gamma) {
  const double c = std::cos(2 * J * gamma), s = std::sin(2 * J * gamma);
  const double dc = -2 * J * s, dms = -2 * J * c; // d(cos), d(-sin)
  const double c4 = std::cos(4 * J * gamma);
  const double dc4 = -4 * J * std::sin(4 * J * gamma);
  const double cu = std::cos(2 * hu * gamma), su = std::sin(2 * hu * gamma);
  const double cv = std::cos(2 * hv * gamma), sv = std::sin(2 * hv * gamma);
  const double dcu = -2 * hu * su, dsu = 2 * hu * cu;
  const double dcv = -2 * hv * sv, dsv = 2 * hv * cv;

  EdgeGammaTerms t;
  // cos(2 h_u g) sin(-2 J g) cos^{d_u - 1}(2 J g), and the same for v.
  auto mixed = [&](double ch, double dch, std::size_t d, double &val,
                   double &der) {
    const double pw = ipow(c, d - 1), dpw = dipow(c, dc, d - 1);
    val += ch * -s * pw;
    der += dch * -s * pw + ch * dms * pw + ch * -s * dpw;
  };
  mixed(cu, dcu, du, t.p, t.dp);
  mixed(cv, dcv, dv, t.p, t.dp);

  const std::size_t e = du + dv - 2 * f - 2;
  const double ce = ipow(c, e), dce = dipow(c, dc, e);
  const double cf = ipow(c4, f), dcf = dipow(c4, dc4, f);
  const double ss = su * sv, dss = dsu * sv + su * dsv;
  const double cc = cu * cv, dcc = dcu * cv + cu * dcv;
  const double r = ss * (1 + cf) + cc * (1 - cf);
  const double dr = dss * (1 + cf) + ss * dcf + dcc * (1 - cf) - cc * dcf;
  t.q = ce * r;
  t.dq = dce * r + ce * dr;
  return t;
}

inline void check_vertex(const AnalyticContext &ctx, Vertex u) {
  if (u >= ctx.num_spins())
    throw InvalidArgument("vertex " + std::to_string(u) + " out of range");
}

} // namespace detail

/// <Z_u> after one QAOA layer:
///   sin(2 beta) sin(-2 h_u gamma) cos^{d_u}(2 J gamma).
inline double exp_z(const AnalyticContext &ctx, Vertex u, double gamma,
                    double beta) {
  detail::check_vertex(ctx, u);
  const double J = ctx.coupling(), h = ctx.fields()[u];
  return std::sin(2 * beta) * std::sin(-2 * h * gamma) *
         detail::ipow(std::cos(2 * J * gamma), ctx.degree(u));
}

/// <Z_u Z_v> after one QAOA layer, for a coupled pair (u, v).
inline double exp_zz(const AnalyticContext &ctx, Vertex u, Vertex v,
                     double gamma, double beta) {
  detail::check_vertex(ctx, u);
  detail::check_vertex(ctx, v);
  if (u == v || !ctx.coupling_graph().has_edge(u, v))
    throw InvalidArgument("spins " + std::to_string(u) + " and " +
                          std::to_string(v) + " are not coupled");
  const auto f = ctx.coupling_graph().common_neighbors(u, v);
  const auto t = detail::edge_gamma_terms(ctx.coupling(), ctx.fields()[u],
                                          ctx.fields()[v], ctx.degree(u),
                                          ctx.degree(v), f, gamma);
  const double s2 = std::sin(2 * beta);
  return 0.5 * (std::sin(4 * beta) * t.p + s2 * s2 * t.q);
}

struct F1Gradient {
  double d_gamma = 0.0;
  double d_beta = 0.0;
};

namespace detail {

struct F1Evaluation {
  double value = 0.0;
  F1Gradient grad;
};

inline F1Evaluation evaluate_f1(const AnalyticContext &ctx, double gamma,
                                double beta) {
  const double J = ctx.coupling();
  const auto &h = ctx.fields();
  const double s4 = std::sin(4 * beta), ds4 = 4 * std::cos(4 * beta);
  const double s2 = std::sin(2 * beta), ds2 = 2 * std::cos(2 * beta);
  const double q = s2 * s2, dq = 2 * std::sin(4 * beta);

  // F1 = c - J sum_<u,v> <Z_u Z_v> - sum_u h_u <Z_u>
  double sum_p = 0, sum_dp = 0, sum_q = 0, sum_dq = 0;
  const auto &edges = ctx.coupling_graph().edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [u, v] = edges[k];
    const auto t = edge_gamma_terms(J, h[u], h[v], ctx.degree(u),
                                    ctx.degree(v), ctx.shared_neighbors(k),
                                    gamma);
    sum_p += t.p;
    sum_dp += t.dp;
    sum_q += t.q;
    sum_dq += t.dq;
  }

  const double c = std::cos(2 * J * gamma);
  const double dc = -2 * J * std::sin(2 * J * gamma);
  double sum_z = 0, sum_dz = 0; // sum_u h_u sin(-2 h_u g) cos^{d_u}
  for (Vertex u = 0; u < ctx.num_spins(); ++u) {
    if (h[u] == 0.0)
      continue;
    const std::size_t d = ctx.degree(u);
    const double ms = std::sin(-2 * h[u] * gamma);
    const double dms = -2 * h[u] * std::cos(2 * h[u] * gamma);
    const double pw = ipow(c, d), dpw = dipow(c, dc, d);
    sum_z += h[u] * ms * pw;
    sum_dz += h[u] * (dms * pw + ms * dpw);
  }

  F1Evaluation out;
  out.value = ctx.constant() - 0.5 * J * (s4 * sum_p + q * sum_q) - s2 * sum_z;
  out.grad.d_gamma = -0.5 * J * (s4 * sum_dp + q * sum_dq) - s2 * sum_dz;
  out.grad.d_beta = -0.5 * J * (ds4 * sum_p + dq * sum_q) - ds2 * sum_z;
  return out;
}

} // namespace detail

/// Depth-1 QAOA loss <gamma, beta| H |gamma, beta> in closed form; O(n + m).
inline double f1(const AnalyticContext &ctx, double gamma, double beta) {
  return detail::evaluate_f1(ctx, gamma, beta).value;
}

/// Exact partial derivatives of f1.
inline F1Gradient grad_f1(const AnalyticContext &ctx, double gamma,
                          double beta) {
  return detail::evaluate_f1(ctx, gamma, beta).grad;
}

// ---------------------------------------------------------------------------
// Loss providers
// ---------------------------------------------------------------------------

/// Loss value and gradient (same shape as the angles).
struct Evaluation {
  double loss = 0.0;
  ParamPoint grad;
};

using LossEvaluator = std::function<Evaluation(const ParamPoint &)>;

enum class LossMode { analytic, simulated };

inline LossMode parse_loss_mode(const std::string &s) {
  if (s == "analytic")
    return LossMode::analytic;
  if (s == "simulated")
    return LossMode::simulated;
  throw InvalidArgument("unknown loss mode '" + s +
                        "' (expected analytic|simulated)");
}

/// F_p with gradient. Analytic mode: closed form, depth 1 only. Simulated
/// mode: statevector expectation with central differences (step 1e-6).
class LossProvider {
public:
  static constexpr double kFiniteDifferenceStep = 1e-6;

  LossProvider(const IsingModel &m, std::size_t depth, LossMode mode)
      : depth_(depth), mode_(mode) {
    detail::require(depth >= 1, "QAOA depth must be at least 1");
    if (mode == LossMode::analytic) {
      if (depth != 1)
        throw ScopeError("closed-form loss is only available at depth 1, got " +
                         std::to_string(depth));
      backend_ = std::make_shared<const AnalyticContext>(m);
    } else {
      backend_ = std::make_shared<const DiagonalHamiltonian>(m);
    }
  }

  std::size_t depth() const { return depth_; }
  LossMode mode() const { return mode_; }

  double loss(const ParamPoint &x) const {
    check_depth(x);
    if (auto a = analytic())
      return f1(*a, x.gammas[0], x.betas[0]);
    const auto &h = *std::get<std::shared_ptr<const DiagonalHamiltonian>>(backend_);
    return expectation(ansatz(h, x), h);
  }

  Evaluation evaluate(const ParamPoint &x) const {
    check_depth(x);
    Evaluation out;
    if (auto a = analytic()) {
      const auto e = detail::evaluate_f1(*a, x.gammas[0], x.betas[0]);
      out.loss = e.value;
      out.grad = ParamPoint({e.grad.d_gamma}, {e.grad.d_beta});
      return out;
    }
    out.loss = loss(x);
    auto flat = x.flatten();
    std::vector<double> g(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const double x0 = flat[i];
      flat[i] = x0 + kFiniteDifferenceStep;
      const double up = loss(ParamPoint::unflatten(flat));
      flat[i] = x0 - kFiniteDifferenceStep;
      const double down = loss(ParamPoint::unflatten(flat));
      flat[i] = x0;
      g[i] = (up - down) / (2 * kFiniteDifferenceStep);
    }
    out.grad = ParamPoint::unflatten(g);
    return out;
  }

  LossEvaluator evaluator() const {
    return [self = *this](const ParamPoint &x) { return self.evaluate(x); };
  }

private:
  const AnalyticContext *analytic() const {
    if (auto p = std::get_if<std::shared_ptr<const AnalyticContext>>(&backend_))
      return p->get();
    return nullptr;
  }

  void check_depth(const ParamPoint &x) const {
    if (x.depth() != depth_)
      throw InvalidArgument("expected " + std::to_string(depth_) +
                            " angle pairs, got " + std::to_string(x.depth()));
  }

  std::size_t depth_;
  LossMode mode_;
  std::variant<std::shared_ptr<const AnalyticContext>,
               std::shared_ptr<const DiagonalHamiltonian>>
      backend_;
};

} // namespace ccqaoa
