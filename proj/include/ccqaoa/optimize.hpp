#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "ccqaoa/analytic.hpp"
#include "ccqaoa/error.hpp"
#include "ccqaoa/qsim.hpp"

namespace ccqaoa {

struct DescentResult {
  ParamPoint params;
  double loss = 0.0;
  std::vector<double> trace; // trace[0] is the loss at the start point
};

/// Fixed-step gradient descent, theta <- theta - eta * grad, for `iters` steps.
inline DescentResult gradient_descent(const LossEvaluator &f, ParamPoint x,
                                      double eta, std::size_t iters) {
  detail::require(eta >= 0.0, "learning rate must be nonnegative");
  DescentResult out;
  auto e = f(x);
  out.trace.reserve(iters + 1);
  out.trace.push_back(e.loss);
  for (std::size_t t = 0; t < iters; ++t) {
    for (std::size_t k = 0; k < x.depth(); ++k) {
      x.gammas[k] -= eta * e.grad.gammas[k];
      x.betas[k] -= eta * e.grad.betas[k];
    }
    e = f(x);
    out.trace.push_back(e.loss);
  }
  out.params = std::move(x);
  out.loss = e.loss;
  return out;
}

struct BfgsOptions {
  std::size_t max_iters = 200;
  double gradient_tolerance = 1e-8;
};

/// BFGS with an Armijo backtracking line search.
inline DescentResult bfgs(const LossEvaluator &f, const ParamPoint &x0,
                          const BfgsOptions &opt = {}) {
  auto x = x0.flatten();
  const std::size_t dim = x.size();
  auto flat_eval = [&](const std::vector<double> &v, std::vector<double> &g) {
    auto e = f(ParamPoint::unflatten(v));
    g = e.grad.flatten();
    return e.loss;
  };
  auto identity = [dim] {
    std::vector<double> m(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      m[i * dim + i] = 1.0;
    return m;
  };
  auto inf_norm = [](const std::vector<double> &v) {
    double m = 0.0;
    for (double x : v)
      m = std::max(m, std::abs(x));
    return m;
  };

  std::vector<double> g, g_new, x_new(dim), dir(dim), s(dim), y(dim), hy(dim);
  double fx = flat_eval(x, g);
  auto inv_hess = identity();
  DescentResult out;
  out.trace.push_back(fx);

  for (std::size_t it = 0; it < opt.max_iters; ++it) {
    if (inf_norm(g) < opt.gradient_tolerance)
      break;
    for (std::size_t i = 0; i < dim; ++i) {
      dir[i] = 0.0;
      for (std::size_t j = 0; j < dim; ++j)
        dir[i] -= inv_hess[i * dim + j] * g[j];
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      slope += dir[i] * g[i];
    if (slope >= 0.0) { // lost descent direction: restart from steepest descent
      inv_hess = identity();
      for (std::size_t i = 0; i < dim; ++i)
        dir[i] = -g[i];
      slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    }

    double step = 1.0, f_new = fx;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries, step *= 0.5) {
      for (std::size_t i = 0; i < dim; ++i)
        x_new[i] = x[i] + step * dir[i];
      f_new = flat_eval(x_new, g_new);
      if (f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      break;

    double sy = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
      sy += s[i] * y[i];
    }
    if (sy > 1e-12) {
      double yhy = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        hy[i] = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
          hy[i] += inv_hess[i * dim + j] * y[j];
        yhy += y[i] * hy[i];
      }
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          inv_hess[i * dim + j] += (sy + yhy) * s[i] * s[j] / (sy * sy) -
                                   (hy[i] * s[j] + s[i] * hy[j]) / sy;
    }
    const bool stalled = fx - f_new <= 1e-15 * std::max(1.0, std::abs(fx));
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    out.trace.push_back(fx);
    if (stalled)
      break;
  }
  out.params = ParamPoint::unflatten(x);
  out.loss = fx;
  return out;
}

enum class OptimizerKind { gradient_descent, bfgs };

inline OptimizerKind parse_optimizer(const std::string &s) {
  if (s == "gd")
    return OptimizerKind::gradient_descent;
  if (s == "bfgs")
    return OptimizerKind::bfgs;
  throw InvalidArgument("unknown optimizer '" + s + "' (expected gd|bfgs)");
}

inline std::string to_string(OptimizerKind k) {
  return k == OptimizerKind::bfgs ? "bfgs" : "gd";
}

struct OptimizerSettings {
  OptimizerKind kind = OptimizerKind::gradient_descent;
  double eta = 0.1;        // gd step
  std::size_t iters = 200; // gd steps, or bfgs iteration cap
  double gradient_tolerance = 1e-8;
};

inline DescentResult run_optimizer(const LossEvaluator &f, const ParamPoint &x0,
                                   const OptimizerSettings &s) {
  if (s.kind == OptimizerKind::bfgs)
    return bfgs(f, x0, BfgsOptions{s.iters, s.gradient_tolerance});
  return gradient_descent(f, x0, s.eta, s.iters);
}

} // namespace ccqaoa
