#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ccqaoa/analytic.hpp"
#include "ccqaoa/error.hpp"
#include "ccqaoa/optimize.hpp"
#include "ccqaoa/qsim.hpp"
#include "ccqaoa/rng.hpp"

namespace ccqaoa {

/// How the Gaussian noise of a proposal is drawn.
///  per_component: independent N(0,1) per angle; matches the product-form
///                 proposal density used in the acceptance ratio.
///  shared:        one N(0,1) draw per epoch added to every angle.
enum class NoiseMode { per_component, shared };

inline NoiseMode parse_noise_mode(const std::string &s) {
  if (s == "per-component")
    return NoiseMode::per_component;
  if (s == "shared" || s == "shared-scalar")
    return NoiseMode::shared;
  throw InvalidArgument("unknown noise mode '" + s +
                        "' (expected per-component|shared)");
}

inline std::string to_string(NoiseMode m) {
  return m == NoiseMode::shared ? "shared" : "per-component";
}

struct MHConfig {
  std::size_t t_max = 600; // Markov epochs
  double alpha = 0.5;      // inverse temperature of exp(-alpha * F)
  double eta = 0.1;        // gradient step inside the proposal
  double xi = 0.4;         // proposal noise scale
  std::uint64_t seed = 0;
  NoiseMode noise_mode = NoiseMode::per_component;

  void validate() const {
    detail::require(t_max >= 1, "t_max must be at least 1");
    detail::require(alpha > 0.0, "alpha must be positive");
    detail::require(eta >= 0.0, "eta must be nonnegative");
    detail::require(xi >= 0.0, "xi must be nonnegative");
  }
};

struct ChainStep {
  std::size_t epoch = 0; // 1-based
  double loss = 0.0;     // loss at the chain position after this epoch
  bool accepted = false;
};

struct ChainState {
  ParamPoint current;
  double current_loss = 0.0;
  ParamPoint best;
  double best_loss = 0.0;
  std::size_t epoch = 0;
  std::size_t accept_count = 0;
  std::vector<ChainStep> trace;
};

/// Unnormalized log Boltzmann density: -alpha * F.
inline double log_target(double loss_value, double alpha) {
  return -alpha * loss_value;
}

/// Candidate theta' = theta - eta * grad + xi * noise.
inline ParamPoint propose(const ParamPoint &theta, const ParamPoint &grad,
                          const MHConfig &cfg, Rng &rng) {
  detail::require(grad.depth() == theta.depth(),
                  "gradient and angles have different depths");
  ParamPoint out = theta;
  const double shared = cfg.noise_mode == NoiseMode::shared ? rng.normal() : 0.0;
  auto noise = [&] {
    return cfg.noise_mode == NoiseMode::shared ? shared : rng.normal();
  };
  for (std::size_t k = 0; k < theta.depth(); ++k)
    out.gammas[k] += -cfg.eta * grad.gammas[k] + cfg.xi * noise();
  for (std::size_t k = 0; k < theta.depth(); ++k)
    out.betas[k] += -cfg.eta * grad.betas[k] + cfg.xi * noise();
  return out;
}

/// log G(to | from): each coordinate of (from - to) is N(eta * grad, xi^2).
inline double log_proposal_density(const ParamPoint &to, const ParamPoint &from,
                                   const ParamPoint &grad_at_from,
                                   const MHConfig &cfg) {
  if (!(cfg.xi > 0.0))
    throw InvalidArgument("proposal density needs xi > 0");
  detail::require(to.depth() == from.depth() &&
                      grad_at_from.depth() == from.depth(),
                  "angle vectors have different depths");
  const double log_norm = -std::log(cfg.xi * std::sqrt(2.0 * std::numbers::pi));
  double acc = 0.0;
  auto term = [&](double t, double f, double g) {
    const double z = (f - t - cfg.eta * g) / cfg.xi;
    acc += log_norm - 0.5 * z * z;
  };
  for (std::size_t k = 0; k < from.depth(); ++k) {
    term(to.gammas[k], from.gammas[k], grad_at_from.gammas[k]);
    term(to.betas[k], from.betas[k], grad_at_from.betas[k]);
  }
  return acc;
}

/// min(1, P(cand) G(curr | cand) / (P(curr) G(cand | curr))).
inline double accept_rate(double curr_loss, double cand_loss,
                          double log_g_forward, double log_g_reverse,
                          double alpha) {
  if (std::isnan(curr_loss) || std::isnan(cand_loss) ||
      std::isnan(log_g_forward) || std::isnan(log_g_reverse) ||
      std::isnan(alpha))
    throw InvalidArgument("accept_rate received NaN");
  const double log_ratio = log_target(cand_loss, alpha) -
                           log_target(curr_loss, alpha) + log_g_reverse -
                           log_g_forward;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

/// Runs cfg.t_max Metropolis-Hastings epochs with gradient-shifted Gaussian
/// proposals and returns the chain with the lowest-loss point visited (the
/// start point counts). With xi == 0 proposals are deterministic and the
/// proposal-density correction is omitted.
inline ChainState run_mh(const LossEvaluator &f, const ParamPoint &theta0,
                         const MHConfig &cfg, bool keep_trace = true) {
  cfg.validate();
  Rng rng(cfg.seed);
  ChainState st;
  st.current = theta0;
  auto cur = f(theta0);
  st.current_loss = cur.loss;
  st.best = theta0;
  st.best_loss = cur.loss;
  if (keep_trace)
    st.trace.reserve(cfg.t_max);

  for (std::size_t t = 1; t <= cfg.t_max; ++t) {
    auto cand = propose(st.current, cur.grad, cfg, rng);
    Evaluation ce;
    try {
      ce = f(cand);
    } catch (const std::exception &e) {
      throw Error("loss evaluation failed at epoch " + std::to_string(t) +
                  ": " + e.what());
    }
    double fwd = 0.0, rev = 0.0;
    if (cfg.xi > 0.0) {
      fwd = log_proposal_density(cand, st.current, cur.grad, cfg);
      rev = log_proposal_density(st.current, cand, ce.grad, cfg);
    }
    const double a = accept_rate(cur.loss, ce.loss, fwd, rev, cfg.alpha);
    const double u = rng.uniform();
    const bool accepted = u <= a;
    if (accepted) {
      st.current = std::move(cand);
      cur = std::move(ce);
      st.current_loss = cur.loss;
      ++st.accept_count;
      if (cur.loss < st.best_loss) {
        st.best = st.current;
        st.best_loss = cur.loss;
      }
    }
    st.epoch = t;
    if (keep_trace)
      st.trace.push_back(ChainStep{t, cur.loss, accepted});
  }
  return st;
}

struct DescentSettings {
  double eta = 0.01;
  std::size_t iters = 200;
};

enum class Phase { mh, descent };

inline std::string to_string(Phase p) { return p == Phase::mh ? "mh" : "descent"; }

struct TraceEntry {
  std::size_t epoch = 0;
  Phase phase = Phase::mh;
  double loss = 0.0;
  bool accepted = true;
};

struct WarmStartResult {
  ParamPoint params;
  double loss = 0.0;
  ParamPoint mh_best; // descent start point
  double mh_best_loss = 0.0;
  std::size_t mh_accepts = 0;
  std::vector<double> descent_trace; // descent losses, start point first
  std::vector<TraceEntry> trace;     // both phases, epochs numbered globally
};

/// Metropolis-Hastings warm start followed by plain gradient descent from the
/// best chain point. cfg.t_max == 0 disables the first phase, which makes
/// this identical to cold-start descent from theta0.
inline WarmStartResult warm_started_qaoa(const LossEvaluator &f,
                                         const ParamPoint &theta0,
                                         const MHConfig &cfg,
                                         const DescentSettings &descent) {
  WarmStartResult out;
  out.mh_best = theta0;
  std::size_t epoch = 0;
  if (cfg.t_max > 0) {
    auto chain = run_mh(f, theta0, cfg);
    out.mh_best = chain.best;
    out.mh_best_loss = chain.best_loss;
    out.mh_accepts = chain.accept_count;
    for (const auto &s : chain.trace)
      out.trace.push_back(TraceEntry{s.epoch, Phase::mh, s.loss, s.accepted});
    epoch = chain.epoch;
  }
  auto d = gradient_descent(f, out.mh_best, descent.eta, descent.iters);
  if (cfg.t_max == 0)
    out.mh_best_loss = d.trace.front();
  for (double loss : d.trace)
    out.trace.push_back(TraceEntry{++epoch, Phase::descent, loss, true});
  out.params = std::move(d.params);
  out.loss = d.loss;
  out.descent_trace = std::move(d.trace);
  return out;
}

inline WarmStartResult warm_started_qaoa(const IsingModel &m, std::size_t depth,
                                         LossMode mode, const ParamPoint &theta0,
                                         const MHConfig &cfg,
                                         const DescentSettings &descent) {
  const LossProvider provider(m, depth, mode);
  return warm_started_qaoa(provider.evaluator(), theta0, cfg, descent);
}

/// Angles reduced to gamma in [0, 2 pi), beta in [0, pi) for reporting.
inline ParamPoint wrap_for_display(ParamPoint p) {
  auto wrap = [](double x, double period) {
    double r = std::fmod(x, period);
    return r < 0 ? r + period : r;
  };
  for (auto &g : p.gammas)
    g = wrap(g, 2 * std::numbers::pi);
  for (auto &b : p.betas)
    b = wrap(b, std::numbers::pi);
  return p;
}

} // namespace ccqaoa
