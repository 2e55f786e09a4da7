#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccqaoa/error.hpp"
#include "ccqaoa/ising.hpp"
#include "ccqaoa/rng.hpp"

namespace ccqaoa {

using cplx = std::complex<double>;

/// Largest qubit count for dense simulation.
inline constexpr std::size_t kMaxSimQubits = 24;

/// QAOA angles of depth p: phase angles gammas, mixer angles betas.
struct ParamPoint {
  std::vector<double> gammas;
  std::vector<double> betas;

  ParamPoint() = default;
  ParamPoint(std::vector<double> g, std::vector<double> b)
      : gammas(std::move(g)), betas(std::move(b)) {
    detail::require(gammas.size() == betas.size(),
                    "gamma and beta vectors must have equal length");
  }
  static ParamPoint zeros(std::size_t p) {
    return ParamPoint(std::vector<double>(p, 0.0), std::vector<double>(p, 0.0));
  }
  /// Inverse of flatten(): first half gammas, second half betas.
  static ParamPoint unflatten(std::span<const double> x) {
    detail::require(x.size() % 2 == 0, "flattened angle vector has odd length");
    const auto p = x.size() / 2;
    return ParamPoint(std::vector<double>(x.begin(), x.begin() + p),
                      std::vector<double>(x.begin() + p, x.end()));
  }

  std::size_t depth() const { return gammas.size(); }

  std::vector<double> flatten() const {
    std::vector<double> x(gammas);
    x.insert(x.end(), betas.begin(), betas.end());
    return x;
  }

  friend bool operator==(const ParamPoint &, const ParamPoint &) = default;
};

/// Diagonal of a model's Hamiltonian, computed once and shared by the phase
/// operator and the energy expectation.
class DiagonalHamiltonian {
public:
  explicit DiagonalHamiltonian(const IsingModel &m) : n_(m.num_spins()) {
    if (n_ > kMaxSimQubits)
      throw SizeLimitError("simulation supports at most " +
                           std::to_string(kMaxSimQubits) + " qubits, got " +
                           std::to_string(n_));
    energies_ = energy_table(m);
  }

  std::size_t num_qubits() const { return n_; }
  const std::vector<double> &energies() const { return energies_; }

private:
  std::size_t n_;
  std::vector<double> energies_;
};

/// Dense n-qubit state; amplitude k belongs to basis state k with qubit i
/// stored in bit i (bit 0 <=> spin +1).
class QuantumState {
public:
  QuantumState() = default;
  QuantumState(std::size_t n, std::vector<cplx> amplitudes)
      : n_(n), amps_(std::move(amplitudes)) {
    detail::require(amps_.size() == (std::size_t{1} << n),
                    "amplitude vector length must be 2^n");
  }

  static QuantumState basis(std::size_t n, std::uint64_t index) {
    std::vector<cplx> a(std::size_t{1} << n);
    detail::require(index < a.size(), "basis index out of range");
    a[index] = 1.0;
    return QuantumState(n, std::move(a));
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<cplx> &amplitudes() const { return amps_; }
  std::vector<cplx> &amplitudes() { return amps_; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_)
      s += std::norm(a);
    return s;
  }

  double probability(std::uint64_t index) const { return std::norm(amps_.at(index)); }

private:
  std::size_t n_ = 0;
  std::vector<cplx> amps_;
};

inline QuantumState prepare_plus(std::size_t n) {
  detail::require(n >= 1, "need at least one qubit");
  if (n > kMaxSimQubits)
    throw SizeLimitError("simulation supports at most " +
                         std::to_string(kMaxSimQubits) + " qubits");
  const std::size_t dim = std::size_t{1} << n;
  return QuantumState(n, std::vector<cplx>(dim, cplx(1.0 / std::sqrt(double(dim)))));
}

/// Multiplies amplitude k by exp(-i gamma E_k).
inline void apply_phase_in_place(QuantumState &s, const DiagonalHamiltonian &h,
                                 double gamma) {
  detail::require(s.num_qubits() == h.num_qubits(),
                  "state and Hamiltonian sizes differ");
  auto &a = s.amplitudes();
  const auto &e = h.energies();
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] *= std::polar(1.0, -gamma * e[k]);
}

inline QuantumState apply_phase(QuantumState s, const DiagonalHamiltonian &h,
                                double gamma) {
  apply_phase_in_place(s, h, gamma);
  return s;
}

inline QuantumState apply_phase(QuantumState s, const IsingModel &m,
                                double gamma) {
  apply_phase_in_place(s, DiagonalHamiltonian(m), gamma);
  return s;
}

/// exp(-i beta sum_q X_q), applied as one X rotation per qubit.
inline void apply_mixer_in_place(QuantumState &s, double beta) {
  const double c = std::cos(beta);
  const cplx ms(0.0, -std::sin(beta));
  auto &a = s.amplitudes();
  for (std::size_t q = 0; q < s.num_qubits(); ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k & bit)
        continue;
      const cplx x0 = a[k];
      const cplx x1 = a[k | bit];
      a[k] = c * x0 + ms * x1;
      a[k | bit] = ms * x0 + c * x1;
    }
  }
}

inline QuantumState apply_mixer(QuantumState s, double beta) {
  apply_mixer_in_place(s, beta);
  return s;
}

/// |+>^n followed by p layers of (phase gamma_k, mixer beta_k).
inline QuantumState ansatz(const DiagonalHamiltonian &h, const ParamPoint &params) {
  auto s = prepare_plus(h.num_qubits());
  for (std::size_t k = 0; k < params.depth(); ++k) {
    apply_phase_in_place(s, h, params.gammas[k]);
    apply_mixer_in_place(s, params.betas[k]);
  }
  return s;
}

inline QuantumState ansatz(const IsingModel &m, const ParamPoint &params) {
  return ansatz(DiagonalHamiltonian(m), params);
}

inline double expectation(const QuantumState &s, const DiagonalHamiltonian &h) {
  detail::require(s.num_qubits() == h.num_qubits(),
                  "state and Hamiltonian sizes differ");
  const auto &a = s.amplitudes();
  const auto &e = h.energies();
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    acc += std::norm(a[k]) * e[k];
  return acc;
}

inline double expectation(const QuantumState &s, const IsingModel &m) {
  return expectation(s, DiagonalHamiltonian(m));
}

/// Expectation of Z_u.
inline double expectation_z(const QuantumState &s, std::size_t u) {
  const auto &a = s.amplitudes();
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    acc += ((k >> u) & 1U) ? -std::norm(a[k]) : std::norm(a[k]);
  return acc;
}

/// Expectation of Z_u Z_v.
inline double expectation_zz(const QuantumState &s, std::size_t u, std::size_t v) {
  const auto &a = s.amplitudes();
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    acc += (((k >> u) ^ (k >> v)) & 1U) ? -std::norm(a[k]) : std::norm(a[k]);
  return acc;
}

/// Total probability on a set of basis states.
inline double solution_probability(const QuantumState &s,
                                   std::span<const std::uint64_t> targets) {
  detail::require(!targets.empty(), "target set must be nonempty");
  double p = 0.0;
  for (auto k : targets)
    p += s.probability(k);
  return p;
}

inline double solution_probability(const QuantumState &s,
                                   const std::vector<SpinConfig> &targets) {
  std::vector<std::uint64_t> idx;
  idx.reserve(targets.size());
  for (const auto &z : targets) {
    detail::require(z.size() == s.num_qubits(), "target has wrong length");
    idx.push_back(z.to_index());
  }
  return solution_probability(s, std::span<const std::uint64_t>(idx));
}

/// `shots` i.i.d. measurement outcomes (basis indices) via inverse-CDF
/// lookup on the cumulative probability table.
inline std::vector<std::uint64_t> sample_indices(const QuantumState &s,
                                                 std::size_t shots,
                                                 std::uint64_t seed) {
  detail::require(shots >= 1, "need at least one shot");
  const auto &a = s.amplitudes();
  std::vector<double> cdf(a.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    cdf[k] = (acc += std::norm(a[k]));
  Rng rng(seed);
  std::vector<std::uint64_t> out(shots);
  for (auto &o : out) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    o = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
        it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
  }
  return out;
}

inline std::vector<SpinConfig> sample(const QuantumState &s, std::size_t shots,
                                      std::uint64_t seed) {
  std::vector<SpinConfig> out;
  out.reserve(shots);
  for (auto k : sample_indices(s, shots, seed))
    out.push_back(SpinConfig::from_index(k, s.num_qubits()));
  return out;
}

} // namespace ccqaoa
