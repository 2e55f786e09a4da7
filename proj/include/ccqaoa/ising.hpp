#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccqaoa/error.hpp"
#include "ccqaoa/graph.hpp"

namespace ccqaoa {

/// Largest spin count for exhaustive enumeration of energies.
inline constexpr std::size_t kMaxBruteForceSpins = 24;
/// Largest spin count for per-level spectrum bucketing.
inline constexpr std::size_t kMaxSpectrumSpins = 20;
/// H_b values closer than this are one eigenvalue level.
inline constexpr double kLevelTolerance = 1e-9;

/// Value of the "convention" field in serialized models.
inline constexpr const char *kIsingConvention = "eq19-minus";

struct Coupling {
  std::size_t i = 0; // i < j
  std::size_t j = 0;
  double value = 0.0;

  friend bool operator==(const Coupling &, const Coupling &) = default;
};

/// Diagonal Ising Hamiltonian
///
///   H(z) = -sum_{i<j} J_ij z_i z_j - sum_i h_i z_i + c,   z in {-1,+1}^n.
///
/// Every model in the library is stored in this minus convention. Couplings
/// are kept sorted by (i, j), one entry per pair.
class IsingModel {
public:
  IsingModel() = default;

  explicit IsingModel(std::size_t n) : n_(n), fields_(n, 0.0) {}

  IsingModel(std::size_t n, std::vector<Coupling> couplings,
             std::vector<double> fields, double constant = 0.0)
      : n_(n), fields_(std::move(fields)), constant_(constant) {
    detail::require(fields_.size() == n_,
                    "field vector length " + std::to_string(fields_.size()) +
                        " does not match spin count " + std::to_string(n_));
    for (const auto &c : couplings)
      add_coupling(c.i, c.j, c.value);
  }

  std::size_t num_spins() const { return n_; }
  const std::vector<Coupling> &couplings() const { return couplings_; }
  const std::vector<double> &fields() const { return fields_; }
  double constant() const { return constant_; }

  /// Adds `value` to J_ij (creating the pair if needed).
  void add_coupling(std::size_t i, std::size_t j, double value) {
    detail::require(i < n_ && j < n_, "coupling index out of range");
    detail::require(i != j, "self-coupling on spin " + std::to_string(i));
    if (i > j)
      std::swap(i, j);
    auto it = std::lower_bound(
        couplings_.begin(), couplings_.end(), std::pair{i, j},
        [](const Coupling &c, const std::pair<std::size_t, std::size_t> &k) {
          return std::pair{c.i, c.j} < k;
        });
    if (it != couplings_.end() && it->i == i && it->j == j)
      it->value += value;
    else
      couplings_.insert(it, Coupling{i, j, value});
  }

  void add_field(std::size_t i, double value) {
    detail::require(i < n_, "field index out of range");
    fields_[i] += value;
  }

  void add_constant(double value) { constant_ += value; }

  /// J_ij, or 0 when the pair is not stored.
  double coupling(std::size_t i, std::size_t j) const {
    if (i > j)
      std::swap(i, j);
    for (const auto &c : couplings_)
      if (c.i == i && c.j == j)
        return c.value;
    return 0.0;
  }

  /// Drops couplings that are exactly zero.
  void prune_zero_couplings() {
    std::erase_if(couplings_, [](const Coupling &c) { return c.value == 0.0; });
  }

  /// True when all nonzero couplings share one value.
  bool is_uniform_coupling() const {
    std::optional<double> first;
    for (const auto &c : couplings_) {
      if (c.value == 0.0)
        continue;
      if (!first)
        first = c.value;
      else if (std::abs(c.value - *first) >
               1e-12 * std::max(1.0, std::abs(*first)))
        return false;
    }
    return true;
  }

  /// The shared coupling value J (0 for a model without couplings).
  double uniform_coupling() const {
    if (!is_uniform_coupling())
      throw ScopeError("model couplings are not uniform");
    for (const auto &c : couplings_)
      if (c.value != 0.0)
        return c.value;
    return 0.0;
  }

  friend bool operator==(const IsingModel &, const IsingModel &) = default;

private:
  std::size_t n_ = 0;
  std::vector<Coupling> couplings_;
  std::vector<double> fields_;
  double constant_ = 0.0;
};

/// Assignment z in {-1,+1}^n.
///
/// Repo-wide encoding: spin -1 <=> bit 1 <=> vertex in the selected set;
/// spin +1 <=> bit 0 <=> vertex outside it. Basis index k has bit i equal to
/// the bit of spin i (little-endian).
class SpinConfig {
public:
  SpinConfig() = default;

  explicit SpinConfig(std::vector<int> spins) : spins_(std::move(spins)) {
    for (int s : spins_)
      detail::require(s == 1 || s == -1, "spins must be +1 or -1");
  }

  static SpinConfig from_index(std::uint64_t index, std::size_t n) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i)
      s[i] = ((index >> i) & 1U) ? -1 : 1;
    return SpinConfig(std::move(s));
  }

  /// Character i is the bit of spin i ('1' for spin -1).
  static SpinConfig from_bitstring(const std::string &bits) {
    std::vector<int> s;
    s.reserve(bits.size());
    for (char ch : bits) {
      detail::require(ch == '0' || ch == '1', "bitstring must contain 0/1 only");
      s.push_back(ch == '1' ? -1 : 1);
    }
    return SpinConfig(std::move(s));
  }

  std::size_t size() const { return spins_.size(); }
  int operator[](std::size_t i) const { return spins_[i]; }
  const std::vector<int> &spins() const { return spins_; }

  std::uint64_t to_index() const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < spins_.size(); ++i)
      if (spins_[i] == -1)
        k |= std::uint64_t{1} << i;
    return k;
  }

  std::string to_bitstring() const {
    std::string out;
    for (int s : spins_)
      out.push_back(s == -1 ? '1' : '0');
    return out;
  }

  /// Vertices whose spin is -1.
  std::vector<Vertex> down_set() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < spins_.size(); ++i)
      if (spins_[i] == -1)
        out.push_back(i);
    return out;
  }

  friend bool operator==(const SpinConfig &, const SpinConfig &) = default;

private:
  std::vector<int> spins_;
};

namespace detail {

template <typename SpinAt>
double evaluate_energy(const IsingModel &m, SpinAt spin) {
  double acc = 0.0;
  for (const auto &c : m.couplings())
    acc -= c.value * spin(c.i) * spin(c.j);
  const auto &h = m.fields();
  for (std::size_t i = 0; i < h.size(); ++i)
    acc -= h[i] * spin(i);
  return acc + m.constant();
}

inline void check_enumerable(std::size_t n, std::size_t limit,
                             const char *what) {
  if (n > limit)
    throw SizeLimitError(std::string(what) + " supports at most " +
                         std::to_string(limit) + " spins, got " +
                         std::to_string(n));
}

} // namespace detail

inline double energy(const IsingModel &m, const SpinConfig &z) {
  detail::require(z.size() == m.num_spins(),
                  "configuration has " + std::to_string(z.size()) +
                      " spins, model has " + std::to_string(m.num_spins()));
  return detail::evaluate_energy(
      m, [&](std::size_t i) { return static_cast<double>(z[i]); });
}

/// Energy of basis state `index` (bit i set <=> spin i = -1).
inline double energy_at(const IsingModel &m, std::uint64_t index) {
  return detail::evaluate_energy(m, [index](std::size_t i) {
    return ((index >> i) & 1U) ? -1.0 : 1.0;
  });
}

/// Energies of all 2^n basis states, indexed little-endian.
inline std::vector<double> energy_table(const IsingModel &m) {
  detail::check_enumerable(m.num_spins(), kMaxBruteForceSpins, "energy_table");
  const std::uint64_t dim = std::uint64_t{1} << m.num_spins();
  std::vector<double> table(dim);
  for (std::uint64_t k = 0; k < dim; ++k)
    table[k] = energy_at(m, k);
  return table;
}

struct GroundStates {
  std::size_t n = 0;
  double min_energy = 0.0;
  std::vector<std::uint64_t> indices; // ascending

  std::vector<SpinConfig> configs() const {
    std::vector<SpinConfig> out;
    out.reserve(indices.size());
    for (auto k : indices)
      out.push_back(SpinConfig::from_index(k, n));
    return out;
  }
};

/// Exhaustive minimum with the exact set of minimizers (no tie tolerance).
inline GroundStates brute_force(const IsingModel &m) {
  detail::check_enumerable(m.num_spins(), kMaxBruteForceSpins, "brute_force");
  GroundStates out;
  out.n = m.num_spins();
  out.min_energy = std::numeric_limits<double>::infinity();
  const std::uint64_t dim = std::uint64_t{1} << m.num_spins();
  for (std::uint64_t k = 0; k < dim; ++k) {
    const double e = energy_at(m, k);
    if (e < out.min_energy) {
      out.min_energy = e;
      out.indices.assign(1, k);
    } else if (e == out.min_energy) {
      out.indices.push_back(k);
    }
  }
  return out;
}

/// Shifts the constant so the minimum energy is exactly zero. When
/// `known_minimum` is absent the minimum is found by enumeration.
inline IsingModel shift_psd(IsingModel m,
                            std::optional<double> known_minimum = std::nullopt) {
  const double v0 = known_minimum ? *known_minimum : brute_force(m).min_energy;
  m.add_constant(-v0);
  return m;
}

/// a * h_a + b * h_b, coefficient by coefficient.
inline IsingModel combine(const IsingModel &h_a, const IsingModel &h_b,
                          double a, double b) {
  detail::require(h_a.num_spins() == h_b.num_spins(),
                  "combine needs models of equal size");
  detail::require(a > 0.0 && b > 0.0, "combine needs a > 0 and b > 0");
  IsingModel out(h_a.num_spins());
  for (const auto &c : h_a.couplings())
    out.add_coupling(c.i, c.j, a * c.value);
  for (const auto &c : h_b.couplings())
    out.add_coupling(c.i, c.j, b * c.value);
  for (std::size_t i = 0; i < h_a.num_spins(); ++i)
    out.add_field(i, a * h_a.fields()[i] + b * h_b.fields()[i]);
  out.add_constant(a * h_a.constant() + b * h_b.constant());
  out.prune_zero_couplings();
  return out;
}

// ---------------------------------------------------------------------------
// Problem encodings
// ---------------------------------------------------------------------------

enum class Problem { mvc, mwvc, mis };

inline std::string to_string(Problem p) {
  switch (p) {
  case Problem::mvc:
    return "mvc";
  case Problem::mwvc:
    return "mwvc";
  case Problem::mis:
    return "mis";
  }
  return "?";
}

inline Problem parse_problem(const std::string &s) {
  if (s == "mvc")
    return Problem::mvc;
  if (s == "mwvc")
    return Problem::mwvc;
  if (s == "mis")
    return Problem::mis;
  throw InvalidArgument("unknown problem '" + s + "' (expected mvc|mwvc|mis)");
}

/// Constraint Hamiltonian H_a and objective Hamiltonian H_b of a
/// constrained problem, with all identity terms kept.
struct HamiltonianPair {
  IsingModel constraint;
  IsingModel objective;
};

/// Number of uncovered edges: sum over edges of (z_i z_j + z_i + z_j + 1) / 4.
inline IsingModel uncovered_edges_hamiltonian(const Graph &g) {
  IsingModel m(g.num_vertices());
  for (const auto &[u, v] : g.edges()) {
    m.add_coupling(u, v, -0.25);
    m.add_field(u, -0.25);
    m.add_field(v, -0.25);
    m.add_constant(0.25);
  }
  return m;
}

/// Edges with both endpoints selected: sum of (z_i z_j - z_i - z_j + 1) / 4.
inline IsingModel occupied_edges_hamiltonian(const Graph &g) {
  IsingModel m(g.num_vertices());
  for (const auto &[u, v] : g.edges()) {
    m.add_coupling(u, v, -0.25);
    m.add_field(u, 0.25);
    m.add_field(v, 0.25);
    m.add_constant(0.25);
  }
  return m;
}

/// Total weight of selected vertices: sum of w_i (1 - z_i) / 2.
inline IsingModel selected_weight_hamiltonian(std::size_t n,
                                              std::span<const double> w) {
  IsingModel m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.add_field(i, 0.5 * w[i]);
    m.add_constant(0.5 * w[i]);
  }
  return m;
}

/// Number of unselected vertices: n - sum of (1 - z_i) / 2.
inline IsingModel unselected_count_hamiltonian(std::size_t n) {
  IsingModel m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.add_field(i, -0.5);
    m.add_constant(0.5);
  }
  return m;
}

inline HamiltonianPair problem_pair(Problem problem, const Graph &g) {
  const auto n = g.num_vertices();
  switch (problem) {
  case Problem::mvc: {
    const std::vector<double> ones(n, 1.0);
    return {uncovered_edges_hamiltonian(g), selected_weight_hamiltonian(n, ones)};
  }
  case Problem::mwvc:
    return {uncovered_edges_hamiltonian(g),
            selected_weight_hamiltonian(n, g.weights())};
  case Problem::mis:
    return {occupied_edges_hamiltonian(g), unselected_count_hamiltonian(n)};
  }
  throw InvalidArgument("unknown problem");
}

/// What a builder does when (a, b) violate the sufficient condition.
enum class CoefficientCheck { reject, warn };

namespace detail {

inline void enforce_condition(bool ok, const std::string &message,
                              CoefficientCheck mode) {
  if (ok)
    return;
  if (mode == CoefficientCheck::reject)
    throw InvalidArgument(message);
  std::clog << "warning: " << message << '\n';
}

// Compiled form shared by the three problems: J = -a/4 on every edge,
// h_i = field(i), no constant.
template <typename FieldFn>
IsingModel compile_edges(const Graph &g, double a, FieldFn field) {
  IsingModel m(g.num_vertices());
  for (const auto &[u, v] : g.edges())
    m.add_coupling(u, v, -a / 4.0);
  for (Vertex i = 0; i < g.num_vertices(); ++i)
    m.add_field(i, field(i));
  return m;
}

} // namespace detail

/// Minimum vertex cover: J_ij = -a/4 per edge, h_i = b/2 - (a/4) d_i.
/// The identity term is dropped. Requires a > b > 0.
inline IsingModel build_mvc(const Graph &g, double a, double b,
                            CoefficientCheck mode = CoefficientCheck::reject) {
  detail::enforce_condition(a > b && b > 0.0,
                            "MVC encoding requires a > b > 0", mode);
  return detail::compile_edges(g, a, [&](Vertex i) {
    return b / 2.0 - a / 4.0 * static_cast<double>(g.degree(i));
  });
}

/// Minimum weight vertex cover: h_i = (b/2) w_i - (a/4) d_i.
/// Requires a > (sum of weights) * b > 0.
inline IsingModel build_mwvc(const Graph &g, double a, double b,
                             CoefficientCheck mode = CoefficientCheck::reject) {
  const auto &w = g.weights();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  detail::enforce_condition(a > total * b && total * b > 0.0,
                            "MWVC encoding requires a > (sum of weights) * b > 0",
                            mode);
  return detail::compile_edges(g, a, [&](Vertex i) {
    return b / 2.0 * w[i] - a / 4.0 * static_cast<double>(g.degree(i));
  });
}

/// Maximum independent set: h_i = (a/4) d_i - b/2. Requires a > b > 0.
inline IsingModel build_mis(const Graph &g, double a, double b,
                            CoefficientCheck mode = CoefficientCheck::reject) {
  detail::enforce_condition(a > b && b > 0.0,
                            "MIS encoding requires a > b > 0", mode);
  return detail::compile_edges(g, a, [&](Vertex i) {
    return a / 4.0 * static_cast<double>(g.degree(i)) - b / 2.0;
  });
}

inline IsingModel build_problem(Problem problem, const Graph &g, double a,
                                double b,
                                CoefficientCheck mode = CoefficientCheck::reject) {
  switch (problem) {
  case Problem::mvc:
    return build_mvc(g, a, b, mode);
  case Problem::mwvc:
    return build_mwvc(g, a, b, mode);
  case Problem::mis:
    return build_mis(g, a, b, mode);
  }
  throw InvalidArgument("unknown problem");
}

/// Vertex set encoded by z. For all three encodings the selected vertices
/// (cover or independent set) are the spin -1 vertices.
inline std::vector<Vertex> decode_vertex_set(Problem, const SpinConfig &z) {
  return z.down_set();
}

// ---------------------------------------------------------------------------
// Spectral analysis of a (constraint, objective) pair
// ---------------------------------------------------------------------------

struct SpectrumReport {
  std::vector<double> levels;      // distinct H_b values w_0 < w_1 < ...
  std::vector<double> level_minima; // e_i: min of H_a within level i
  double v0 = 0.0;                  // global minimum of H_a
  std::size_t o = 0;                // first level with e_o == v0
  double upper = 0.0;               // U = max_{i<o} (w_o - w_i)
  double lower = 0.0;               // L = min_{i<o} (e_i - v0)
  bool constraint_psd = true;       // v0 >= 0

  /// U / L, the smallest admissible a / b. Absent when o == 0.
  std::optional<double> feasible_threshold() const {
    if (o == 0)
      return std::nullopt;
    return upper / lower;
  }
};

namespace detail {

inline bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= kLevelTolerance * std::max(1.0, std::abs(y));
}

} // namespace detail

inline SpectrumReport spectrum_analysis(const IsingModel &h_a,
                                        const IsingModel &h_b) {
  detail::require(h_a.num_spins() == h_b.num_spins(),
                  "spectrum_analysis needs models of equal size");
  detail::check_enumerable(h_a.num_spins(), kMaxSpectrumSpins,
                           "spectrum_analysis");
  const auto ea = energy_table(h_a);
  const auto eb = energy_table(h_b);

  std::vector<std::uint64_t> order(eb.size());
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto x, auto y) { return eb[x] < eb[y]; });

  SpectrumReport r;
  r.v0 = *std::min_element(ea.begin(), ea.end());
  r.constraint_psd = r.v0 >= -kLevelTolerance;
  for (auto k : order) {
    if (r.levels.empty() || !detail::nearly_equal(eb[k], r.levels.back())) {
      r.levels.push_back(eb[k]);
      r.level_minima.push_back(ea[k]);
    } else {
      r.level_minima.back() = std::min(r.level_minima.back(), ea[k]);
    }
  }
  while (!detail::nearly_equal(r.level_minima[r.o], r.v0))
    ++r.o;
  if (r.o > 0) {
    r.upper = r.levels[r.o] - r.levels[0];
    r.lower = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.o; ++i)
      r.lower = std::min(r.lower, r.level_minima[i] - r.v0);
  }
  return r;
}

struct Theorem1Violation {
  std::uint64_t index = 0;
  SpinConfig config;
  double constraint_energy = 0.0;
  double objective_energy = 0.0;
  double combined_energy = 0.0;
  // "infeasible-ground-state": a combined ground state that is not an
  // optimal feasible state. "missing-optimal-state": an optimal feasible
  // state that is not a combined ground state.
  std::string kind;
};

/// Result of checking that a * H_a + b * H_b encodes the constrained problem.
struct Theorem1Check {
  std::size_t n = 0;
  bool holds = false;
  double combined_minimum = 0.0;
  std::vector<std::uint64_t> combined_ground_states;
  std::vector<std::uint64_t> optimal_feasible_states;
  std::vector<Theorem1Violation> violations;
};

/// Exhaustively checks that the ground-state set of a * H_a + b * H_b equals
/// the set of H_a ground states that minimize H_b among H_a ground states.
/// Degenerate optima are allowed; the two sets must match exactly.
inline Theorem1Check verify_theorem1(const IsingModel &h_a,
                                     const IsingModel &h_b, double a,
                                     double b) {
  detail::require(h_a.num_spins() == h_b.num_spins(),
                  "verify_theorem1 needs models of equal size");
  detail::check_enumerable(h_a.num_spins(), kMaxSpectrumSpins,
                           "verify_theorem1");
  const auto ea = energy_table(h_a);
  const auto eb = energy_table(h_b);
  const std::size_t dim = ea.size();

  std::vector<double> ep(dim);
  for (std::size_t k = 0; k < dim; ++k)
    ep[k] = a * ea[k] + b * eb[k];

  const double v0 = *std::min_element(ea.begin(), ea.end());
  double best_feasible = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dim; ++k)
    if (detail::nearly_equal(ea[k], v0))
      best_feasible = std::min(best_feasible, eb[k]);
  const double pmin = *std::min_element(ep.begin(), ep.end());

  Theorem1Check out;
  out.n = h_a.num_spins();
  out.combined_minimum = pmin;
  for (std::size_t k = 0; k < dim; ++k) {
    const bool ground = detail::nearly_equal(ep[k], pmin);
    const bool optimal = detail::nearly_equal(ea[k], v0) &&
                         detail::nearly_equal(eb[k], best_feasible);
    if (ground)
      out.combined_ground_states.push_back(k);
    if (optimal)
      out.optimal_feasible_states.push_back(k);
    if (ground != optimal)
      out.violations.push_back(Theorem1Violation{
          k, SpinConfig::from_index(k, h_a.num_spins()), ea[k], eb[k], ep[k],
          ground ? "infeasible-ground-state" : "missing-optimal-state"});
  }
  out.holds = out.violations.empty();
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json &j, const IsingModel &m) {
  auto couplings = nlohmann::json::array();
  for (const auto &c : m.couplings())
    couplings.push_back({c.i, c.j, c.value});
  j = nlohmann::json{{"n", m.num_spins()},
                     {"convention", kIsingConvention},
                     {"couplings", std::move(couplings)},
                     {"fields", m.fields()},
                     {"constant", m.constant()}};
}

inline void from_json(const nlohmann::json &j, IsingModel &m) {
  try {
    if (j.contains("convention") &&
        j.at("convention").get<std::string>() != kIsingConvention)
      throw InvalidArgument("unsupported Ising sign convention '" +
                            j.at("convention").get<std::string>() + "'");
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Coupling> couplings;
    for (const auto &c : j.at("couplings")) {
      detail::require(c.is_array() && c.size() == 3,
                      "each coupling must be [i, j, J]");
      couplings.push_back(Coupling{c[0].get<std::size_t>(),
                                   c[1].get<std::size_t>(),
                                   c[2].get<double>()});
    }
    auto fields = j.contains("fields") ? j.at("fields").get<std::vector<double>>()
                                       : std::vector<double>(n, 0.0);
    const double constant = j.value("constant", 0.0);
    m = IsingModel(n, std::move(couplings), std::move(fields), constant);
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(std::string("malformed Ising model JSON: ") +
                          e.what());
  }
}

inline void to_json(nlohmann::json &j, const SpectrumReport &r) {
  j = nlohmann::json{{"levels", r.levels},
                     {"level_minima", r.level_minima},
                     {"v0", r.v0},
                     {"o", r.o},
                     {"U", r.upper},
                     {"L", r.lower},
                     {"constraint_psd", r.constraint_psd}};
  if (auto t = r.feasible_threshold())
    j["feasible_threshold"] = *t;
  else
    j["feasible_threshold"] = nullptr;
}

inline void to_json(nlohmann::json &j, const Theorem1Check &c) {
  auto bitstrings = [&](const std::vector<std::uint64_t> &ks) {
    auto out = nlohmann::json::array();
    for (auto k : ks)
      out.push_back(SpinConfig::from_index(k, c.n).to_bitstring());
    return out;
  };
  j = nlohmann::json{{"holds", c.holds},
                     {"combined_minimum", c.combined_minimum},
                     {"combined_ground_states", bitstrings(c.combined_ground_states)},
                     {"optimal_feasible_states", bitstrings(c.optimal_feasible_states)},
                     {"violations", nlohmann::json::array()}};
  for (const auto &v : c.violations)
    j["violations"].push_back({{"bits", v.config.to_bitstring()},
                               {"kind", v.kind},
                               {"constraint_energy", v.constraint_energy},
                               {"objective_energy", v.objective_energy},
                               {"combined_energy", v.combined_energy}});
}

} // namespace ccqaoa
