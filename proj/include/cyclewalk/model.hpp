#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "cyclewalk/errors.hpp"

namespace cyclewalk {

using complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Chirality of the internal coin degree of freedom.
enum class chirality { left, right };

/// One-parameter real coin [[a, b], [b, -a]] with a^2 + b^2 = 1 and
/// a, b in (0, 1).
struct coin_params {
  double a{};
  double b{};

  friend bool operator==(const coin_params&, const coin_params&) = default;
};

/// Localized initial condition p0|x0,L> + q0 e^{i phi}|x0,R>.
struct initial_condition {
  std::size_t x0{};
  double p0{};
  double q0{};
  double phi{};

  friend bool operator==(const initial_condition&,
                         const initial_condition&) = default;
};

/// A fully validated walk instance on the n-cycle.
struct walk_config {
  std::size_t n{};
  coin_params coin;
  initial_condition init;

  friend bool operator==(const walk_config&, const walk_config&) = default;
};

/// Unchecked parameter record, as read from a config file or CLI flags.
struct raw_config {
  long long n{};
  double a{};
  double b{};
  long long x0{};
  double p0{};
  double q0{};
  double phi{};
};

/// Reduces a phase angle into [-pi, pi]. Values already in range are
/// returned unchanged, so validation is idempotent.
inline double normalize_phase(double phi) {
  return std::remainder(phi, two_pi);
}

inline walk_config validate_config(const raw_config& raw) {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(raw.a) || !finite(raw.b) || !finite(raw.p0) ||
      !finite(raw.q0) || !finite(raw.phi)) {
    throw constraint_violation("non-finite parameter in config");
  }
  if (raw.n < 3) throw degenerate_cycle(raw.n);
  if (!(raw.a > 0.0 && raw.a < 1.0)) {
    throw constraint_violation("coin parameter a outside (0, 1)");
  }
  if (!(raw.b > 0.0 && raw.b < 1.0)) {
    throw constraint_violation("coin parameter b outside (0, 1)");
  }
  if (std::abs(raw.a * raw.a + raw.b * raw.b - 1.0) > 1e-12) {
    throw constraint_violation("coin not normalized: a^2 + b^2 != 1");
  }
  if (raw.x0 < 0 || raw.x0 >= raw.n) {
    throw constraint_violation("start node x0 outside [0, n)");
  }
  if (!(raw.p0 > 0.0 && raw.p0 < 1.0)) {
    throw constraint_violation("initial weight p0 outside (0, 1)");
  }
  if (!(raw.q0 > 0.0 && raw.q0 < 1.0)) {
    throw constraint_violation("initial weight q0 outside (0, 1)");
  }
  if (std::abs(raw.p0 * raw.p0 + raw.q0 * raw.q0 - 1.0) > 1e-12) {
    throw constraint_violation("initial state not normalized: p0^2 + q0^2 != 1");
  }
  walk_config cfg;
  cfg.n = static_cast<std::size_t>(raw.n);
  cfg.coin = {raw.a, raw.b};
  cfg.init = {static_cast<std::size_t>(raw.x0), raw.p0, raw.q0,
              normalize_phase(raw.phi)};
  return cfg;
}

/// Inverse of validate_config's packing, useful for re-validation and for
/// layering flag overrides on top of an existing config.
inline raw_config as_raw(const walk_config& cfg) {
  return {static_cast<long long>(cfg.n),
          cfg.coin.a,
          cfg.coin.b,
          static_cast<long long>(cfg.init.x0),
          cfg.init.p0,
          cfg.init.q0,
          cfg.init.phi};
}

// Amplitude layout: component (x, L) lives at index x, component (x, R) at
// index n + x. Keeping the two chirality blocks contiguous makes the step
// kernel two independent stride-1 passes.
inline std::size_t amp_index(std::size_t n, std::size_t x, chirality c) {
  return c == chirality::left ? x : n + x;
}

inline std::pair<std::size_t, chirality> amp_position(std::size_t n,
                                                      std::size_t index) {
  return index < n ? std::pair{index, chirality::left}
                   : std::pair{index - n, chirality::right};
}

/// State vector of the walk: 2n complex amplitudes over (node, chirality).
struct walk_state {
  std::size_t n{};
  std::vector<complex> amps;

  static walk_state zero(std::size_t n) {
    return {n, std::vector<complex>(2 * n)};
  }

  complex& at(std::size_t x, chirality c) { return amps[amp_index(n, x, c)]; }
  complex at(std::size_t x, chirality c) const {
    return amps[amp_index(n, x, c)];
  }

  double norm() const {
    double s = 0.0;
    for (const complex& a : amps) s += std::norm(a);
    return std::sqrt(s);
  }
};

/// <lhs|rhs> with the physics convention (conjugate-linear in lhs).
inline complex inner_product(const walk_state& lhs, const walk_state& rhs) {
  complex acc{};
  for (std::size_t i = 0; i < lhs.amps.size(); ++i) {
    acc += std::conj(lhs.amps[i]) * rhs.amps[i];
  }
  return acc;
}

inline walk_state localized_state(const walk_config& cfg) {
  walk_state st = walk_state::zero(cfg.n);
  st.at(cfg.init.x0, chirality::left) = cfg.init.p0;
  st.at(cfg.init.x0, chirality::right) = std::polar(cfg.init.q0, cfg.init.phi);
  return st;
}

/// Probability over the cyclic distance d = (x - x0) mod n.
struct distance_distribution {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t d) const { return probs[d]; }
};

/// Checks and packs a probability vector. Entries in [-1e-14, 0) are
/// clamped to zero (harmless sign noise from cancellation); anything more
/// negative, or a total straying from 1, indicates a real defect upstream.
inline distance_distribution make_distance_distribution(
    std::vector<double> probs) {
  double sum = 0.0;
  for (double& p : probs) {
    if (p < -1e-14) {
      throw constraint_violation("negative probability entry");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw constraint_violation("probabilities do not sum to 1");
  }
  return {std::move(probs)};
}

}  // namespace cyclewalk
