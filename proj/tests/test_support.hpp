#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "cyclewalk/cyclewalk.hpp"

namespace testsup {

inline cyclewalk::coin_params hadamard_coin() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {r, r};
}

/// Coin with a given a; b fixed by normalization.
inline cyclewalk::coin_params coin_with_a(double a) {
  return {a, std::sqrt(1.0 - a * a)};
}

/// Equal-weight initial condition with a quarter-turn relative phase. Yields
/// a symmetric limiting distribution for every coin.
inline cyclewalk::initial_condition quarter_phase_init(std::size_t x0 = 0,
                                                       int phase_sign = +1) {
  const double r = std::numbers::sqrt2 / 2.0;
  return {x0, r, r, phase_sign * std::numbers::pi / 2.0};
}

/// Real-amplitude initial condition (sin, cos of pi/8) that is symmetric for
/// the Hadamard coin specifically.
inline cyclewalk::initial_condition pi_eighth_init(std::size_t x0 = 0) {
  return {x0, std::sin(std::numbers::pi / 8.0),
          std::cos(std::numbers::pi / 8.0), 0.0};
}

/// Unequal weights sqrt((5 -+ sqrt 5)/10) whose symmetric phases for the
/// Hadamard coin are +-pi/3.
inline cyclewalk::initial_condition fifth_weights_init(std::size_t x0 = 0,
                                                       int phase_sign = +1) {
  return {x0, std::sqrt((5.0 - std::sqrt(5.0)) / 10.0),
          std::sqrt((5.0 + std::sqrt(5.0)) / 10.0),
          phase_sign * std::numbers::pi / 3.0};
}

/// Equal weights with no relative phase; asymmetric for every coin.
inline cyclewalk::initial_condition in_phase_init(std::size_t x0 = 0) {
  const double r = std::numbers::sqrt2 / 2.0;
  return {x0, r, r, 0.0};
}

inline cyclewalk::walk_config make_config(std::size_t n,
                                          cyclewalk::coin_params coin,
                                          cyclewalk::initial_condition init) {
  return cyclewalk::validate_config({static_cast<long long>(n), coin.a,
                                     coin.b, static_cast<long long>(init.x0),
                                     init.p0, init.q0, init.phi});
}

inline cyclewalk::coin_params random_coin(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(0.1, 0.9);
  return coin_with_a(dist(rng));
}

inline cyclewalk::initial_condition random_init(std::mt19937& rng,
                                                std::size_t n) {
  std::uniform_real_distribution<double> weight(0.1, 0.9);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  const double p0 = weight(rng);
  return {node(rng), p0, std::sqrt(1.0 - p0 * p0), angle(rng)};
}

inline cyclewalk::walk_state random_unit_state(std::mt19937& rng,
                                               std::size_t n) {
  std::normal_distribution<double> gauss;
  cyclewalk::walk_state st = cyclewalk::walk_state::zero(n);
  for (auto& a : st.amps) a = {gauss(rng), gauss(rng)};
  const double norm = st.norm();
  for (auto& a : st.amps) a /= norm;
  return st;
}

inline Eigen::MatrixXcd to_eigen(const cyclewalk::evolution_matrix& u) {
  const auto d = static_cast<Eigen::Index>(u.dim());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      m(r, c) = u(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  return m;
}

/// Eigenvalues of the dense operator via a general dense solver, with no
/// knowledge of the closed form.
inline std::vector<std::complex<double>> dense_eigenvalues(
    const cyclewalk::evolution_matrix& u) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(u), false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Greedy multiset match: largest pairing distance after matching each left
/// value to its nearest unused right value.
inline double multiset_gap(std::vector<std::complex<double>> lhs,
                           std::vector<std::complex<double>> rhs) {
  double worst = 0.0;
  for (const auto& l : lhs) {
    std::size_t best = rhs.size();
    double best_d = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const double d = std::abs(l - rhs[i]);
      if (best == rhs.size() || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    worst = std::max(worst, best_d);
    rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

inline double max_abs_diff(const cyclewalk::distance_distribution& lhs,
                           const cyclewalk::distance_distribution& rhs) {
  double worst = 0.0;
  for (std::size_t d = 0; d < lhs.size(); ++d) {
    worst = std::max(worst, std::abs(lhs[d] - rhs[d]));
  }
  return worst;
}

/// max_d |P(d) - P(-d)|, the reflection asymmetry about the start node.
inline double reflection_asymmetry(const cyclewalk::distance_distribution& p) {
  const std::size_t n = p.size();
  double worst = 0.0;
  for (std::size_t d = 1; d < n; ++d) {
    worst = std::max(worst, std::abs(p[d] - p[n - d]));
  }
  return worst;
}

}  // namespace testsup
