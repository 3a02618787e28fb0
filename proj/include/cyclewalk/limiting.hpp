#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cyclewalk/errors.hpp"
#include "cyclewalk/evolution.hpp"
#include "cyclewalk/model.hpp"
#include "cyclewalk/spectral.hpp"

namespace cyclewalk {

/// Weights of the shifted cosines in the degenerate-mode interference sum:
/// the d+1 term carries p0^2 + (b/a) p0 q0 cos(phi), the d-1 term carries
/// q0^2 - (b/a) p0 q0 cos(phi). Their difference is exactly the symmetry
/// residual, which is why equal weights characterize symmetric states.
inline std::pair<double, double> s2_coefficients(const walk_config& cfg) {
  const double cross = (cfg.coin.b / cfg.coin.a) * cfg.init.p0 * cfg.init.q0 *
                       std::cos(cfg.init.phi);
  return {cfg.init.p0 * cfg.init.p0 + cross,
          cfg.init.q0 * cfg.init.q0 - cross};
}

namespace detail {

struct s2_tables {
  std::vector<double> theta;      // 2 pi j / n for j = 1..n-1
  std::vector<double> inv_denom;  // 1 / (1 - b^2 cos^2 theta_j)
  double prefactor{};             // a^2 / (2 n^2)
  double coeff_up{};              // weight of cos(2 (d+1) theta)
  double coeff_down{};            // weight of cos(2 (d-1) theta)
};

inline s2_tables make_s2_tables(const walk_config& cfg) {
  const std::size_t n = cfg.n;
  s2_tables tab;
  tab.theta.resize(n - 1);
  tab.inv_denom.resize(n - 1);
  const double b2 = cfg.coin.b * cfg.coin.b;
  for (std::size_t j = 1; j < n; ++j) {
    const double theta =
        two_pi * static_cast<double>(j) / static_cast<double>(n);
    const double c = std::cos(theta);
    tab.theta[j - 1] = theta;
    tab.inv_denom[j - 1] = 1.0 / (1.0 - b2 * c * c);
  }
  tab.prefactor = cfg.coin.a * cfg.coin.a /
                  (2.0 * static_cast<double>(n) * static_cast<double>(n));
  const auto [up, down] = s2_coefficients(cfg);
  tab.coeff_up = up;
  tab.coeff_down = down;
  return tab;
}

inline double s2_from_tables(const s2_tables& tab, std::size_t d) {
  const double dd = static_cast<double>(d);
  double sum = 0.0;
  for (std::size_t k = 0; k < tab.theta.size(); ++k) {
    const double theta = tab.theta[k];
    sum += (std::cos(2.0 * dd * theta) +
            tab.coeff_up * std::cos(2.0 * (dd + 1.0) * theta) +
            tab.coeff_down * std::cos(2.0 * (dd - 1.0) * theta)) *
           tab.inv_denom[k];
  }
  return tab.prefactor * sum;
}

}  // namespace detail

/// Time-averaged interference contribution at cyclic distance d, from the
/// modes degenerate under j <-> n - j.
inline double s2_closed_form(const walk_config& cfg, std::size_t d) {
  return detail::s2_from_tables(detail::make_s2_tables(cfg), d);
}

/// Same sum evaluated through complex exponentials,
/// e^{2 i d theta} (1 + A e^{2 i theta} + B e^{-2 i theta}), without taking
/// real parts early. The imaginary part is pure roundoff and is exposed so
/// callers can assert it vanishes.
inline complex s2_complex_form(const walk_config& cfg, std::size_t d) {
  const std::size_t n = cfg.n;
  const auto [up, down] = s2_coefficients(cfg);
  const double b2 = cfg.coin.b * cfg.coin.b;
  const double dd = static_cast<double>(d);
  complex sum{};
  for (std::size_t j = 1; j < n; ++j) {
    const double theta =
        two_pi * static_cast<double>(j) / static_cast<double>(n);
    const double c = std::cos(theta);
    const complex rot = std::polar(1.0, 2.0 * theta);
    const complex term =
        std::polar(1.0, 2.0 * dd * theta) *
        (1.0 + up * rot + down * std::conj(rot)) / (1.0 - b2 * c * c);
    sum += term;
  }
  const double pref = cfg.coin.a * cfg.coin.a /
                      (2.0 * static_cast<double>(n) * static_cast<double>(n));
  return pref * sum;
}

/// pi(d) split into its three ingredients: the uniform background 1/n, the
/// interference sum s2[d], and (for even n only) the -1/n^2 deduction from
/// the doubly-degenerate mode pair at theta = pi.
struct limiting_breakdown {
  double s1{};
  double s3{};
  std::vector<double> s2;
  bool parity_deduction_applied{};
  distance_distribution pi;
};

inline limiting_breakdown limiting_distribution(const walk_config& cfg) {
  const std::size_t n = cfg.n;
  limiting_breakdown out;
  out.s1 = 1.0 / static_cast<double>(n);
  out.s3 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  out.parity_deduction_applied = n % 2 == 0;
  const double base =
      out.parity_deduction_applied ? out.s1 - out.s3 : out.s1;
  const detail::s2_tables tab = detail::make_s2_tables(cfg);
  out.s2.resize(n);
  std::vector<double> pi(n);
  for (std::size_t d = 0; d < n; ++d) {
    out.s2[d] = detail::s2_from_tables(tab, d);
    pi[d] = base + out.s2[d];
  }
  out.pi = make_distance_distribution(std::move(pi));
  return out;
}

/// Largest cycle the projector oracle will chew through.
inline constexpr std::size_t max_projector_cycle = 512;

/// Brute-force limiting distribution: sum |<x|P_u psi0>|^2 over the
/// degenerate eigenprojectors P_u, with no use of the closed-form pi.
/// Eigenvalues collide only for j' in {j, n-j} on the same branch (the
/// branches are separated by 2 sqrt(1 - b^2) in imaginary part), so the
/// projector cross terms are exactly those pairings.
inline distance_distribution limiting_projector_oracle(
    const walk_config& cfg) {
  const std::size_t n = cfg.n;
  if (n > max_projector_cycle) {
    throw oracle_scale_exceeded("limiting projector oracle", n,
                                max_projector_cycle);
  }
  const eigen_system sys = solve_spectrum(cfg.coin, n);
  std::vector<walk_state> vecs;
  vecs.reserve(2 * n);
  for (const spectral_point& p : sys.points) {
    vecs.push_back(eigenstate_vector(p, n));
  }
  const complex right0 = std::polar(cfg.init.q0, cfg.init.phi);
  std::vector<complex> overlaps(2 * n);  // <psi0|Psi_p>
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    overlaps[i] = cfg.init.p0 * vecs[i].at(cfg.init.x0, chirality::left) +
                  std::conj(right0) * vecs[i].at(cfg.init.x0, chirality::right);
  }
  std::vector<complex> site_acc(n);
  for (std::size_t j = 1; j <= n; ++j) {
    for (const int sign : {+1, -1}) {
      const std::size_t idx = sys.point_index(j, sign);
      std::size_t partners[2];
      std::size_t n_partners = 0;
      partners[n_partners++] = idx;
      const std::size_t jr = n - j;
      if (jr >= 1 && jr != j) {
        partners[n_partners++] = sys.point_index(jr, sign);
      }
      for (std::size_t k = 0; k < n_partners; ++k) {
        const std::size_t idx2 = partners[k];
        const complex w = std::conj(overlaps[idx]) * overlaps[idx2];
        const walk_state& v1 = vecs[idx];
        const walk_state& v2 = vecs[idx2];
        for (std::size_t x = 0; x < n; ++x) {
          site_acc[x] += w * (v1.amps[x] * std::conj(v2.amps[x]) +
                              v1.amps[n + x] * std::conj(v2.amps[n + x]));
        }
      }
    }
  }
  std::vector<double> probs(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t x = cfg.init.x0 + d;
    if (x >= n) x -= n;
    probs[d] = site_acc[x].real();
  }
  return make_distance_distribution(std::move(probs));
}

/// Time average (1/(T+1)) sum_{t=0}^{T} P(d, t) by direct stepping. The
/// average converges to the limiting distribution like O(1/T), so this is
/// the slow-but-assumption-free end of the cross-check chain.
inline distance_distribution cesaro_average(const walk_config& cfg,
                                            std::uint64_t t_horizon) {
  const std::size_t n = cfg.n;
  walk_state cur = localized_state(cfg);
  walk_state nxt = walk_state::zero(n);
  std::vector<double> acc(n, 0.0);
  const auto accumulate = [&](const walk_state& st) {
    for (std::size_t d = 0; d < n; ++d) {
      std::size_t x = cfg.init.x0 + d;
      if (x >= n) x -= n;
      acc[d] += std::norm(st.amps[x]) + std::norm(st.amps[n + x]);
    }
  };
  accumulate(cur);
  for (std::uint64_t t = 1; t <= t_horizon; ++t) {
    apply_step(cur, cfg.coin, nxt);
    std::swap(cur, nxt);
    accumulate(cur);
  }
  const double scale = 1.0 / static_cast<double>(t_horizon + 1);
  for (double& p : acc) p *= scale;
  return make_distance_distribution(std::move(acc));
}

}  // namespace cyclewalk
