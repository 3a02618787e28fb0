#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cyclewalk/errors.hpp"
#include "cyclewalk/model.hpp"

namespace cyclewalk {

/// cos and sin of theta_j = 2 pi j / n, evaluated through the reflection
/// representative m = min(j mod n, n - j mod n). Modes j and n - j share the
/// same m, so their cosines (and hence the eigenvalues built from them) come
/// out bitwise equal instead of merely close; j = n lands exactly on
/// (cos, sin) = (1, 0).
struct mode_trig {
  double cos_theta{};
  double sin_theta{};
};

inline mode_trig mode_angle_trig(std::size_t j, std::size_t n) {
  const std::size_t jm = j % n;
  const std::size_t m = jm < n - jm ? jm : n - jm;
  const double angle = two_pi * static_cast<double>(m) / static_cast<double>(n);
  double c = std::cos(angle);
  double s = std::sin(angle);
  if (jm > n - jm) s = -s;
  return {c, s};
}

/// One eigenpair of the step operator in closed form. The eigenvalue is
///
///   u = b cos(theta) + sign * i sqrt(1 - b^2 cos^2(theta)),
///
/// and the eigenvector amplitudes are
///
///   <x, L|Psi> = z e^{i x theta}
///   <x, R|Psi> = z m e^{i ((x+1) theta - sign * pi/2)}
///
/// with m = (sqrt(1 - b^2 cos^2 theta) + sign * b sin theta) / a and z > 0
/// fixed by normalization.
struct spectral_point {
  std::size_t j{};  // momentum index, 1..n
  int sign{};       // +1 or -1, selecting the upper/lower dispersion branch
  double theta{};   // 2 pi j / n
  complex u;
  double z{};
  double m{};
};

struct eigen_system {
  std::size_t n{};
  coin_params coin;
  std::vector<spectral_point> points;  // (j,+), (j,-) for j = 1..n

  std::size_t point_index(std::size_t j, int sign) const {
    return 2 * (j - 1) + (sign > 0 ? 0 : 1);
  }
  const spectral_point& at(std::size_t j, int sign) const {
    return points[point_index(j, sign)];
  }
};

inline eigen_system solve_spectrum(coin_params coin, std::size_t n) {
  if (n < 3) throw degenerate_cycle(static_cast<long long>(n));
  eigen_system sys{n, coin, {}};
  sys.points.reserve(2 * n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double theta =
        two_pi * static_cast<double>(j) / static_cast<double>(n);
    const auto [c, s] = mode_angle_trig(j, n);
    const double disc = std::sqrt(1.0 - coin.b * coin.b * c * c);  // >= a > 0
    for (const int sign : {+1, -1}) {
      const double shifted = disc + sign * coin.b * s;
      spectral_point p;
      p.j = j;
      p.sign = sign;
      p.theta = theta;
      p.u = complex(coin.b * c, sign * disc);
      p.m = shifted / coin.a;
      p.z = coin.a /
            std::sqrt(static_cast<double>(n) *
                      (coin.a * coin.a + shifted * shifted));
      sys.points.push_back(p);
    }
  }
  return sys;
}

/// Materializes the closed-form eigenvector as a unit state.
inline walk_state eigenstate_vector(const spectral_point& p, std::size_t n) {
  walk_state v = walk_state::zero(n);
  const double right_offset =
      p.theta - static_cast<double>(p.sign) * (std::numbers::pi / 2.0);
  const double zm = p.z * p.m;
  for (std::size_t x = 0; x < n; ++x) {
    const double base = static_cast<double>(x) * p.theta;
    v.amps[x] = std::polar(p.z, base);
    v.amps[n + x] = std::polar(zm, base + right_offset);
  }
  return v;
}

/// u^t through the phase, so the power stays exactly on the unit circle.
inline complex eigenvalue_power(const spectral_point& p, std::uint64_t t) {
  const double phase = std::atan2(p.u.imag(), p.u.real());
  return std::polar(1.0, phase * static_cast<double>(t));
}

/// Residuals of the closed-form relations between the normalization factor
/// z and the chirality ratio m, each maximized over j and both branches.
/// Writing D = sqrt(1 - b^2 cos^2 theta), the relations are
///
///   z^2          = (D -+ b sin theta) / (2 n D)
///   (z m)^2      = (D +- b sin theta) / (2 n D)
///   z_+ z_-      = a / (2 n D) = z^2 m
///   z^2 (1+m^2)  = 1 / n
///   m_+ m_-      = 1
///   z_+ m_+      = z_-   and   z_- m_- = z_+
struct zm_residuals {
  double z_squared{};
  double zm_squared{};
  double cross_product{};
  double site_norm{};
  double m_product{};
  double ladder{};

  double max_residual() const {
    double worst = z_squared;
    if (zm_squared > worst) worst = zm_squared;
    if (cross_product > worst) worst = cross_product;
    if (site_norm > worst) worst = site_norm;
    if (m_product > worst) worst = m_product;
    if (ladder > worst) worst = ladder;
    return worst;
  }
};

inline zm_residuals zm_identity_report(coin_params coin, std::size_t n) {
  const eigen_system sys = solve_spectrum(coin, n);
  zm_residuals r;
  const auto track = [](double& slot, double err) {
    if (err > slot) slot = err;
  };
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const auto [c, s] = mode_angle_trig(j, n);
    const double disc = std::sqrt(1.0 - coin.b * coin.b * c * c);
    const double base = 1.0 / (2.0 * static_cast<double>(n) * disc);
    const spectral_point& plus = sys.at(j, +1);
    const spectral_point& minus = sys.at(j, -1);

    track(r.z_squared, std::abs(plus.z * plus.z - (disc - coin.b * s) * base));
    track(r.z_squared,
          std::abs(minus.z * minus.z - (disc + coin.b * s) * base));

    const double zm_plus = plus.z * plus.m;
    const double zm_minus = minus.z * minus.m;
    track(r.zm_squared, std::abs(zm_plus * zm_plus - (disc + coin.b * s) * base));
    track(r.zm_squared,
          std::abs(zm_minus * zm_minus - (disc - coin.b * s) * base));

    track(r.cross_product, std::abs(plus.z * minus.z - coin.a * base));
    track(r.cross_product, std::abs(plus.z * plus.z * plus.m - coin.a * base));
    track(r.cross_product,
          std::abs(minus.z * minus.z * minus.m - coin.a * base));

    track(r.site_norm,
          std::abs(plus.z * plus.z * (1.0 + plus.m * plus.m) - inv_n));
    track(r.site_norm,
          std::abs(minus.z * minus.z * (1.0 + minus.m * minus.m) - inv_n));

    track(r.m_product, std::abs(plus.m * minus.m - 1.0));

    track(r.ladder, std::abs(zm_plus - minus.z));
    track(r.ladder, std::abs(zm_minus - plus.z));
  }
  return r;
}

/// P(d, t) assembled from the eigendecomposition instead of stepping:
/// amplitudes are sums of u^t-weighted eigenvector components. O(n^2) per
/// call; serves as an independent cross-check of the evolution kernel.
inline distance_distribution spectral_probability(const walk_config& cfg,
                                                  std::uint64_t t) {
  const std::size_t n = cfg.n;
  const eigen_system sys = solve_spectrum(cfg.coin, n);
  const complex right0 = std::polar(cfg.init.q0, cfg.init.phi);
  std::vector<complex> amp_l(n);
  std::vector<complex> amp_r(n);
  for (const spectral_point& p : sys.points) {
    const walk_state v = eigenstate_vector(p, n);
    const complex overlap =
        std::conj(v.at(cfg.init.x0, chirality::left)) * cfg.init.p0 +
        std::conj(v.at(cfg.init.x0, chirality::right)) * right0;
    const complex w = eigenvalue_power(p, t) * overlap;
    for (std::size_t x = 0; x < n; ++x) {
      amp_l[x] += w * v.amps[x];
      amp_r[x] += w * v.amps[n + x];
    }
  }
  std::vector<double> probs(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t x = cfg.init.x0 + d;
    if (x >= n) x -= n;
    probs[d] = std::norm(amp_l[x]) + std::norm(amp_r[x]);
  }
  return make_distance_distribution(std::move(probs));
}

}  // namespace cyclewalk
