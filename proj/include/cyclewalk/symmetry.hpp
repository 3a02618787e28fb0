#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "cyclewalk/errors.hpp"
#include "cyclewalk/evolution.hpp"
#include "cyclewalk/model.hpp"

namespace cyclewalk {

/// |2 (b/a) p0 q0 cos(phi) - (q0^2 - p0^2)|. Zero exactly when the initial
/// state produces a limiting distribution symmetric about the start node.
inline double symmetry_residual(coin_params coin,
                                const initial_condition& init) {
  return std::abs(2.0 * (coin.b / coin.a) * init.p0 * init.q0 *
                      std::cos(init.phi) -
                  (init.q0 * init.q0 - init.p0 * init.p0));
}

/// Phases phi making (p0, phi) symmetric for this coin: solutions of
/// cos(phi) = a (q0^2 - p0^2) / (2 b p0 q0). Returns {phi, -phi}, a single
/// {0}, or nothing when the weight split is too lopsided for any phase to
/// compensate.
inline std::vector<double> solve_symmetric_phase(coin_params coin, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw constraint_violation("initial weight p0 outside (0, 1)");
  }
  const double q0 = std::sqrt(1.0 - p0 * p0);
  const double rhs =
      coin.a * (q0 * q0 - p0 * p0) / (2.0 * coin.b * p0 * q0);
  if (std::abs(rhs) > 1.0) return {};
  const double phi = std::acos(rhs);
  if (phi == 0.0) return {0.0};
  return {phi, -phi};
}

/// V(t) = sum_d (P(d, t) - P(-d, t))^2 for t = 1..t_max, from one evolution.
struct symmetry_trace {
  walk_config config;
  std::vector<std::uint64_t> times;
  std::vector<double> v;
};

inline symmetry_trace variation_trace(const walk_config& cfg,
                                      std::uint64_t t_max) {
  if (t_max < 1) throw constraint_violation("t_max must be >= 1");
  symmetry_trace trace;
  trace.config = cfg;
  trace.times.reserve(t_max);
  trace.v.reserve(t_max);
  const std::size_t n = cfg.n;
  walk_state cur = localized_state(cfg);
  walk_state nxt = walk_state::zero(n);
  std::vector<double> p(n);
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    apply_step(cur, cfg.coin, nxt);
    std::swap(cur, nxt);
    for (std::size_t d = 0; d < n; ++d) {
      std::size_t x = cfg.init.x0 + d;
      if (x >= n) x -= n;
      p[d] = std::norm(cur.amps[x]) + std::norm(cur.amps[n + x]);
    }
    double v = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      const double diff = p[d] - p[d == 0 ? 0 : n - d];
      v += diff * diff;
    }
    trace.times.push_back(t);
    trace.v.push_back(v);
  }
  return trace;
}

/// Mixing time against threshold epsilon, taken over a finite horizon.
/// m_epsilon is empty when the last crossing sits in the final tenth of the
/// horizon, where "stays below epsilon afterwards" cannot be trusted.
struct mixing_report {
  double epsilon{};
  std::optional<std::uint64_t> m_epsilon;
  std::uint64_t t_horizon{};

  bool converged() const { return m_epsilon.has_value(); }
};

inline mixing_report mixing_time(const symmetry_trace& trace, double epsilon) {
  if (trace.times.empty()) throw empty_trace("mixing_time on empty trace");
  if (!(epsilon > 0.0)) {
    throw constraint_violation("epsilon must be positive");
  }
  const std::uint64_t horizon = trace.times.back();
  mixing_report report{epsilon, std::nullopt, horizon};
  std::size_t i = trace.times.size();
  while (i > 0) {
    --i;
    if (trace.v[i] >= epsilon) {
      const std::uint64_t last = trace.times[i];
      if (last > horizon - horizon / 10) return report;  // too close to call
      report.m_epsilon = last;
      return report;
    }
  }
  report.m_epsilon = 0;  // below threshold from the start
  return report;
}

/// Log-log slope of the decay envelope of V over [t_lo, t_hi]. V(t)
/// oscillates under a power-law ceiling, so the fit runs through per-bin
/// maxima (10 bins per decade) rather than through the raw samples. On a
/// finite cycle the dynamics is almost-periodic and V(t) revisits its early
/// peaks at late times, so the bin maxima are clamped to their running
/// minimum: the fit sees the non-increasing hull, which is what "the
/// decaying envelope" means for a signal with revivals.
inline double envelope_slope(const symmetry_trace& trace, std::uint64_t t_lo,
                             std::uint64_t t_hi) {
  if (trace.times.empty()) throw empty_trace("envelope_slope on empty trace");
  if (t_lo < 1 || t_lo >= t_hi || t_hi > trace.times.back()) {
    throw constraint_violation("envelope window outside trace");
  }
  const double log_lo = std::log(static_cast<double>(t_lo));
  const double log_span = std::log(static_cast<double>(t_hi)) - log_lo;
  const long long n_bins = std::max(
      2LL, std::llround(10.0 * log_span / std::numbers::ln10));
  std::vector<double> best_v(static_cast<std::size_t>(n_bins), -1.0);
  std::vector<double> best_t(static_cast<std::size_t>(n_bins), 0.0);
  std::size_t in_window = 0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const std::uint64_t t = trace.times[i];
    if (t < t_lo || t > t_hi) continue;
    ++in_window;
    const double logt = std::log(static_cast<double>(t));
    auto bin = static_cast<long long>((logt - log_lo) / log_span *
                                      static_cast<double>(n_bins));
    if (bin >= n_bins) bin = n_bins - 1;
    if (bin < 0) bin = 0;
    const auto k = static_cast<std::size_t>(bin);
    if (trace.v[i] > best_v[k]) {
      best_v[k] = trace.v[i];
      best_t[k] = static_cast<double>(t);
    }
  }
  if (in_window < 20) {
    throw insufficient_samples("envelope window holds fewer than 20 samples");
  }
  double ceiling = std::numeric_limits<double>::infinity();
  for (double& v : best_v) {
    if (v <= 0.0) continue;
    ceiling = std::min(ceiling, v);
    v = ceiling;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < best_v.size(); ++k) {
    if (best_v[k] <= 0.0) continue;  // empty bin, or envelope identically 0
    const double x = std::log(best_t[k]);
    const double y = std::log(best_v[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) {
    throw insufficient_samples("fewer than 2 usable envelope bins");
  }
  const double denom = static_cast<double>(count) * sxx - sx * sx;
  return (static_cast<double>(count) * sxy - sx * sy) / denom;
}

}  // namespace cyclewalk
