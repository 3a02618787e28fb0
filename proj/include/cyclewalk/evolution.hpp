#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cyclewalk/errors.hpp"
#include "cyclewalk/model.hpp"

namespace cyclewalk {

// One step U = S (C (x) I): the coin mixes chirality on each node, then the
// swapping shift moves left-movers to x-1 and right-movers to x+1 while
// flipping their chirality. Written as a gather over sources:
//
//   out(x, L) = b in(x-1, L) - a in(x-1, R)
//   out(x, R) = a in(x+1, L) + b in(x+1, R)

/// Applies one step into `out` (must not alias `in`).
inline void apply_step(const walk_state& in, coin_params coin,
                       walk_state& out) {
  const std::size_t n = in.n;
  out.n = n;
  out.amps.resize(2 * n);
  const double a = coin.a;
  const double b = coin.b;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t prev = x == 0 ? n - 1 : x - 1;
    out.amps[x] = b * in.amps[prev] - a * in.amps[n + prev];
  }
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t next = x + 1 == n ? 0 : x + 1;
    out.amps[n + x] = a * in.amps[next] + b * in.amps[n + next];
  }
}

inline walk_state apply_step(const walk_state& in, coin_params coin) {
  walk_state out;
  apply_step(in, coin, out);
  return out;
}

/// Largest cycle for which the dense operator is built. The dense form
/// exists to cross-check the sparse kernel and the spectral solver, so it
/// deliberately stops well before memory becomes interesting.
inline constexpr std::size_t max_dense_cycle = 2048;

/// Explicit 2n x 2n matrix of the step operator, row-major.
struct evolution_matrix {
  std::size_t n{};
  std::vector<complex> entries;

  std::size_t dim() const { return 2 * n; }

  complex operator()(std::size_t row, std::size_t col) const {
    return entries[row * dim() + col];
  }

  walk_state apply(const walk_state& in) const {
    walk_state out = walk_state::zero(n);
    const std::size_t d = dim();
    for (std::size_t r = 0; r < d; ++r) {
      complex acc{};
      const complex* row = entries.data() + r * d;
      for (std::size_t c = 0; c < d; ++c) acc += row[c] * in.amps[c];
      out.amps[r] = acc;
    }
    return out;
  }

  /// max |(U U^dag - I)_{rc}|. O(dim^3); intended for test-sized n.
  double unitarity_residual() const {
    const std::size_t d = dim();
    double worst = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        complex acc{};
        for (std::size_t k = 0; k < d; ++k) {
          acc += (*this)(r, k) * std::conj((*this)(c, k));
        }
        if (r == c) acc -= 1.0;
        worst = std::max(worst, std::abs(acc));
      }
    }
    return worst;
  }
};

inline evolution_matrix build_evolution_matrix(coin_params coin,
                                               std::size_t n) {
  if (n < 3) throw degenerate_cycle(static_cast<long long>(n));
  if (n > max_dense_cycle) {
    throw oracle_scale_exceeded("dense evolution matrix", n, max_dense_cycle);
  }
  evolution_matrix u{n, std::vector<complex>(4 * n * n)};
  const std::size_t d = 2 * n;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t next = x + 1 == n ? 0 : x + 1;
    const std::size_t prev = x == 0 ? n - 1 : x - 1;
    u.entries[next * d + x] = coin.b;              // |x,L> -> b|x+1,L>
    u.entries[(n + prev) * d + x] = coin.a;        // |x,L> -> a|x-1,R>
    u.entries[next * d + (n + x)] = -coin.a;       // |x,R> -> -a|x+1,L>
    u.entries[(n + prev) * d + (n + x)] = coin.b;  // |x,R> -> b|x-1,R>
  }
  return u;
}

/// State after `steps` applications of U to the localized initial state.
inline walk_state evolve(const walk_config& cfg, std::uint64_t steps) {
  walk_state cur = localized_state(cfg);
  walk_state nxt = walk_state::zero(cfg.n);
  for (std::uint64_t t = 0; t < steps; ++t) {
    apply_step(cur, cfg.coin, nxt);
    std::swap(cur, nxt);
  }
  return cur;
}

/// Marginal over nodes, re-indexed by cyclic distance from x0.
inline distance_distribution position_distribution(const walk_state& state,
                                                   std::size_t x0) {
  const std::size_t n = state.n;
  std::vector<double> probs(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::size_t x = x0 + d;
    if (x >= n) x -= n;
    probs[d] = std::norm(state.amps[x]) + std::norm(state.amps[n + x]);
  }
  return make_distance_distribution(std::move(probs));
}

/// Distributions sampled every `stride` steps (t = 0 always included).
struct evolution_trace {
  std::vector<std::uint64_t> times;
  std::vector<distance_distribution> dists;
};

inline evolution_trace probability_trace(const walk_config& cfg,
                                         std::uint64_t t_max,
                                         std::uint64_t stride) {
  if (stride == 0) throw constraint_violation("stride must be >= 1");
  evolution_trace trace;
  walk_state cur = localized_state(cfg);
  walk_state nxt = walk_state::zero(cfg.n);
  trace.times.push_back(0);
  trace.dists.push_back(position_distribution(cur, cfg.init.x0));
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    apply_step(cur, cfg.coin, nxt);
    std::swap(cur, nxt);
    if (t % stride == 0) {
      trace.times.push_back(t);
      trace.dists.push_back(position_distribution(cur, cfg.init.x0));
    }
  }
  return trace;
}

}  // namespace cyclewalk
