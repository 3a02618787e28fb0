#pragma once

#include "cyclewalk/errors.hpp"

namespace cyclewalk {

// Chebyshev polynomials evaluated by the three-term recurrence
// f_{k+1} = 2x f_k - f_{k-1}. The recurrence is the characteristic
// structure behind the walk's dispersion relation, which is why both kinds
// show up in the spectral checks.

/// First kind: T_0 = 1, T_1 = x.
inline double chebyshev_t(long long degree, double x) {
  if (degree < 0) throw constraint_violation("chebyshev_t degree must be >= 0");
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (long long k = 1; k < degree; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Second kind: U_{-1} = 0, U_0 = 1, U_1 = 2x.
inline double chebyshev_u(long long degree, double x) {
  if (degree < -1) {
    throw constraint_violation("chebyshev_u degree must be >= -1");
  }
  if (degree == -1) return 0.0;
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (long long k = 1; k < degree; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace cyclewalk
