#pragma once

#include <charconv>
#include <cstddef>
#include <string>

namespace cyclewalk {

/// Shortest decimal string that round-trips the double exactly. Using
/// std::to_chars keeps output independent of locale and stream state, which
/// is what makes repeated runs byte-identical.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Maps a cyclic distance d in [0, n) to the signed convention
/// [-floor(n/2), ceil(n/2) - 1] used in file output.
inline long long signed_distance(std::size_t d, std::size_t n) {
  const auto sd = static_cast<long long>(d);
  const auto half_up = static_cast<long long>((n + 1) / 2);  // ceil(n/2)
  return sd < half_up ? sd : sd - static_cast<long long>(n);
}

/// Inverse of signed_distance.
inline std::size_t distance_mod(long long signed_d, std::size_t n) {
  const auto nn = static_cast<long long>(n);
  long long m = signed_d % nn;
  if (m < 0) m += nn;
  return static_cast<std::size_t>(m);
}

}  // namespace cyclewalk
