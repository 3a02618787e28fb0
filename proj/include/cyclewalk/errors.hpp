#pragma once

#include <stdexcept>
#include <string>

namespace cyclewalk {

/// A structural or numeric constraint on the walk model was violated.
/// The message names the broken invariant.
class constraint_violation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cycles shorter than three nodes have no meaningful walk dynamics.
class degenerate_cycle : public constraint_violation {
 public:
  explicit degenerate_cycle(long long n)
      : constraint_violation("degenerate cycle: n = " + std::to_string(n) +
                             ", need n >= 3") {}
};

/// A brute-force cross-check was requested at a size it is not meant for.
class oracle_scale_exceeded : public std::runtime_error {
 public:
  oracle_scale_exceeded(const std::string& what_arg, std::size_t n,
                        std::size_t cap)
      : std::runtime_error(what_arg + ": n = " + std::to_string(n) +
                           " exceeds oracle cap " + std::to_string(cap)) {}
};

/// An analysis routine was handed a trace with no recorded samples.
class empty_trace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A fit window does not contain enough samples to be meaningful.
class insufficient_samples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cyclewalk
