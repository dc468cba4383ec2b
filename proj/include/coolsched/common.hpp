#ifndef COOLSCHED_COMMON_HPP
#define COOLSCHED_COMMON_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace coolsched {

/// Sentinel for the infinite temperature (acceptance probability 1 for every move).
inline constexpr double kInfTemp = std::numeric_limits<double>::infinity();

/// Raised when an input violates a documented precondition or invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a value falls outside a grid/budget range.
class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

/// Rounds to 12 significant digits. All numbers leaving the CLI go through
/// this so reruns produce byte-identical artifacts across libm versions.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace coolsched

#endif
