#pragma once

#include <cmath>

namespace cvsep::detail {

/// erf(b) - erf(a) without cancellation in the tails.
inline double erf_diff(double a, double b) {
  if (a >= 0.0) return std::erfc(a) - std::erfc(b);
  if (b <= 0.0) return std::erfc(-b) - std::erfc(-a);
  return std::erf(b) - std::erf(a);
}

}  // namespace cvsep::detail
