#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cvsep {

/// Upper bound on the number of subsystems handled by the state engine.
inline constexpr std::size_t kMaxModes = 6;

/// Position-space point (x_1, ..., x_n).
using Point = std::vector<double>;
using PointView = std::span<const double>;

}  // namespace cvsep
