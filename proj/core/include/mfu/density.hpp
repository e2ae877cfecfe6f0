#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mfu {

/// Joint log-density up to an additive constant. Fixed data is bound into the
/// callable. May return -inf for zero density; must be deterministic.
using LogDensity = std::function<double(std::span<const double>)>;

/// Gradient of a LogDensity; returns a vector of the input's length.
using GradLogDensity = std::function<std::vector<double>(std::span<const double>)>;

/// Univariate log-density up to an additive constant.
using UnivariateLogDensity = std::function<double(double)>;

}  // namespace mfu
