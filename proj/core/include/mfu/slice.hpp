#pragma once

#include <cstddef>

#include "mfu/control.hpp"
#include "mfu/density.hpp"
#include "mfu/rng.hpp"

namespace mfu {

struct UnivariateTarget {
  UnivariateLogDensity log_density;
  double lower = -kInf;
  double upper = kInf;
};

/// Diagnostics of one slice transition. Filled when a pointer is passed.
struct SliceTrace {
  double level = 0.0;            // z = g(x0) - Exp(1)
  std::size_t evaluations = 0;   // calls into the log-density
  std::size_t shrinks = 0;       // rejected shrinkage proposals
};

inline constexpr std::size_t kSliceIterationCap = 10'000;

/// One slice-sampling transition with stepout and shrinkage.
///
/// Leaves any density proportional to exp(g) on (lower, upper) invariant.
/// The log-density is never called outside the open interval (lower, upper);
/// those points are treated as having zero density. `m == 0` requests
/// unlimited stepout.
///
/// Throws Error(InvalidStart) if x0 is outside the bounds or g(x0) is -inf
/// or NaN, and Error(NonConvergence) when stepout or shrinkage exceeds
/// kSliceIterationCap iterations.
double slice_step(const UnivariateTarget& target, double x0, double w, std::size_t m,
                  RngStream& rng, SliceTrace* trace = nullptr);

}  // namespace mfu
