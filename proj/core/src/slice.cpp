#include "mfu/slice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mfu/error.hpp"

namespace mfu {
namespace {

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double slice_step(const UnivariateTarget& target, double x0, double w, std::size_t m,
                  RngStream& rng, SliceTrace* trace) {
  const double lower = target.lower;
  const double upper = target.upper;
  std::size_t evaluations = 0;

  // Points outside the open support are never handed to the user function.
  auto g = [&](double x) {
    if (!(x > lower && x < upper)) return -kInf;
    ++evaluations;
    return target.log_density(x);
  };

  if (!(x0 > lower && x0 < upper)) {
    throw Error(ErrorCode::InvalidStart,
                "slice start " + describe(x0) + " is outside (lower, upper)");
  }
  if (!(w > 0.0)) throw Error(ErrorCode::Domain, "slice width must be positive");

  const double g0 = g(x0);
  if (std::isnan(g0) || g0 == -kInf) {
    throw Error(ErrorCode::InvalidStart,
                "log-density at slice start " + describe(x0) + " is " + describe(g0));
  }

  const double level = g0 - rng.exponential();

  double left = x0 - w * rng.uniform();
  double right = left + w;

  auto stepout_cap_hit = [] {
    throw Error(ErrorCode::NonConvergence,
                "slice stepout exceeded " + std::to_string(kSliceIterationCap) +
                    " expansions; the target may be improper");
  };

  if (m == kUnlimitedStepout) {
    std::size_t steps = 0;
    while (left > lower && g(left) > level) {
      if (++steps > kSliceIterationCap) stepout_cap_hit();
      left -= w;
    }
    steps = 0;
    while (right < upper && g(right) > level) {
      if (++steps > kSliceIterationCap) stepout_cap_hit();
      right += w;
    }
  } else {
    auto left_budget = static_cast<std::size_t>(std::floor(static_cast<double>(m) * rng.uniform()));
    std::size_t right_budget = m - 1 - left_budget;
    while (left_budget > 0 && left > lower && g(left) > level) {
      left -= w;
      --left_budget;
    }
    while (right_budget > 0 && right < upper && g(right) > level) {
      right += w;
      --right_budget;
    }
  }

  left = std::max(left, lower);
  right = std::min(right, upper);

  for (std::size_t shrinks = 0; shrinks < kSliceIterationCap; ++shrinks) {
    const double x1 = left + rng.uniform() * (right - left);
    const double g1 = g(x1);
    if (g1 >= level) {
      if (trace) *trace = SliceTrace{level, evaluations, shrinks};
      return x1;
    }
    if (x1 < x0) {
      left = x1;
    } else {
      right = x1;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "slice shrinkage exceeded " + std::to_string(kSliceIterationCap) +
                  " proposals around " + describe(x0));
}

}  // namespace mfu
