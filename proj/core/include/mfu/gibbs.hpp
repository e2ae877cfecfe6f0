#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mfu/chain.hpp"
#include "mfu/control.hpp"
#include "mfu/density.hpp"
#include "mfu/rng.hpp"

namespace mfu {

struct GibbsState {
  std::vector<double> x;
  std::size_t cycle_count = 0;
};

/// f evaluated with coordinate k (zero-based) replaced by xk. Equal to the
/// conditional log-density of x_k given the rest, up to a constant.
double conditional_eval(const LogDensity& f, std::span<const double> x, std::size_t k,
                        double xk);

/// Component k of the gradient at the replaced point.
double conditional_grad(const GradLogDensity& grad, std::span<const double> x, std::size_t k,
                        double xk);

/// Called before each coordinate update with the zero-based index and the
/// state as the update will see it. Intended for tests and tracing.
using CoordinateObserver = std::function<void(std::size_t k, std::span<const double> x)>;

/// One Gibbs cycle: coordinates 0..K-1 in order, each replaced by one slice
/// step or one ARS draw from its conditional. Later coordinates see earlier
/// updates of the same cycle.
///
/// `grad` may be empty unless some coordinate uses Engine::Ars. Engine errors
/// are rethrown tagged with the failing coordinate.
GibbsState mfu_sample_one(const GibbsState& state, const LogDensity& f,
                          const GradLogDensity& grad, const ControlSpec& control,
                          RngStream& rng, const CoordinateObserver& observer = {});

/// Runs n_samples Gibbs cycles from x0 and records every state.
Chain run_chain(std::span<const double> x0, const LogDensity& f, const GradLogDensity& grad,
                const ControlSpec& control, std::size_t n_samples, RngStream& rng,
                std::vector<std::string> names = {});

}  // namespace mfu
