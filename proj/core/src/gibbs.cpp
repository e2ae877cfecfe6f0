#include "mfu/gibbs.hpp"

#include <cmath>

#include "mfu/ars.hpp"
#include "mfu/error.hpp"
#include "mfu/slice.hpp"

namespace mfu {
namespace {

void check_index(std::span<const double> x, std::size_t k) {
  if (k >= x.size()) {
    throw Error(ErrorCode::Domain, "coordinate index " + std::to_string(k) +
                                       " out of range for dimension " +
                                       std::to_string(x.size()));
  }
}

}  // namespace

double conditional_eval(const LogDensity& f, std::span<const double> x, std::size_t k,
                        double xk) {
  check_index(x, k);
  std::vector<double> replaced(x.begin(), x.end());
  replaced[k] = xk;
  return f(replaced);
}

double conditional_grad(const GradLogDensity& grad, std::span<const double> x, std::size_t k,
                        double xk) {
  check_index(x, k);
  std::vector<double> replaced(x.begin(), x.end());
  replaced[k] = xk;
  const std::vector<double> g = grad(replaced);
  if (g.size() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "gradient has length " + std::to_string(g.size()) +
                                                  ", expected " + std::to_string(x.size()));
  }
  return g[k];
}

GibbsState mfu_sample_one(const GibbsState& state, const LogDensity& f,
                          const GradLogDensity& grad, const ControlSpec& control,
                          RngStream& rng, const CoordinateObserver& observer) {
  const std::size_t n = state.x.size();
  if (control.n_dims != n) {
    throw Error(ErrorCode::DimensionMismatch, "control has " + std::to_string(control.n_dims) +
                                                  " dimensions, state has " + std::to_string(n));
  }

  GibbsState next{state.x, state.cycle_count};
  // The working vector always holds the latest values; each target swaps
  // coordinate k in, evaluates, and restores it.
  std::vector<double>& x = next.x;

  for (std::size_t k = 0; k < n; ++k) {
    if (observer) observer(k, x);
    const double lower = control.lower[k];
    const double upper = control.upper[k];
    const double current = x[k];

    auto cond = [&x, &f, k](double xk) {
      const double saved = x[k];
      x[k] = xk;
      const double v = f(x);
      x[k] = saved;
      return v;
    };

    try {
      if (!(current > lower && current < upper)) {
        throw Error(ErrorCode::InvalidStart, "state value lies outside (lower, upper)");
      }
      if (control.engine[k] == Engine::Slice) {
        const UnivariateTarget target{cond, lower, upper};
        x[k] = slice_step(target, current, control.slice_w[k], control.slice_m[k], rng);
      } else {
        if (!grad) {
          throw Error(ErrorCode::Domain, "ARS engine requires a gradient evaluator");
        }
        auto cond_grad = [&x, &grad, k](double xk) {
          const double saved = x[k];
          x[k] = xk;
          std::vector<double> g = grad(x);
          x[k] = saved;
          if (g.size() != x.size()) {
            throw Error(ErrorCode::DimensionMismatch, "gradient length does not match state");
          }
          return g[k];
        };
        x[k] = ars_draw(cond, cond_grad, lower, upper, control.ars_init[k], rng, current);
      }
    } catch (const Error& e) {
      throw e.at_coordinate(k);
    }
  }
  ++next.cycle_count;
  return next;
}

Chain run_chain(std::span<const double> x0, const LogDensity& f, const GradLogDensity& grad,
                const ControlSpec& control, std::size_t n_samples, RngStream& rng,
                std::vector<std::string> names) {
  if (n_samples < 1) throw Error(ErrorCode::Domain, "n_samples must be >= 1");
  if (names.empty()) names = indexed_names("x", x0.size());
  if (names.size() != x0.size()) {
    throw Error(ErrorCode::DimensionMismatch, "expected one name per coordinate");
  }
  Chain chain(std::move(names), rng.seed());
  chain.reserve(n_samples);
  GibbsState state{std::vector<double>(x0.begin(), x0.end()), 0};
  for (std::size_t i = 0; i < n_samples; ++i) {
    state = mfu_sample_one(state, f, grad, control, rng);
    chain.push_back(state.x);
  }
  return chain;
}

}  // namespace mfu
