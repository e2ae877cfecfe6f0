#include "mfu/control.hpp"

#include <cmath>
#include <string>

#include "mfu/error.hpp"

namespace mfu {
namespace {

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorCode::InvalidControl, message);
}

template <typename T>
std::vector<T> resolve(const Override<T>& value, std::size_t n, const T& fallback,
                       const char* field) {
  if (!value) return std::vector<T>(n, fallback);
  if (const auto* scalar = std::get_if<T>(&*value)) return std::vector<T>(n, *scalar);
  const auto& vec = std::get<std::vector<T>>(*value);
  if (vec.size() != n) {
    fail(std::string(field) + " has length " + std::to_string(vec.size()) + ", expected " +
         std::to_string(n));
  }
  return vec;
}

}  // namespace

void ControlSpec::validate() const {
  if (n_dims < 1) fail("n_dims must be >= 1");
  auto check_len = [&](std::size_t len, const char* field) {
    if (len != n_dims) {
      fail(std::string(field) + " has length " + std::to_string(len) + ", expected " +
           std::to_string(n_dims));
    }
  };
  check_len(engine.size(), "engine");
  check_len(slice_w.size(), "slice_w");
  check_len(slice_m.size(), "slice_m");
  check_len(lower.size(), "lower");
  check_len(upper.size(), "upper");
  check_len(ars_init.size(), "ars_init");

  for (std::size_t k = 0; k < n_dims; ++k) {
    const std::string at = " at coordinate " + std::to_string(k + 1);
    if (!(slice_w[k] > 0.0) || !std::isfinite(slice_w[k])) fail("slice_w must be positive" + at);
    if (std::isnan(lower[k]) || std::isnan(upper[k]) || !(lower[k] < upper[k])) {
      fail("lower must be < upper" + at);
    }
    const auto& init = ars_init[k];
    if (init.size() > kMaxArsInitPoints) fail("ars_init holds more than 10 points" + at);
    for (std::size_t i = 0; i < init.size(); ++i) {
      if (!std::isfinite(init[i]) || !(init[i] > lower[k] && init[i] < upper[k])) {
        fail("ars_init points must lie inside (lower, upper)" + at);
      }
      if (i > 0 && !(init[i] > init[i - 1])) fail("ars_init must be strictly increasing" + at);
    }
  }
}

ControlSpec make_control(std::size_t n_dims, const ControlOverrides& overrides) {
  if (n_dims < 1) fail("n_dims must be >= 1");
  ControlSpec spec;
  spec.n_dims = n_dims;
  spec.engine = resolve(overrides.engine, n_dims, Engine::Slice, "engine");
  spec.slice_w = resolve(overrides.slice_w, n_dims, kDefaultSliceWidth, "slice_w");
  spec.slice_m = resolve(overrides.slice_m, n_dims, kUnlimitedStepout, "slice_m");
  spec.lower = resolve(overrides.lower, n_dims, -kInf, "lower");
  spec.upper = resolve(overrides.upper, n_dims, kInf, "upper");
  spec.ars_init = resolve(overrides.ars_init, n_dims, std::vector<double>{}, "ars_init");
  spec.validate();
  return spec;
}

}  // namespace mfu
