#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace mfu {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Engine { Slice, Ars };

/// Per-coordinate tuning for the univariate engines.
///
/// Bounds are extended reals; -inf/+inf mean unbounded. `slice_m == 0` means
/// unlimited stepout (still capped internally at 10^4 expansions). An empty
/// `ars_init[k]` asks ARS to place its abscissae around the current value.
struct ControlSpec {
  std::size_t n_dims = 0;
  std::vector<Engine> engine;
  std::vector<double> slice_w;
  std::vector<std::size_t> slice_m;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::vector<double>> ars_init;

  /// Throws Error(InvalidControl) on the first violated invariant.
  void validate() const;
};

/// A scalar (broadcast to every coordinate) or a full per-coordinate vector.
template <typename T>
using Override = std::optional<std::variant<T, std::vector<T>>>;

struct ControlOverrides {
  Override<Engine> engine;
  Override<double> slice_w;
  Override<std::size_t> slice_m;
  Override<double> lower;
  Override<double> upper;
  Override<std::vector<double>> ars_init;
};

inline constexpr double kDefaultSliceWidth = 1.0;
inline constexpr std::size_t kUnlimitedStepout = 0;
inline constexpr std::size_t kMaxArsInitPoints = 10;

/// Builds a validated ControlSpec; fields not overridden take the defaults
/// (Slice, w = 1, unlimited stepout, unbounded, auto ARS init).
ControlSpec make_control(std::size_t n_dims, const ControlOverrides& overrides = {});

}  // namespace mfu
