#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfu/control.hpp"
#include "mfu/density.hpp"
#include "mfu/rng.hpp"

namespace mfu {

struct HullPoint {
  double x;
  double h;   // log-density at x
  double hp;  // derivative of the log-density at x
};

/// Result of drawing from the upper hull.
struct EnvelopeDraw {
  double x;
  double upper;  // upper-hull value at x
  double lower;  // squeeze (chord) value at x; -inf outside the abscissa range
};

inline constexpr std::size_t kMaxHullPoints = 100;
inline constexpr double kSlopeTolerance = 1e-9;
inline constexpr double kDuplicateAbscissa = 1e-12;
inline constexpr double kParallelSlopes = 1e-12;

/// Piecewise-exponential envelope used by adaptive rejection sampling.
///
/// The upper hull is formed by the tangents at the abscissae; tangent i rules
/// on [z[i-1], z[i]] with z[-1] = lower and z[n-1] = upper. The squeeze is the
/// chord interpolation of h between adjacent abscissae. Segment masses are
/// stored as log-masses.
class Envelope {
 public:
  /// Throws Error(NonLogConcave) if the points are not concave-consistent,
  /// Error(Initialization) if the hull has infinite mass.
  Envelope(std::vector<HullPoint> points, double lower, double upper);

  std::span<const HullPoint> points() const noexcept { return points_; }
  std::span<const double> intersections() const noexcept { return z_; }
  std::span<const double> log_segment_masses() const noexcept { return log_mass_; }
  double lower_bound() const noexcept { return lower_; }
  double upper_bound() const noexcept { return upper_; }
  std::size_t size() const noexcept { return points_.size(); }

  double log_total_mass() const noexcept { return log_total_; }

  /// Upper-hull value at x (x inside the bounds).
  double upper_at(double x) const;
  /// Squeeze value at x; -inf outside [points.front().x, points.back().x].
  double lower_at(double x) const;

  /// Exact draw from the normalized upper hull via inverse CDF.
  EnvelopeDraw sample(RngStream& rng) const;

  /// Inserts p in sorted position and refreshes the neighbouring
  /// intersections and masses. Near-duplicate abscissae (|dx| < 1e-12) and
  /// inserts beyond kMaxHullPoints are ignored. Returns whether p was added.
  /// Throws Error(NonLogConcave) if p breaks concavity; the envelope is then
  /// left unchanged.
  bool update(const HullPoint& p);

 private:
  void check_pair(std::size_t i) const;
  double intersection(std::size_t i) const;
  double segment_log_mass(std::size_t i) const;
  void refresh_segments(std::size_t first, std::size_t last);
  void refresh_total();
  std::size_t segment_of(double x) const;

  std::vector<HullPoint> points_;
  std::vector<double> z_;
  std::vector<double> log_mass_;
  double lower_;
  double upper_;
  double log_total_ = 0.0;
};

/// Evaluates (h, h') at x_init, extends the abscissae by doubling search until
/// the hull has finite mass, and builds the envelope. With empty `x_init`, the
/// abscissae {center - 1, center, center + 1} (clipped into the bounds) are
/// used. Doubling runs at most 60 times per side.
Envelope ars_init(const UnivariateLogDensity& h, const UnivariateLogDensity& hp,
                  std::span<const double> x_init, double lower, double upper,
                  double center = 0.0);

struct ArsStats {
  std::size_t proposals = 0;
  std::size_t squeeze_accepts = 0;
  std::size_t evaluations = 0;  // h evaluations after initialization
  bool accepted_first = false;
};

inline constexpr std::size_t kArsIterationCap = 10'000;

/// Exact draw from the density proportional to exp(h) on (lower, upper).
///
/// Every evaluated proposal is checked for lower <= h <= upper + tolerance;
/// a violation is reported as Error(NonLogConcave).
double ars_draw(const UnivariateLogDensity& h, const UnivariateLogDensity& hp, double lower,
                double upper, std::span<const double> x_init, RngStream& rng,
                double center = 0.0, ArsStats* stats = nullptr);

}  // namespace mfu
