#include "mfu/ars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mfu/error.hpp"

namespace mfu {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDoublings = 60;

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

double log_sum_exp(std::span<const double> values) {
  double peak = -kInf;
  for (double v : values) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - peak);
  return peak + std::log(acc);
}

HullPoint evaluate(const UnivariateLogDensity& h, const UnivariateLogDensity& hp, double x) {
  HullPoint p{x, h(x), hp(x)};
  if (!std::isfinite(p.h) || !std::isfinite(p.hp)) {
    throw Error(ErrorCode::Initialization,
                "log-density or derivative not finite at ARS abscissa " + num(x));
  }
  return p;
}

}  // namespace

Envelope::Envelope(std::vector<HullPoint> points, double lower, double upper)
    : points_(std::move(points)), lower_(lower), upper_(upper) {
  if (points_.empty()) throw Error(ErrorCode::Initialization, "envelope needs at least one point");
  if (!(lower_ < upper_)) throw Error(ErrorCode::Domain, "envelope bounds must satisfy lower < upper");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.h) || !std::isfinite(p.hp)) {
      throw Error(ErrorCode::Initialization, "hull point at " + num(p.x) + " is not finite");
    }
    if (!(p.x > lower_ && p.x < upper_)) {
      throw Error(ErrorCode::Initialization, "hull abscissa " + num(p.x) + " outside bounds");
    }
    if (i > 0 && !(p.x > points_[i - 1].x)) {
      throw Error(ErrorCode::Initialization, "hull abscissae must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) check_pair(i);

  z_.resize(points_.size() - 1);
  log_mass_.resize(points_.size());
  refresh_segments(0, points_.size() - 1);
  refresh_total();
}

// Concavity witness for neighbours i, i+1: the chord slope sits between the
// two tangent slopes, which in turn are ordered.
void Envelope::check_pair(std::size_t i) const {
  const auto& a = points_[i];
  const auto& b = points_[i + 1];
  const double dx = b.x - a.x;
  const double chord = (b.h - a.h) / dx;
  const double slope_tol = kSlopeTolerance * std::max({1.0, std::abs(a.hp), std::abs(b.hp)});
  const double chord_tol = slope_tol + 4.0 * kEps * (std::abs(a.h) + std::abs(b.h)) / dx;
  if (a.hp < b.hp - slope_tol || chord > a.hp + chord_tol || chord < b.hp - chord_tol) {
    throw Error(ErrorCode::NonLogConcave,
                "log-density is not concave between " + num(a.x) + " and " + num(b.x) +
                    " (slopes " + num(a.hp) + ", " + num(b.hp) + ", chord " + num(chord) + ")");
  }
}

double Envelope::intersection(std::size_t i) const {
  const auto& a = points_[i];
  const auto& b = points_[i + 1];
  const double dslope = a.hp - b.hp;
  if (std::abs(dslope) < kParallelSlopes) return 0.5 * (a.x + b.x);
  const double z = a.x + (b.h - a.h - b.hp * (b.x - a.x)) / dslope;
  return std::clamp(z, a.x, b.x);
}

double Envelope::segment_log_mass(std::size_t i) const {
  const double a = i == 0 ? lower_ : z_[i - 1];
  const double b = i + 1 == points_.size() ? upper_ : z_[i];
  if (!(b > a)) return -kInf;
  const auto& p = points_[i];
  const double s = p.hp;
  const double width = b - a;
  if (s == 0.0) return std::isfinite(width) ? p.h + std::log(width) : kInf;
  if (s > 0.0 && !std::isfinite(b)) return kInf;
  if (s < 0.0 && !std::isfinite(a)) return kInf;

  // Anchor at the end where the tangent is highest.
  const double edge = s > 0.0 ? b : a;
  const double top = p.h + s * (edge - p.x);
  const double frac = -std::expm1(-std::abs(s) * width);
  if (frac <= 0.0) return p.h + s * (0.5 * (a + b) - p.x) + std::log(width);
  return top + std::log(frac) - std::log(std::abs(s));
}

void Envelope::refresh_segments(std::size_t first, std::size_t last) {
  const std::size_t n = points_.size();
  for (std::size_t i = first; i <= last && i + 1 < n; ++i) z_[i] = intersection(i);
  const std::size_t mass_first = first == 0 ? 0 : first - 1;
  const std::size_t mass_last = std::min(last + 1, n - 1);
  for (std::size_t i = mass_first; i <= mass_last; ++i) log_mass_[i] = segment_log_mass(i);
}

void Envelope::refresh_total() {
  log_total_ = log_sum_exp(log_mass_);
  if (!std::isfinite(log_total_)) {
    throw Error(ErrorCode::Initialization,
                "upper hull has infinite mass; need a positive slope at the left end of an "
                "unbounded domain and a negative slope at the right end");
  }
}

std::size_t Envelope::segment_of(double x) const {
  return static_cast<std::size_t>(std::upper_bound(z_.begin(), z_.end(), x) - z_.begin());
}

double Envelope::upper_at(double x) const {
  const auto& p = points_[segment_of(x)];
  return p.h + p.hp * (x - p.x);
}

double Envelope::lower_at(double x) const {
  if (x < points_.front().x || x > points_.back().x) return -kInf;
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const HullPoint& p) { return v < p.x; });
  if (it == points_.end()) return points_.back().h;
  const auto& b = *it;
  const auto& a = *(it - 1);
  return ((b.x - x) * a.h + (x - a.x) * b.h) / (b.x - a.x);
}

EnvelopeDraw Envelope::sample(RngStream& rng) const {
  // Segment by mass, then inverse CDF of the truncated exponential within it.
  const double target = rng.uniform();
  std::size_t seg = log_mass_.size() - 1;
  double cum = 0.0;
  for (std::size_t i = 0; i < log_mass_.size(); ++i) {
    cum += std::exp(log_mass_[i] - log_total_);
    if (target < cum) {
      seg = i;
      break;
    }
  }
  while (log_mass_[seg] == -kInf && seg > 0) --seg;

  const double a = seg == 0 ? lower_ : z_[seg - 1];
  const double b = seg + 1 == points_.size() ? upper_ : z_[seg];
  const auto& p = points_[seg];
  const double s = p.hp;
  const double u = rng.uniform();
  double x;
  if (s == 0.0) {
    x = a + u * (b - a);
  } else if (s < 0.0) {
    x = a + std::log1p(u * std::expm1(s * (b - a))) / s;
  } else {
    x = b + std::log1p(u * std::expm1(-s * (b - a))) / s;
  }
  x = std::clamp(x, a, b);
  return {x, p.h + s * (x - p.x), lower_at(x)};
}

bool Envelope::update(const HullPoint& p) {
  if (!std::isfinite(p.h) || !std::isfinite(p.hp) || !(p.x > lower_ && p.x < upper_)) {
    throw Error(ErrorCode::Domain, "hull point must be finite and inside the bounds");
  }
  auto it = std::lower_bound(points_.begin(), points_.end(), p.x,
                             [](const HullPoint& q, double v) { return q.x < v; });
  if (it != points_.end() && std::abs(it->x - p.x) < kDuplicateAbscissa) return false;
  if (it != points_.begin() && std::abs((it - 1)->x - p.x) < kDuplicateAbscissa) return false;
  if (points_.size() >= kMaxHullPoints) return false;

  const auto pos = static_cast<std::size_t>(it - points_.begin());
  points_.insert(it, p);
  try {
    if (pos > 0) check_pair(pos - 1);
    if (pos + 1 < points_.size()) check_pair(pos);
  } catch (...) {
    points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(pos));
    throw;
  }

  z_.insert(z_.begin() + static_cast<std::ptrdiff_t>(std::min(pos, z_.size())), 0.0);
  log_mass_.insert(log_mass_.begin() + static_cast<std::ptrdiff_t>(pos), 0.0);
  refresh_segments(pos == 0 ? 0 : pos - 1, pos);
  refresh_total();
  return true;
}

Envelope ars_init(const UnivariateLogDensity& h, const UnivariateLogDensity& hp,
                  std::span<const double> x_init, double lower, double upper, double center) {
  if (!(lower < upper)) throw Error(ErrorCode::Domain, "ARS bounds must satisfy lower < upper");
  if (x_init.size() > kMaxArsInitPoints) {
    throw Error(ErrorCode::Initialization, "at most 10 initial ARS abscissae are allowed");
  }

  std::vector<double> xs(x_init.begin(), x_init.end());
  if (xs.empty()) {
    if (!(center > lower && center < upper)) {
      if (std::isfinite(lower) && std::isfinite(upper)) {
        center = 0.5 * (lower + upper);
      } else {
        center = std::isfinite(lower) ? lower + 1.0 : upper - 1.0;
      }
    }
    const double left = center - 1.0 > lower ? center - 1.0 : 0.5 * (lower + center);
    const double right = center + 1.0 < upper ? center + 1.0 : 0.5 * (center + upper);
    xs = {left, center, right};
    // Clipping can collapse points onto each other only for denormal ranges.
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > lower && xs[i] < upper)) {
      throw Error(ErrorCode::Initialization, "ARS abscissa " + num(xs[i]) + " outside bounds");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw Error(ErrorCode::Initialization, "ARS abscissae must be strictly increasing");
    }
  }

  std::vector<HullPoint> points;
  points.reserve(xs.size() + 2);
  for (double x : xs) points.push_back(evaluate(h, hp, x));

  if (lower == -kInf && !(points.front().hp > 0.0)) {
    const double anchor = points.front().x;
    double offset = 1.0;
    int doublings = 0;
    for (; doublings < kMaxDoublings; ++doublings) {
      offset *= 2.0;
      HullPoint probe = evaluate(h, hp, anchor - offset);
      if (probe.hp > 0.0) {
        points.insert(points.begin(), probe);
        break;
      }
    }
    if (doublings == kMaxDoublings) {
      throw Error(ErrorCode::Initialization,
                  "no positive slope found left of " + num(anchor) + " after 60 doublings");
    }
  }
  if (upper == kInf && !(points.back().hp < 0.0)) {
    const double anchor = points.back().x;
    double offset = 1.0;
    int doublings = 0;
    for (; doublings < kMaxDoublings; ++doublings) {
      offset *= 2.0;
      HullPoint probe = evaluate(h, hp, anchor + offset);
      if (probe.hp < 0.0) {
        points.push_back(probe);
        break;
      }
    }
    if (doublings == kMaxDoublings) {
      throw Error(ErrorCode::Initialization,
                  "no negative slope found right of " + num(anchor) + " after 60 doublings");
    }
  }
  return Envelope(std::move(points), lower, upper);
}

double ars_draw(const UnivariateLogDensity& h, const UnivariateLogDensity& hp, double lower,
                double upper, std::span<const double> x_init, RngStream& rng, double center,
                ArsStats* stats) {
  Envelope env = ars_init(h, hp, x_init, lower, upper, center);
  ArsStats local;
  ArsStats& st = stats ? *stats : local;
  st = ArsStats{};

  for (std::size_t iter = 0; iter < kArsIterationCap; ++iter) {
    const EnvelopeDraw d = env.sample(rng);
    ++st.proposals;
    const double log_w = std::log(rng.uniform());
    if (!(d.x > lower && d.x < upper)) continue;

    if (log_w <= d.lower - d.upper) {
      ++st.squeeze_accepts;
      st.accepted_first = st.proposals == 1;
      return d.x;
    }

    const double hx = h(d.x);
    ++st.evaluations;
    if (std::isnan(hx)) {
      throw Error(ErrorCode::Domain, "log-density is NaN at " + num(d.x));
    }
    const double tol = kSlopeTolerance * std::max(1.0, std::abs(hx));
    if (hx > d.upper + tol || d.lower > hx + tol) {
      throw Error(ErrorCode::NonLogConcave,
                  "hull does not bound the log-density at " + num(d.x) + " (h = " + num(hx) +
                      ", upper = " + num(d.upper) + ", squeeze = " + num(d.lower) + ")");
    }
    if (log_w <= hx - d.upper) {
      st.accepted_first = st.proposals == 1;
      return d.x;
    }
    if (std::isfinite(hx)) {
      const double hpx = hp(d.x);
      if (std::isfinite(hpx)) env.update(HullPoint{d.x, hx, hpx});
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "ARS exceeded " + std::to_string(kArsIterationCap) + " proposals");
}

}  // namespace mfu
