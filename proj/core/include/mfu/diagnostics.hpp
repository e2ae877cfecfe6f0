#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfu/chain.hpp"

namespace mfu {

struct ParameterSummary {
  std::string name;
  double mean;
  double sd;
  double q025;
  double q50;
  double q975;
  double ess;
};

struct Summary {
  std::size_t burnin;
  std::size_t retained;
  std::vector<ParameterSummary> params;
};

/// Per-parameter statistics over rows [burnin, n_samples). With no burnin
/// given, the first floor(n_samples / 2) rows are dropped. sd uses the n - 1
/// denominator; quantiles interpolate linearly between order statistics.
Summary summarize(const Chain& chain, std::optional<std::size_t> burnin = std::nullopt);

/// Column means over rows [burnin, n_samples).
std::vector<double> posterior_means(const Chain& chain, std::optional<std::size_t> burnin = std::nullopt);

/// Type-7 sample quantile, p in [0, 1].
double quantile(std::vector<double> values, double p);

/// Effective sample size with Geyer's initial positive sequence truncation.
/// Requires at least 10 values; returns n for a constant series.
double ess(std::span<const double> series);

/// Autocorrelation at the given lag (biased, 1/n normalization).
double autocorrelation(std::span<const double> series, std::size_t lag);

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and `cdf`.
double ks_stat(std::span<const double> samples, const std::function<double(double)>& cdf);

double normal_cdf(double x) noexcept;

}  // namespace mfu
