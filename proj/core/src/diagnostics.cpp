#include "mfu/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfu/error.hpp"

namespace mfu {
namespace {

std::size_t resolve_burnin(const Chain& chain, std::optional<std::size_t> burnin) {
  const std::size_t n = chain.n_samples();
  const std::size_t b = burnin.value_or(n / 2);
  if (b >= n) {
    throw Error(ErrorCode::Domain, "burn-in of " + std::to_string(b) +
                                       " leaves no draws out of " + std::to_string(n));
  }
  return b;
}

std::vector<double> retained_column(const Chain& chain, std::size_t k, std::size_t burnin) {
  std::vector<double> out;
  out.reserve(chain.n_samples() - burnin);
  for (std::size_t i = burnin; i < chain.n_samples(); ++i) out.push_back(chain(i, k));
  return out;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::Domain, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::Domain, "quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double autocorrelation(std::span<const double> series, std::size_t lag) {
  const std::size_t n = series.size();
  if (n == 0 || lag >= n) return 0.0;
  const double m = mean_of(series);
  double var = 0.0;
  for (double v : series) var += (v - m) * (v - m);
  if (var == 0.0) return 0.0;
  double cov = 0.0;
  for (std::size_t t = 0; t + lag < n; ++t) cov += (series[t] - m) * (series[t + lag] - m);
  return cov / var;
}

double ess(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 10) throw Error(ErrorCode::Domain, "ess needs at least 10 values");
  const double nd = static_cast<double>(n);

  const double m = mean_of(series);
  std::vector<double> centered(n);
  double var = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    centered[t] = series[t] - m;
    var += centered[t] * centered[t];
  }
  if (var == 0.0) return nd;

  auto rho = [&](std::size_t lag) {
    double cov = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) cov += centered[t] * centered[t + lag];
    return cov / var;
  };

  // Initial positive sequence: Gamma_m = rho(2m) + rho(2m + 1), summed while positive.
  double gamma_sum = 0.0;
  for (std::size_t lag = 0; lag + 1 < n; lag += 2) {
    const double pair = (lag == 0 ? 1.0 : rho(lag)) + rho(lag + 1);
    if (!(pair > 0.0)) break;
    gamma_sum += pair;
  }
  const double tau = -1.0 + 2.0 * gamma_sum;
  if (!(tau > 0.0)) return nd;
  return std::clamp(nd / tau, 1.0, nd);
}

double ks_stat(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw Error(ErrorCode::Domain, "ks_stat needs at least one sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

Summary summarize(const Chain& chain, std::optional<std::size_t> burnin) {
  const std::size_t b = resolve_burnin(chain, burnin);
  Summary out{b, chain.n_samples() - b, {}};
  out.params.reserve(chain.n_dims());
  for (std::size_t k = 0; k < chain.n_dims(); ++k) {
    std::vector<double> col = retained_column(chain, k, b);
    const double m = mean_of(col);
    double ss = 0.0;
    for (double v : col) ss += (v - m) * (v - m);
    const double sd = col.size() > 1 ? std::sqrt(ss / static_cast<double>(col.size() - 1)) : 0.0;
    const double eff = col.size() >= 10 ? ess(col) : static_cast<double>(col.size());
    std::sort(col.begin(), col.end());
    out.params.push_back({chain.names()[k], m, sd, quantile(col, 0.025), quantile(col, 0.5),
                          quantile(col, 0.975), eff});
  }
  return out;
}

std::vector<double> posterior_means(const Chain& chain, std::optional<std::size_t> burnin) {
  const std::size_t b = resolve_burnin(chain, burnin);
  std::vector<double> means(chain.n_dims(), 0.0);
  for (std::size_t i = b; i < chain.n_samples(); ++i) {
    for (std::size_t k = 0; k < chain.n_dims(); ++k) means[k] += chain(i, k);
  }
  for (auto& m : means) m /= static_cast<double>(chain.n_samples() - b);
  return means;
}

}  // namespace mfu
