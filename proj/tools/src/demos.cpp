#include "mfu_cli/demos.hpp"

#include <chrono>

#include "mfu/diagnostics.hpp"
#include "mfu/error.hpp"
#include "mfu/gibbs.hpp"

namespace mfu::cli {
namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::string> hetero_names(std::size_t k) {
  auto names = indexed_names("beta", k);
  for (auto& g : indexed_names("gamma", k)) names.push_back(std::move(g));
  names.emplace_back("sigmamax");
  return names;
}

}  // namespace

LogisticDemo run_logistic_demo(std::size_t n_samples, std::uint64_t seed, Engine engine,
                               std::optional<std::size_t> burnin) {
  RngStream rng(seed);
  LogisticDemo demo;
  demo.sample = gen_logistic_data(kDemoRows, kDemoCoefficients, rng);
  demo.mle = logit_mle(demo.sample.data);

  const auto& data = demo.sample.data;
  ControlOverrides overrides;
  overrides.engine = engine;
  const ControlSpec control = make_control(kDemoCoefficients, overrides);
  const std::vector<double> beta0(kDemoCoefficients, 0.0);

  Stopwatch clock;
  demo.chain = run_chain(beta0, logit_density(data), logit_gradient(data), control, n_samples,
                         rng, indexed_names("beta", kDemoCoefficients));
  demo.seconds = clock.seconds();
  demo.posterior_mean = posterior_means(demo.chain, burnin);
  return demo;
}

void hetero_blocked_cycle(const HeteroData& data, std::vector<double>& beta,
                          std::vector<double>& gamma, double& sigmamax, RngStream& rng) {
  const std::size_t k = beta.size();
  static const ControlSpec sigmamax_control = [] {
    ControlOverrides o;
    o.lower = kSigmamaxLowerBound;
    return make_control(1, o);
  }();
  const ControlSpec coef_control = make_control(k);

  const LogDensity beta_f = [&](std::span<const double> b) {
    return hetero_conditional(HeteroBlock::Beta, b, gamma, sigmamax, data);
  };
  beta = mfu_sample_one({beta, 0}, beta_f, {}, coef_control, rng).x;

  const LogDensity gamma_f = [&](std::span<const double> g) {
    return hetero_conditional(HeteroBlock::Gamma, beta, g, sigmamax, data);
  };
  gamma = mfu_sample_one({gamma, 0}, gamma_f, {}, coef_control, rng).x;

  const LogDensity sigmamax_f = [&](std::span<const double> s) {
    if (!(s[0] > 0.0)) return -kInf;
    return hetero_conditional(HeteroBlock::Sigmamax, beta, gamma, s[0], data);
  };
  sigmamax = mfu_sample_one({{sigmamax}, 0}, sigmamax_f, {}, sigmamax_control, rng).x[0];
}

HeteroDemo run_hetero_demo(std::size_t n_samples, std::uint64_t seed, bool blocked,
                           std::optional<std::size_t> burnin) {
  if (n_samples < 1) throw Error(ErrorCode::Domain, "n_samples must be >= 1");
  RngStream rng(seed);
  HeteroDemo demo;
  demo.sample = gen_hetero_data(kDemoRows, kDemoCoefficients, kDemoSigmamax, rng);
  const auto& data = demo.sample.data;
  const std::size_t k = kDemoCoefficients;

  Stopwatch clock;
  if (!blocked) {
    std::vector<double> lower(2 * k + 1, -kInf);
    lower.back() = kSigmamaxLowerBound;
    ControlOverrides overrides;
    overrides.lower = lower;
    const ControlSpec control = make_control(2 * k + 1, overrides);
    std::vector<double> coeff0(2 * k + 1, 0.0);
    coeff0.back() = kSigmamaxStart;
    demo.chain = run_chain(coeff0, hetero_density(data), {}, control, n_samples, rng,
                           hetero_names(k));
  } else {
    std::vector<double> beta(k, 0.0);
    std::vector<double> gamma(k, 0.0);
    double sigmamax = kSigmamaxStart;
    demo.chain = Chain(hetero_names(k), seed);
    demo.chain.reserve(n_samples);
    std::vector<double> row(2 * k + 1);
    for (std::size_t i = 0; i < n_samples; ++i) {
      hetero_blocked_cycle(data, beta, gamma, sigmamax, rng);
      std::copy(beta.begin(), beta.end(), row.begin());
      std::copy(gamma.begin(), gamma.end(), row.begin() + static_cast<std::ptrdiff_t>(k));
      row.back() = sigmamax;
      demo.chain.push_back(row);
    }
  }
  demo.seconds = clock.seconds();
  demo.posterior_mean = posterior_means(demo.chain, burnin);
  return demo;
}

}  // namespace mfu::cli
