#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mfu/chain.hpp"
#include "mfu/control.hpp"
#include "mfu/models.hpp"

namespace mfu::cli {

inline constexpr std::size_t kDemoRows = 1000;
inline constexpr std::size_t kDemoCoefficients = 5;
inline constexpr double kDemoSigmamax = 0.75;
inline constexpr double kSigmamaxLowerBound = 1e-3;
inline constexpr double kSigmamaxStart = 0.5;

struct LogisticDemo {
  LogisticSample sample;
  LogisticFit mle;
  Chain chain;
  std::vector<double> posterior_mean;
  double seconds = 0.0;
};

/// Simulates N=1000, K=5 logistic data from `seed`, then continues the same
/// stream to run a chain from beta = 0.
LogisticDemo run_logistic_demo(std::size_t n_samples, std::uint64_t seed, Engine engine,
                               std::optional<std::size_t> burnin = std::nullopt);

struct HeteroDemo {
  HeteroSample sample;
  Chain chain;  // columns: beta1..K, gamma1..K, sigmamax
  std::vector<double> posterior_mean;
  double seconds = 0.0;
};

/// Simulates N=1000, K=5 heteroscedastic data with sigmamax = 0.75 and
/// samples from (0, ..., 0, 0.5). Joint mode slice-samples the packed 2K+1
/// vector; blocked mode updates beta, gamma and sigmamax in turn, each with
/// its reduced conditional.
HeteroDemo run_hetero_demo(std::size_t n_samples, std::uint64_t seed, bool blocked,
                           std::optional<std::size_t> burnin = std::nullopt);

/// One blocked Gibbs cycle over (beta, gamma, sigmamax) using the reduced
/// conditionals. Updates the arguments in place.
void hetero_blocked_cycle(const HeteroData& data, std::vector<double>& beta,
                          std::vector<double>& gamma, double& sigmamax, RngStream& rng);

}  // namespace mfu::cli
