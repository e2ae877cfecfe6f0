#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mfu/density.hpp"
#include "mfu/rng.hpp"

namespace mfu {

/// log(1 + exp(t)) without overflow.
double softplus(double t) noexcept;

// ---------------------------------------------------------------------------
// Bayesian logistic regression with an iid N(mu, sigma^2) prior on each
// coefficient.

struct LogisticData {
  Eigen::MatrixXd X;  // N x K
  Eigen::VectorXd y;  // N, entries 0 or 1
  double mu = 0.0;
  double sigma = 1e6;

  /// Throws on empty/mismatched shapes, non-binary y or sigma <= 0.
  void validate() const;
};

/// Log-posterior up to a constant:
///   -sum_n [(1 - y_n) x_n'b + log(1 + exp(-x_n'b))] - sum_k (b_k - mu)^2 / (2 sigma^2)
double logit_f(std::span<const double> beta, const LogisticData& data);

/// Exact gradient of logit_f: X'(y - 1 + 1/(1 + exp(Xb))) - (b - mu)/sigma^2.
std::vector<double> logit_grad(std::span<const double> beta, const LogisticData& data);

/// Closures over `data`, which must outlive them.
LogDensity logit_density(const LogisticData& data);
GradLogDensity logit_gradient(const LogisticData& data);

struct LogisticSample {
  LogisticData data;
  std::vector<double> beta_true;
};

/// X and beta_true iid U(-0.5, 0.5); y_n = 1{u < logistic(x_n'beta_true)}.
/// Draw order: X column-major, then beta_true, then one uniform per row.
LogisticSample gen_logistic_data(std::size_t n, std::size_t k, RngStream& rng);

/// Responses for a given design and coefficient vector, one uniform per row.
Eigen::VectorXd draw_logistic_responses(const Eigen::MatrixXd& X, std::span<const double> beta,
                                        RngStream& rng);

struct LogisticFit {
  std::vector<double> coef;
  std::size_t iterations = 0;
  double max_abs_score = 0.0;
};

/// Unpenalized maximum likelihood by iteratively reweighted least squares.
/// Converged when max |score| < 1e-8 and the pending Newton step is
/// negligible; throws Error(NonConvergence) after 50 iterations, which is how
/// separation and rank deficiency surface.
LogisticFit logit_mle(const LogisticData& data);

// ---------------------------------------------------------------------------
// Heteroscedastic linear regression:
//   y_n ~ N(x_n'beta, sigmamax^2 / (1 + exp(-x_n'gamma)))
// Joint coefficient packing is [beta (K) | gamma (K) | sigmamax].

struct HeteroData {
  Eigen::MatrixXd X;  // N x K
  Eigen::VectorXd y;  // N

  void validate() const;
};

/// Full log-likelihood including the -(N/2) log(2 pi) constant.
double hetero_loglike(std::span<const double> beta, std::span<const double> gamma,
                      double sigmamax, const HeteroData& data);

struct HeteroComponents {
  double c1;  // -N log(sigmamax)
  double c2;  // +1/2 sum_n log(1 + exp(-x_n'gamma))
  double c3;  // -1/(2 sigmamax^2) sum_n (y_n - x_n'beta)^2 (1 + exp(-x_n'gamma))
};

/// The three additive terms of the log-likelihood with constants dropped:
/// c1 + c2 + c3 == hetero_loglike + (N/2) log(2 pi).
HeteroComponents hetero_components(std::span<const double> beta, std::span<const double> gamma,
                                   double sigmamax, const HeteroData& data);

enum class HeteroBlock { Beta, Gamma, Sigmamax };

/// Block conditional keeping only the terms that vary with the block:
/// Beta -> c3, Gamma -> c2 + c3, Sigmamax -> c1 + c3.
double hetero_conditional(HeteroBlock block, std::span<const double> beta,
                          std::span<const double> gamma, double sigmamax,
                          const HeteroData& data);

/// hetero_loglike on a packed [beta | gamma | sigmamax] vector. Returns -inf
/// for sigmamax <= 0 so the sampler treats it as outside the support.
double hetero_joint(std::span<const double> coeff, const HeteroData& data);

LogDensity hetero_density(const HeteroData& data);

struct HeteroSample {
  HeteroData data;
  std::vector<double> beta_true;
  std::vector<double> gamma_true;
  double sigmamax;
};

/// X, beta_true, gamma_true iid U(-0.5, 0.5) (in that order, X column-major);
/// then y_n ~ N(x_n'beta, sigmamax^2 / (1 + exp(-x_n'gamma))).
HeteroSample gen_hetero_data(std::size_t n, std::size_t k, double sigmamax, RngStream& rng);

}  // namespace mfu
