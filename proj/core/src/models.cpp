#include "mfu/models.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "mfu/control.hpp"
#include "mfu/error.hpp"

namespace mfu {
namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// 1 / (1 + exp(-t)) without overflow.
double logistic(double t) noexcept {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

void check_coefficients(std::span<const double> coef, const Eigen::MatrixXd& X,
                        const char* what) {
  if (static_cast<Eigen::Index>(coef.size()) != X.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has length " + std::to_string(coef.size()) +
                    ", covariate matrix has " + std::to_string(X.cols()) + " columns");
  }
}

void check_sigmamax(double sigmamax) {
  if (!(sigmamax > 0.0)) throw Error(ErrorCode::Domain, "sigmamax must be positive");
}

Eigen::MatrixXd uniform_matrix(std::size_t n, std::size_t k, RngStream& rng) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, j) = rng.uniform(-0.5, 0.5);
  }
  return X;
}

std::vector<double> uniform_vector(std::size_t k, RngStream& rng) {
  std::vector<double> v(k);
  for (auto& e : v) e = rng.uniform(-0.5, 0.5);
  return v;
}

// 1/2 sum log(1 + exp(-x'gamma))
double variance_term(const Eigen::VectorXd& xgamma) {
  double acc = 0.0;
  for (Eigen::Index n = 0; n < xgamma.size(); ++n) acc += softplus(-xgamma[n]);
  return 0.5 * acc;
}

// -1/(2 sigmamax^2) sum (y - x'beta)^2 (1 + exp(-x'gamma))
double residual_term(const Eigen::VectorXd& resid, const Eigen::VectorXd& xgamma,
                     double sigmamax) {
  double acc = 0.0;
  for (Eigen::Index n = 0; n < resid.size(); ++n) {
    acc += resid[n] * resid[n] * (1.0 + std::exp(-xgamma[n]));
  }
  return -acc / (2.0 * sigmamax * sigmamax);
}

}  // namespace

double softplus(double t) noexcept { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

void LogisticData::validate() const {
  if (X.rows() < 1 || X.cols() < 1) throw Error(ErrorCode::Domain, "logistic data needs N, K >= 1");
  if (y.size() != X.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "response length does not match covariate rows");
  }
  for (Eigen::Index n = 0; n < y.size(); ++n) {
    if (y[n] != 0.0 && y[n] != 1.0) {
      throw Error(ErrorCode::Domain, "logistic response must be 0 or 1 (row " +
                                         std::to_string(n + 1) + ")");
    }
  }
  if (!(sigma > 0.0)) throw Error(ErrorCode::Domain, "prior sd must be positive");
}

double logit_f(std::span<const double> beta, const LogisticData& data) {
  check_coefficients(beta, data.X, "beta");
  const auto b = as_vector(beta);
  const Eigen::VectorXd xb = data.X * b;
  double loglik = 0.0;
  for (Eigen::Index n = 0; n < xb.size(); ++n) {
    loglik -= (1.0 - data.y[n]) * xb[n] + softplus(-xb[n]);
  }
  const double logprior =
      -(b.array() - data.mu).square().sum() / (2.0 * data.sigma * data.sigma);
  return loglik + logprior;
}

std::vector<double> logit_grad(std::span<const double> beta, const LogisticData& data) {
  check_coefficients(beta, data.X, "beta");
  const auto b = as_vector(beta);
  const Eigen::VectorXd xb = data.X * b;
  Eigen::VectorXd resid(xb.size());
  for (Eigen::Index n = 0; n < xb.size(); ++n) resid[n] = data.y[n] - 1.0 + logistic(-xb[n]);
  const Eigen::VectorXd g =
      data.X.transpose() * resid -
      ((b.array() - data.mu) / (data.sigma * data.sigma)).matrix();
  return {g.data(), g.data() + g.size()};
}

LogDensity logit_density(const LogisticData& data) {
  return [&data](std::span<const double> beta) { return logit_f(beta, data); };
}

GradLogDensity logit_gradient(const LogisticData& data) {
  return [&data](std::span<const double> beta) { return logit_grad(beta, data); };
}

Eigen::VectorXd draw_logistic_responses(const Eigen::MatrixXd& X, std::span<const double> beta,
                                        RngStream& rng) {
  check_coefficients(beta, X, "beta");
  const Eigen::VectorXd xb = X * as_vector(beta);
  Eigen::VectorXd y(xb.size());
  for (Eigen::Index n = 0; n < xb.size(); ++n) y[n] = rng.uniform() < logistic(xb[n]) ? 1.0 : 0.0;
  return y;
}

LogisticSample gen_logistic_data(std::size_t n, std::size_t k, RngStream& rng) {
  if (n < 1 || k < 1) throw Error(ErrorCode::Domain, "N and K must be >= 1");
  LogisticSample out;
  out.data.X = uniform_matrix(n, k, rng);
  out.beta_true = uniform_vector(k, rng);
  out.data.y = draw_logistic_responses(out.data.X, out.beta_true, rng);
  return out;
}

LogisticFit logit_mle(const LogisticData& data) {
  constexpr std::size_t kMaxIterations = 50;
  constexpr double kScoreTol = 1e-8;
  constexpr double kStepTol = 1e-6;

  data.validate();
  const Eigen::MatrixXd& X = data.X;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(X.cols());

  for (std::size_t iter = 0; iter <= kMaxIterations; ++iter) {
    const Eigen::VectorXd xb = X * beta;
    Eigen::VectorXd resid(xb.size());
    Eigen::VectorXd weight(xb.size());
    for (Eigen::Index n = 0; n < xb.size(); ++n) {
      const double p = logistic(xb[n]);
      resid[n] = data.y[n] - p;
      weight[n] = p * (1.0 - p);
    }
    const Eigen::VectorXd score = X.transpose() * resid;
    const Eigen::MatrixXd info = X.transpose() * weight.asDiagonal() * X;
    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::NonConvergence,
                  "IRLS information matrix is singular (separation or rank deficiency)");
    }
    const Eigen::VectorXd step = llt.solve(score);
    if (!step.allFinite()) throw Error(ErrorCode::NonConvergence, "IRLS step is not finite");

    const double max_score = score.cwiseAbs().maxCoeff();
    if (max_score < kScoreTol && step.cwiseAbs().maxCoeff() < kStepTol) {
      return {{beta.data(), beta.data() + beta.size()}, iter, max_score};
    }
    if (iter == kMaxIterations) break;
    beta += step;
  }
  throw Error(ErrorCode::NonConvergence,
              "IRLS did not converge in 50 iterations (separation or rank deficiency)");
}

void HeteroData::validate() const {
  if (X.rows() < 1 || X.cols() < 1) throw Error(ErrorCode::Domain, "hetero data needs N, K >= 1");
  if (y.size() != X.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "response length does not match covariate rows");
  }
}

double hetero_loglike(std::span<const double> beta, std::span<const double> gamma,
                      double sigmamax, const HeteroData& data) {
  check_coefficients(beta, data.X, "beta");
  check_coefficients(gamma, data.X, "gamma");
  check_sigmamax(sigmamax);
  const Eigen::VectorXd mean = data.X * as_vector(beta);
  const Eigen::VectorXd xg = data.X * as_vector(gamma);
  const double log_sigma2 = 2.0 * std::log(sigmamax);
  double acc = 0.0;
  for (Eigen::Index n = 0; n < mean.size(); ++n) {
    const double log_var = log_sigma2 - softplus(-xg[n]);
    const double r = data.y[n] - mean[n];
    acc += -0.5 * (kLog2Pi + log_var) - 0.5 * r * r * std::exp(-log_var);
  }
  return acc;
}

HeteroComponents hetero_components(std::span<const double> beta, std::span<const double> gamma,
                                   double sigmamax, const HeteroData& data) {
  check_coefficients(beta, data.X, "beta");
  check_coefficients(gamma, data.X, "gamma");
  check_sigmamax(sigmamax);
  const Eigen::VectorXd resid = data.y - data.X * as_vector(beta);
  const Eigen::VectorXd xg = data.X * as_vector(gamma);
  return {-static_cast<double>(data.X.rows()) * std::log(sigmamax), variance_term(xg),
          residual_term(resid, xg, sigmamax)};
}

double hetero_conditional(HeteroBlock block, std::span<const double> beta,
                          std::span<const double> gamma, double sigmamax,
                          const HeteroData& data) {
  check_coefficients(beta, data.X, "beta");
  check_coefficients(gamma, data.X, "gamma");
  check_sigmamax(sigmamax);
  const Eigen::VectorXd resid = data.y - data.X * as_vector(beta);
  const Eigen::VectorXd xg = data.X * as_vector(gamma);
  const double c3 = residual_term(resid, xg, sigmamax);
  switch (block) {
    case HeteroBlock::Beta:
      return c3;
    case HeteroBlock::Gamma:
      // The variance term enters with a plus sign: -1/2 log(v) with
      // v = sigmamax^2 / (1 + exp(-x'gamma)) gives +1/2 log(1 + exp(-x'gamma)).
      return variance_term(xg) + c3;
    case HeteroBlock::Sigmamax:
      return -static_cast<double>(data.X.rows()) * std::log(sigmamax) + c3;
  }
  return c3;
}

double hetero_joint(std::span<const double> coeff, const HeteroData& data) {
  const auto k = static_cast<std::size_t>(data.X.cols());
  if (coeff.size() != 2 * k + 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "packed coefficients have length " + std::to_string(coeff.size()) +
                    ", expected " + std::to_string(2 * k + 1));
  }
  const double sigmamax = coeff[2 * k];
  if (!(sigmamax > 0.0)) return -kInf;
  return hetero_loglike(coeff.subspan(0, k), coeff.subspan(k, k), sigmamax, data);
}

LogDensity hetero_density(const HeteroData& data) {
  return [&data](std::span<const double> coeff) { return hetero_joint(coeff, data); };
}

HeteroSample gen_hetero_data(std::size_t n, std::size_t k, double sigmamax, RngStream& rng) {
  if (n < 1 || k < 1) throw Error(ErrorCode::Domain, "N and K must be >= 1");
  check_sigmamax(sigmamax);
  HeteroSample out;
  out.data.X = uniform_matrix(n, k, rng);
  out.beta_true = uniform_vector(k, rng);
  out.gamma_true = uniform_vector(k, rng);
  out.sigmamax = sigmamax;
  const Eigen::VectorXd mean = out.data.X * as_vector(out.beta_true);
  const Eigen::VectorXd xg = out.data.X * as_vector(out.gamma_true);
  out.data.y.resize(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    const double sd = sigmamax * std::sqrt(logistic(xg[i]));
    out.data.y[i] = mean[i] + sd * rng.normal();
  }
  return out;
}

}  // namespace mfu
