#include <doctest.h>

#include <cmath>

#include "mfu/control.hpp"
#include "mfu/error.hpp"
#include "mfu/models.hpp"
#include "oracles.hpp"

using namespace mfu;

namespace {

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Normal log-density written out directly.
double normal_logpdf(double y, double mean, double var) {
  return -0.5 * std::log(2 * M_PI * var) - (y - mean) * (y - mean) / (2 * var);
}

// Sum of normal log-densities with variance sigmamax^2 / (1 + exp(-x'gamma)).
double hetero_reference(const std::vector<double>& beta, const std::vector<double>& gamma,
                        double sigmamax, const HeteroData& d) {
  double acc = 0.0;
  for (Eigen::Index n = 0; n < d.X.rows(); ++n) {
    double xb = 0.0, xg = 0.0;
    for (Eigen::Index k = 0; k < d.X.cols(); ++k) {
      xb += d.X(n, k) * beta[static_cast<std::size_t>(k)];
      xg += d.X(n, k) * gamma[static_cast<std::size_t>(k)];
    }
    acc += normal_logpdf(d.y[n], xb, sigmamax * sigmamax / (1 + std::exp(-xg)));
  }
  return acc;
}

std::vector<double> random_vec(RngStream& rng, std::size_t k, double lo, double hi) {
  std::vector<double> v(k);
  for (auto& e : v) e = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST_CASE("softplus is overflow safe") {
  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(softplus(800.0) == 800.0);
  CHECK(softplus(-800.0) >= 0.0);
  CHECK(softplus(-800.0) < 1e-300);
  CHECK(softplus(3.0) == doctest::Approx(std::log1p(std::exp(3.0))));
}

TEST_CASE("logit_f closed-form values") {
  RngStream rng(1);
  const auto s = gen_logistic_data(1000, 5, rng);
  const std::vector<double> zero(5, 0.0);
  // 1000 sequential additions: allow accumulated rounding.
  CHECK(logit_f(zero, s.data) == doctest::Approx(-1000 * std::log(2.0)).epsilon(1e-12));

  LogisticData one{Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1), 0.0, 1e6};
  const std::vector<double> b0{0.0};
  CHECK(logit_f(b0, one) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));

  const std::vector<double> wrong(3, 0.0);
  CHECK_THROWS_AS(logit_f(wrong, s.data), Error);
}

TEST_CASE("logit_f stays finite for extreme linear predictors") {
  for (double y : {0.0, 1.0}) {
    LogisticData d{Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Constant(1, y), 0.0, 1e6};
    const std::vector<double> beta{-800.0};
    // -( (1-y) t + log(1 + exp(-t)) ) at t = -800, in extended precision.
    const long double t = -800.0L;
    const long double expected = -((1.0L - y) * t + (-t + std::log1p(std::exp(t)))) -
                                 800.0L * 800.0L / (2.0L * 1e12L);
    CHECK(logit_f(beta, d) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-15));
  }
  RngStream rng(2);
  const auto s = gen_logistic_data(50, 2, rng);
  for (double scale : {-2800.0, 2800.0}) {
    // |x'beta| <= 0.5 * 2 * 700
    const std::vector<double> beta{scale / 4, scale / 4};
    CHECK(std::isfinite(logit_f(beta, s.data)));
    for (double g : logit_grad(beta, s.data)) CHECK(std::isfinite(g));
  }
}

TEST_CASE("logit_grad at zero is X'(y - 1/2)") {
  RngStream rng(3);
  const auto s = gen_logistic_data(100, 3, rng);
  const std::vector<double> zero(3, 0.0);
  const auto g = logit_grad(zero, s.data);
  const Eigen::VectorXd expected = s.data.X.transpose() * (s.data.y.array() - 0.5).matrix();
  for (std::size_t k = 0; k < 3; ++k) CHECK(g[k] == doctest::Approx(expected[static_cast<Eigen::Index>(k)]));
}

TEST_CASE("logit_grad matches finite differences") {
  RngStream rng(4);
  auto s = gen_logistic_data(50, 3, rng);
  s.data.sigma = 2.0;  // make the prior term visible
  for (int trial = 0; trial < 100; ++trial) {
    const auto beta = random_vec(rng, 3, -3, 3);
    const auto fd = oracle::fd_gradient(
        [&](const std::vector<double>& b) { return logit_f(b, s.data); }, beta);
    const auto g = logit_grad(beta, s.data);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(g[k] - fd[k]) <= 1e-6 * std::max(1.0, std::abs(g[k])));
    }
  }
}

TEST_CASE("gen_logistic_data shapes, bounds and determinism") {
  RngStream a(7), b(7);
  const auto s = gen_logistic_data(1000, 5, a);
  const auto t = gen_logistic_data(1000, 5, b);
  CHECK(s.data.X.rows() == 1000);
  CHECK(s.data.X.cols() == 5);
  CHECK(s.beta_true.size() == 5);
  CHECK((s.data.X.array().abs() < 0.5).all());
  for (double v : s.beta_true) CHECK(std::abs(v) < 0.5);
  CHECK(((s.data.y.array() == 0.0) || (s.data.y.array() == 1.0)).all());
  CHECK(s.data.X == t.data.X);
  CHECK(s.data.y == t.data.y);
  CHECK(s.beta_true == t.beta_true);

  const std::vector<double> zero(5, 0.0);
  const auto y0 = draw_logistic_responses(s.data.X, zero, a);
  CHECK(std::abs(y0.mean() - 0.5) < 0.05);
}

TEST_CASE("logit_mle intercept-only model has the closed form") {
  Eigen::VectorXd y(10);
  y << 1, 0, 0, 1, 1, 1, 0, 1, 0, 1;
  LogisticData d{Eigen::MatrixXd::Ones(10, 1), y, 0.0, 1e6};
  const auto fit = logit_mle(d);
  CHECK(fit.coef[0] == doctest::Approx(std::log(0.6 / 0.4)).epsilon(1e-10));
}

TEST_CASE("logit_mle converges quickly on generated data") {
  RngStream rng(0);
  const auto s = gen_logistic_data(1000, 5, rng);
  const auto fit = logit_mle(s.data);
  CHECK(fit.iterations <= 25);
  // Independent stationarity check of the unpenalized score X'(y - p).
  Eigen::VectorXd p(1000);
  const Eigen::VectorXd xb = s.data.X * Eigen::Map<const Eigen::VectorXd>(fit.coef.data(), 5);
  for (Eigen::Index n = 0; n < 1000; ++n) p[n] = 1 / (1 + std::exp(-xb[n]));
  const Eigen::VectorXd score = s.data.X.transpose() * (s.data.y - p);
  CHECK(score.norm() < 1e-8);
  // With sigma = 1e6 the prior pull is ~1e-12, so this is also a posterior mode.
  const auto g = logit_grad(fit.coef, s.data);
  CHECK(Eigen::Map<const Eigen::VectorXd>(g.data(), 5).norm() < 1e-6);
}

TEST_CASE("logit_mle reports separation") {
  RngStream rng(1);
  auto s = gen_logistic_data(100, 2, rng);
  // Complete separation on the first covariate.
  for (Eigen::Index i = 0; i < s.data.y.size(); ++i) s.data.y[i] = s.data.X(i, 0) > 0 ? 1.0 : 0.0;
  try {
    logit_mle(s.data);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
  }
}

TEST_CASE("hetero_loglike special cases") {
  RngStream rng(5);
  const auto s = gen_hetero_data(200, 3, 0.75, rng);
  const auto beta = random_vec(rng, 3, -1, 1);
  const std::vector<double> zero(3, 0.0);

  double expected = 0.0;
  for (Eigen::Index n = 0; n < 200; ++n) {
    double xb = 0.0;
    for (Eigen::Index k = 0; k < 3; ++k) xb += s.data.X(n, k) * beta[static_cast<std::size_t>(k)];
    expected += normal_logpdf(s.data.y[n], xb, 0.75 * 0.75 / 2);
  }
  CHECK(hetero_loglike(beta, zero, 0.75, s.data) == doctest::Approx(expected).epsilon(1e-13));

  // One row with zero residual.
  HeteroData one{Eigen::MatrixXd(1, 2), Eigen::VectorXd(1)};
  one.X << 0.3, -0.2;
  const std::vector<double> b1{0.5, 1.5}, g1{2.0, -1.0};
  one.y[0] = 0.3 * 0.5 - 0.2 * 1.5;
  const double v = 0.5 * 0.5 / (1 + std::exp(-(0.3 * 2.0 + 0.2)));
  CHECK(hetero_loglike(b1, g1, 0.5, one) == doctest::Approx(-0.5 * std::log(2 * M_PI * v)));

  CHECK_THROWS_AS(hetero_loglike(beta, zero, 0.0, s.data), Error);
  CHECK_THROWS_AS(hetero_components(beta, zero, -1.0, s.data), Error);
}

TEST_CASE("hetero_loglike agrees with direct normal log-densities") {
  RngStream rng(6);
  const auto s = gen_hetero_data(300, 4, 0.75, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = random_vec(rng, 4, -1, 1);
    const auto g = random_vec(rng, 4, -3, 3);
    const double sig = rng.uniform(0.1, 3.0);
    CHECK(hetero_loglike(b, g, sig, s.data) ==
          doctest::Approx(hetero_reference(b, g, sig, s.data)).epsilon(1e-12));
  }
}

TEST_CASE("hetero components: closed forms and decomposition identity") {
  RngStream rng(7);
  const auto s = gen_hetero_data(500, 5, 0.75, rng);
  const auto b = random_vec(rng, 5, -1, 1);
  const std::vector<double> zero(5, 0.0);
  CHECK(hetero_components(b, zero, 1.0, s.data).c1 == 0.0);
  CHECK(hetero_components(b, zero, 0.6, s.data).c2 ==
        doctest::Approx(250 * std::log(2.0)).epsilon(1e-14));

  const double half_n_log_2pi = 250 * std::log(2 * M_PI);
  for (int trial = 0; trial < 100; ++trial) {
    const auto bb = random_vec(rng, 5, -2, 2);
    const auto gg = random_vec(rng, 5, -4, 4);
    const double sig = rng.uniform(0.05, 5.0);
    const auto c = hetero_components(bb, gg, sig, s.data);
    const double lhs = c.c1 + c.c2 + c.c3;
    const double rhs = hetero_loglike(bb, gg, sig, s.data) + half_n_log_2pi;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("block conditionals keep exactly the block-dependent terms") {
  RngStream rng(8);
  const auto s = gen_hetero_data(100, 3, 0.75, rng);
  const auto b = random_vec(rng, 3, -1, 1);
  const auto g = random_vec(rng, 3, -1, 1);
  const auto c = hetero_components(b, g, 0.8, s.data);
  CHECK(hetero_conditional(HeteroBlock::Beta, b, g, 0.8, s.data) == c.c3);
  CHECK(hetero_conditional(HeteroBlock::Gamma, b, g, 0.8, s.data) == doctest::Approx(c.c2 + c.c3));
  CHECK(hetero_conditional(HeteroBlock::Sigmamax, b, g, 0.8, s.data) ==
        doctest::Approx(c.c1 + c.c3));
  CHECK_THROWS_AS(hetero_conditional(HeteroBlock::Sigmamax, b, g, 0.0, s.data), Error);
}

TEST_CASE("block conditional and full log-likelihood share their grid argmax") {
  RngStream rng(9);
  for (int scenario = 0; scenario < 20; ++scenario) {
    const auto s = gen_hetero_data(150, 3, 0.75, rng);
    auto b = random_vec(rng, 3, -0.5, 0.5);
    auto g = random_vec(rng, 3, -0.5, 0.5);
    double sig = rng.uniform(0.4, 1.2);
    const auto block = static_cast<HeteroBlock>(scenario % 3);
    const std::size_t k = static_cast<std::size_t>(scenario / 3) % 3;

    std::vector<double> grid, cond, full;
    for (int i = 0; i <= 400; ++i) {
      const double t = block == HeteroBlock::Sigmamax ? 0.2 + 2.0 * i / 400.0 : -2 + 4.0 * i / 400.0;
      if (block == HeteroBlock::Beta) b[k] = t;
      if (block == HeteroBlock::Gamma) g[k] = t;
      if (block == HeteroBlock::Sigmamax) sig = t;
      grid.push_back(t);
      cond.push_back(hetero_conditional(block, b, g, sig, s.data));
      full.push_back(hetero_reference(b, g, sig, s.data));
    }
    CHECK(oracle::argmax(cond) == oracle::argmax(full));
  }
}

TEST_CASE("hetero_joint unpacks [beta | gamma | sigmamax]") {
  RngStream rng(10);
  const auto s = gen_hetero_data(50, 2, 0.75, rng);
  const std::vector<double> coeff{0.1, -0.2, 0.3, 0.4, 0.9};
  CHECK(hetero_joint(coeff, s.data) ==
        hetero_loglike(std::vector<double>{0.1, -0.2}, std::vector<double>{0.3, 0.4}, 0.9, s.data));
  const std::vector<double> negative{0.1, -0.2, 0.3, 0.4, -0.9};
  CHECK(hetero_joint(negative, s.data) == -kInf);
  const std::vector<double> short_coeff{0.1, 0.2};
  CHECK_THROWS_AS(hetero_joint(short_coeff, s.data), Error);
}

TEST_CASE("gen_hetero_data shapes and noise model") {
  RngStream rng(11);
  const auto s = gen_hetero_data(1000, 5, 0.75, rng);
  CHECK(s.data.X.rows() == 1000);
  CHECK(s.data.X.cols() == 5);
  CHECK(s.beta_true.size() == 5);
  CHECK(s.gamma_true.size() == 5);
  CHECK(s.data.y.size() == 1000);

  const auto quiet = gen_hetero_data(200, 3, 1e-12, rng);
  const Eigen::VectorXd mean =
      quiet.data.X * Eigen::Map<const Eigen::VectorXd>(quiet.beta_true.data(), 3);
  CHECK(((quiet.data.y - mean).array().abs() < 1e-10).all());

  // Law of total variance: Var(y - x'beta) = E[sigmamax^2 / (1 + exp(-x'gamma))].
  const auto big = gen_hetero_data(100'000, 5, 0.75, rng);
  const Eigen::VectorXd resid =
      big.data.y - big.data.X * Eigen::Map<const Eigen::VectorXd>(big.beta_true.data(), 5);
  const Eigen::VectorXd xg = big.data.X * Eigen::Map<const Eigen::VectorXd>(big.gamma_true.data(), 5);
  const double expected = (0.5625 / (1 + (-xg.array()).exp())).mean();
  const double observed = oracle::variance(to_vec(resid));
  CHECK(std::abs(observed - expected) < 0.05 * expected);
}
