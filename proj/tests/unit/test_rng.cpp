#include <doctest.h>

#include <cmath>

#include "mfu/rng.hpp"
#include "oracles.hpp"

using mfu::rng_new;

TEST_CASE("equal seeds replay equal sequences") {
  auto a = rng_new(0);
  auto b = rng_new(0);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());
  CHECK(a.normal() == b.normal());
  CHECK(a.exponential() == b.exponential());
}

TEST_CASE("different seeds give different sequences") {
  auto a = rng_new(0);
  auto b = rng_new(1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) differs |= a.uniform() != b.uniform();
  CHECK(differs);
}

TEST_CASE("uniform draws: range, mean, KS and serial correlation") {
  constexpr std::size_t n = 1'000'000;
  auto rng = rng_new(42);
  std::vector<double> u(n);
  for (auto& x : u) x = rng.uniform();

  CHECK(std::all_of(u.begin(), u.end(), [](double x) { return x >= 0.0 && x < 1.0; }));
  // CLT bound 3 / (2 sqrt(12 n)) ~ 0.00087; the stated tolerance is 0.002.
  CHECK(std::abs(oracle::mean(u) - 0.5) < 0.002);
  CHECK(oracle::ks_one_sample(u, [](double x) { return oracle::uniform_cdf(x, 0, 1); }) < 0.002);

  std::span<const double> pairs(u.data(), 100'001);
  CHECK(std::abs(oracle::lag1_correlation(pairs)) < 0.01);
}

TEST_CASE("exponential and normal variates") {
  auto rng = rng_new(3);
  constexpr std::size_t n = 200'000;
  std::vector<double> e(n), z(n);
  for (auto& x : e) x = rng.exponential();
  for (auto& x : z) x = rng.normal();
  CHECK(std::all_of(e.begin(), e.end(), [](double x) { return std::isfinite(x) && x >= 0.0; }));
  CHECK(std::abs(oracle::mean(e) - 1.0) < 0.01);
  CHECK(std::abs(oracle::mean(z)) < 0.01);
  CHECK(std::abs(oracle::variance(z) - 1.0) < 0.015);
  CHECK(oracle::ks_one_sample(z, oracle::std_normal_cdf) < oracle::ks_critical_001(n));
}
