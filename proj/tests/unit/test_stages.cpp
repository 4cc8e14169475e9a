#include <doctest.h>

#include "mskrock/chebyshev.hpp"
#include "mskrock/stability.hpp"
#include "mskrock/stages.hpp"
#include "mskrock/types.hpp"

#include <cmath>
#include <random>

using namespace mskrock;

TEST_CASE("stage floor") {
  const auto p = select_stages(0.3, 0.0, 0.0, 0.05);
  CHECK(p.s == 1);
  CHECK(p.m == 2);
  CHECK(p.r == 1);
}

TEST_CASE("integral stage numbers are kept") {
  // beta = 2 at eps = 0: s = sqrt(200/2) = 10, m = sqrt(3*33 + 1) = 10
  const double tau = 1.0, rho_S = 200.0, rho_F = 33.0 * rho_S;
  const auto p = select_stages(tau, rho_F, rho_S, 0.0);
  CHECK(p.s == 10);
  CHECK(p.m == 10);
}

TEST_CASE("coupling time") {
  CHECK(coupling_time(0.01, 2, 2, 0.0) == doctest::Approx(0.01).epsilon(1e-15));
  const auto p = build_stage_params(2, 2, 0.01, 0.0);
  CHECK(p.eta == doctest::Approx(0.06 / 8.0 * 4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(select_stages(0.0, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(select_stages(0.1, -1.0, 1.0), InputError);
  CHECK_THROWS_AS(select_stages(0.1, 1.0, std::nan("")), InputError);
  CHECK_THROWS(build_stage_params(3, 3, 0.1));
  CHECK_THROWS(build_stage_params(0, 2, 0.1));
}

TEST_CASE("stage conditions hold and stages are minimal") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> lg(-3.0, 6.0);
  for (int i = 0; i < 2000; ++i) {
    const double tau = std::pow(10.0, lg(gen) / 3.0 - 2.0);
    const double rho_S = std::pow(10.0, lg(gen));
    const double rho_F = rho_S * std::pow(10.0, lg(gen) / 2.0);
    for (double eps : {0.0, 0.05}) {
      const auto p = select_stages(tau, rho_F, rho_S, eps);
      const double beta = stability_beta(eps);
      CHECK(tau * rho_S <= beta * p.s * p.s * (1 + 1e-12));
      CHECK(p.eta * rho_F <= beta * p.m * p.m * (1 + 1e-12));
      CHECK(p.m % 2 == 0);
      CHECK(p.r * 2 == p.m);
      if (p.s > 1) CHECK(tau * rho_S > beta * (p.s - 1) * (p.s - 1));
      if (p.m > 2) {
        const double eta_lower = coupling_time(tau, p.s, p.m - 2, eps);
        CHECK(eta_lower * rho_F > beta * (p.m - 2) * (p.m - 2));
      }
    }
  }
}

TEST_CASE("monotone in the radii") {
  int prev_s = 0, prev_m = 0;
  for (int k = 0; k < 200; ++k) {
    const double rho = std::pow(1.1, k);
    const auto a = select_stages(0.1, 50.0, rho);
    CHECK(a.s >= prev_s);
    prev_s = a.s;
    const auto b = select_stages(0.1, rho, 50.0);
    CHECK(b.m >= prev_m);
    prev_m = b.m;
  }
}

TEST_CASE("rebuild is idempotent") {
  const auto p = select_stages(0.05, 3e5, 700.0, 0.05);
  const auto q = build_stage_params(p.s, p.m, p.tau, p.eps);
  CHECK(q.eta == p.eta);
  CHECK(q.outer.mu == p.outer.mu);
  CHECK(q.inner.alpha == p.inner.alpha);
  CHECK(q.inner.theta1 == p.inner.theta1);
}

TEST_CASE("first-stage coefficients") {
  const auto c = OuterCoefficients::make(1, 0.0);
  CHECK(c.mu[1] == doctest::Approx(1.0));
  CHECK(c.nu[1] == doctest::Approx(0.5));
  CHECK(c.kappa[1] == doctest::Approx(1.0));
  const auto d = OuterCoefficients::make(9, 0.05);
  CHECK(d.mu[1] == doctest::Approx(d.omega1 / d.omega0).epsilon(1e-15));
  CHECK(d.nu[1] == doctest::Approx(9 * d.omega1 / 2.0).epsilon(1e-15));
  CHECK(d.kappa[1] == doctest::Approx(9 * d.omega1 / d.omega0).epsilon(1e-15));
  for (int j = 2; j <= 9; ++j) {
    const double bj = 1.0 / cheb::T(j, d.omega0);
    const double bj1 = 1.0 / cheb::T(j - 1, d.omega0);
    const double bj2 = 1.0 / cheb::T(j - 2, d.omega0);
    CHECK(d.mu[j] == doctest::Approx(2 * d.omega1 * bj / bj1).epsilon(1e-14));
    CHECK(d.nu[j] == doctest::Approx(2 * d.omega0 * bj / bj1).epsilon(1e-14));
    CHECK(d.kappa[j] == doctest::Approx(-bj / bj2).epsilon(1e-14));
  }
}

TEST_CASE("noise-injection parameters") {
  const auto in = InnerCoefficients::make(6, 0.05);
  const int r = 3;
  CHECK(in.noise_beta1 == doctest::Approx(6 * in.omega1 / 2.0));
  CHECK(in.noise_gamma1 == doctest::Approx(6 * in.omega1 / in.omega0));
  CHECK(in.theta1 ==
        doctest::Approx(cheb::T(r, in.omega0) / (2 * in.omega1 * cheb::T_prime(r, in.omega0))).epsilon(1e-14));
  CHECK_THROWS(InnerCoefficients::make(5, 0.05));
}

TEST_CASE("stage weights") {
  const auto one = stage_abscissae_check(OuterCoefficients::make(1, 0.05));
  CHECK(one.ok);
  CHECK(one.consistency_sum == doctest::Approx(1.0).epsilon(1e-15));
  const auto ten = stage_abscissae_check(OuterCoefficients::make(10, 0.05));
  CHECK(std::abs(ten.consistency_sum - 1.0) <= 1e-12);
  const auto big = stage_abscissae_check(OuterCoefficients::make(47, 1.0));
  CHECK(big.min_weight >= -1e-14);
  CHECK(big.ok);
  const auto sp = stage_abscissae_check(select_stages(0.1, 1e5, 300.0));
  CHECK(sp.ok);
}
