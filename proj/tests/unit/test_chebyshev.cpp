#include <doctest.h>

#include "mskrock/chebyshev.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

using namespace mskrock;

TEST_CASE("first kind: small cases") {
  CHECK(cheb::T(0, 7.3) == 1.0);
  CHECK(cheb::T(3, 0.5) == doctest::Approx(-1.0).epsilon(1e-15));
  // explicit polynomial 16x^5 - 20x^3 + 5x
  const double x = 0.3;
  CHECK(cheb::T(5, x) == doctest::Approx(16 * std::pow(x, 5) - 20 * std::pow(x, 3) + 5 * x).epsilon(1e-14));
}

TEST_CASE("first kind above one matches cosh form") {
  const double x = 1.0005;
  const double ref = std::cosh(10.0 * std::acosh(x));
  CHECK(std::abs(cheb::T(10, x) - ref) <= 1e-12 * std::abs(ref));
}

TEST_CASE("second kind") {
  CHECK(cheb::U(0, -2.1) == 1.0);
  CHECK(cheb::U(2, 1.0) == 3.0);
  const double x = 1.02;
  const double a = std::acosh(x);
  const double ref = std::sinh(6.0 * a) / std::sinh(a);
  CHECK(std::abs(cheb::U(5, x) - ref) <= 1e-12 * std::abs(ref));
  for (int k = 0; k < 30; ++k) CHECK(cheb::U(k, 1.0) == doctest::Approx(k + 1));
}

TEST_CASE("derivative") {
  CHECK(cheb::T_prime(0, 3.0) == 0.0);
  CHECK(cheb::T_prime(1, 5.0) == 1.0);
  CHECK(cheb::T_prime(4, 1.0) == doctest::Approx(16.0).epsilon(1e-15));
  const double h = 1e-6, x = 1.01;
  const double fd = (cheb::T(6, x + h) - cheb::T(6, x - h)) / (2 * h);
  CHECK(std::abs(cheb::T_prime(6, x) - fd) <= 1e-7 * std::abs(fd));
  const auto ev = cheb::T_with_derivative(6, x);
  CHECK(ev.value == cheb::T(6, x));
  CHECK(ev.derivative == doctest::Approx(cheb::T_prime(6, x)).epsilon(1e-14));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(cheb::T(2, std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(cheb::U(2, std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(cheb::T(-1, 0.5), std::domain_error);
}

TEST_CASE("bounds on [-1, 1]") {
  for (int i = 0; i <= 400; ++i) {
    const double x = -1.0 + 2.0 * i / 400.0;
    for (int k = 1; k <= 40; ++k) {
      CHECK(std::abs(cheb::T(k, x)) <= 1.0 + 1e-12);
      CHECK(std::abs(cheb::U(k - 1, x)) <= k + 1e-9);
    }
  }
}

TEST_CASE("recurrence consistency") {
  for (double x : {-0.9, -0.2, 0.4, 1.0, 1.003}) {
    for (int k = 2; k < 25; ++k) {
      CHECK(cheb::T(k, x) == doctest::Approx(2 * x * cheb::T(k - 1, x) - cheb::T(k - 2, x)).epsilon(1e-12));
      CHECK(cheb::U(k, x) == doctest::Approx(2 * x * cheb::U(k - 1, x) - cheb::U(k - 2, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("product identities on [-1, 1.1]") {
  for (int i = 0; i < 1000; ++i) {
    const double x = -1.0 + 2.1 * i / 999.0;
    for (int r = 1; r <= 8; ++r) {
      const double t = cheb::T(r, x);
      CHECK(std::abs(2 * t * t - (cheb::T(2 * r, x) + 1.0)) <= 1e-12 * std::max(1.0, t * t));
      const double u = cheb::U(r - 1, x);
      CHECK(std::abs((t * t - 1.0) - u * u * (x * x - 1.0)) <= 1e-10 * std::max(1.0, t * t));
    }
  }
}

TEST_CASE("trig consistency") {
  for (int i = 1; i < 200; ++i) {
    const double theta = std::numbers::pi * i / 200.0;
    const double x = std::cos(theta);
    for (int k = 0; k <= 64; ++k) CHECK(std::abs(cheb::T(k, x) - std::cos(k * theta)) <= 1e-12);
  }
}
