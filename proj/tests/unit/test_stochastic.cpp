#include <doctest.h>

#include "mskrock/deterministic.hpp"
#include "mskrock/stability.hpp"
#include "mskrock/stochastic.hpp"

#include <cmath>
#include <random>

using namespace mskrock;

namespace {

VectorField linear(double a) {
  return [a](double, std::span<const double> x, std::span<double> o) {
    for (std::size_t i = 0; i < x.size(); ++i) o[i] = a * x[i];
  };
}

VectorField zero() {
  return [](double, std::span<const double>, std::span<double> o) {
    for (double& v : o) v = 0.0;
  };
}

double R(int s, int m, double eps, double lambda, double zeta, double mu, double tau, double eta, double xi) {
  const auto outer = StabilityPolyParams::make(s, eps);
  const auto inner = StabilityPolyParams::make(m, eps);
  const double p = tau * stab_Phi(inner, eta * lambda) * (lambda + zeta);
  const double q = stab_Psi(inner, eta * lambda) * mu * std::sqrt(tau);
  return stab_A(outer, p) + stab_B(outer, p) * q * xi;
}

} // namespace

TEST_CASE("skrock without noise equals rkc") {
  const auto c = OuterCoefficients::make(6, 0.05);
  const auto d = DiffusionSpec::make_vector(zero());
  const Vector x = {1.0, 2.0};
  const Vector dW = {0.3};
  Workspace ws(2, d.scratch_size(2));
  Vector out(2);
  skrock_step(linear(-40.0), d, c, x, 0.0, 0.5, dW, out, ws);
  const auto ref = rkc_step(c, linear(-40.0), x, 0.0, 0.5);
  CHECK(out == ref);
}

TEST_CASE("skrock closed form on the scalar test equation") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 30; ++k) {
    const double lambda = -50.0 * (k + 1), mu = 0.5 + 0.1 * k, tau = 0.05;
    const int s = select_outer_stages(tau, -lambda, 0.05);
    const auto c = OuterCoefficients::make(s, 0.05);
    const double xi = n01(gen);
    const Vector x = {1.0}, dW = {xi * std::sqrt(tau)};
    Workspace ws(1, 1);
    Vector out(1);
    skrock_step(linear(lambda), DiffusionSpec::make_vector(linear(mu)), c, x, 0.0, tau, dW, out, ws);
    const auto P = StabilityPolyParams::make(s, 0.05);
    const double ref = stab_A(P, tau * lambda) + stab_B(P, tau * lambda) * mu * std::sqrt(tau) * xi;
    CHECK(std::abs(out[0] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("one-stage skrock hand expansion") {
  const auto c = OuterCoefficients::make(1, 0.0);
  const double tau = 0.1, a = -2.0, g = 0.4, dw = 0.25;
  const Vector x = {1.0}, dW = {dw};
  Workspace ws(1, 1);
  Vector out(1);
  skrock_step(linear(a), DiffusionSpec::make_vector(linear(g)), c, x, 0.0, tau, dW, out, ws);
  const double Q = g * x[0] * dw;
  CHECK(out[0] == doctest::Approx(x[0] + tau * a * (x[0] + Q / 2) + Q).epsilon(1e-15));
}

TEST_CASE("damped diffusion vector mode") {
  const auto p = build_stage_params(3, 6, 0.1, 0.05);
  const Vector x = {2.0};
  Vector out(1);
  Workspace ws(1, 1);
  SUBCASE("no fast drift returns g") {
    const DriftPair dp{zero(), linear(-1.0), 1};
    damped_diffusion_vector(dp, DiffusionSpec::make_vector(linear(0.7)), p, x, 0.0, out, ws);
    CHECK(out[0] == doctest::Approx(1.4).epsilon(1e-13));
  }
  SUBCASE("linear fast drift gives Psi_r") {
    const double lambda = -300.0, mu = 0.7;
    const DriftPair dp{linear(lambda), linear(-1.0), 1};
    damped_diffusion_vector(dp, DiffusionSpec::make_vector(linear(mu)), p, x, 0.0, out, ws);
    const double ref = stab_Psi(StabilityPolyParams::make(6, 0.05), p.eta * lambda) * mu * x[0];
    CHECK(std::abs(out[0] - ref) <= 1e-10 * std::abs(ref));
  }
  SUBCASE("zero diffusion gives zero") {
    const DriftPair dp{linear(-300.0), linear(-1.0), 1};
    damped_diffusion_vector(dp, DiffusionSpec::make_vector(zero()), p, x, 0.0, out, ws);
    CHECK(out[0] == 0.0);
  }
}

TEST_CASE("damped diffusion matrix mode") {
  const auto p = build_stage_params(2, 8, 0.1, 0.05);
  const double lambda = -500.0;
  const DriftPair dp{linear(lambda), linear(-1.0), 1};
  const Vector x = {1.5};
  Workspace ws(1, 1);
  SUBCASE("one column equals vector mode times dW") {
    const auto vec = DiffusionSpec::make_vector(linear(0.3));
    const auto mat = DiffusionSpec::make_matrix(
        [](double, std::span<const double> y, std::span<double> o) { o[0] = 0.3 * y[0]; }, 1);
    Vector a(1), b(1);
    const Vector dW = {0.17};
    damped_diffusion_vector(dp, vec, p, x, 0.0, a, ws);
    damped_diffusion_matrix(dp, mat, p, x, 0.0, dW, b, ws);
    CHECK(b[0] == doctest::Approx(a[0] * 0.17).epsilon(1e-12));
  }
  SUBCASE("zero increment gives zero") {
    const auto mat = DiffusionSpec::make_matrix(
        [](double, std::span<const double> y, std::span<double> o) { o[0] = 0.3 * y[0]; }, 1);
    Vector b(1);
    const Vector dW = {0.0};
    damped_diffusion_matrix(dp, mat, p, x, 0.0, dW, b, ws);
    CHECK(b[0] == 0.0);
  }
  SUBCASE("wrong increment dimension") {
    const auto mat = DiffusionSpec::make_matrix(
        [](double, std::span<const double> y, std::span<double> o) { o[0] = y[0]; o[1] = 1.0; }, 2);
    Workspace w2(1, mat.scratch_size(1));
    Vector b(1);
    const Vector dW = {0.1};
    CHECK_THROWS_AS(damped_diffusion_matrix(dp, mat, p, x, 0.0, dW, b, w2), InputError);
  }
}

TEST_CASE("diagonal noise decouples") {
  const double l0 = -800.0, l1 = -20.0;
  const auto p = build_stage_params(2, 10, 0.1, 0.05);
  const DriftPair dp{[&](double, std::span<const double> y, std::span<double> o) {
                       o[0] = l0 * y[0];
                       o[1] = l1 * y[1];
                     },
                     linear(-1.0), 2};
  const auto d = DiffusionSpec::make_diagonal(
      [](double, std::span<const double> y, std::span<double> o) {
        o[0] = 0.5 * y[0];
        o[1] = 2.0 * y[1];
      },
      2);
  const Vector x = {1.0, -1.0}, dW = {0.2, -0.3};
  Workspace ws(2, d.scratch_size(2));
  Vector out(2);
  damped_diffusion_matrix(dp, d, p, x, 0.0, dW, out, ws);
  const auto inner = StabilityPolyParams::make(10, 0.05);
  CHECK(out[0] == doctest::Approx(stab_Psi(inner, p.eta * l0) * 0.5 * x[0] * dW[0]).epsilon(1e-10));
  CHECK(out[1] == doctest::Approx(stab_Psi(inner, p.eta * l1) * 2.0 * x[1] * dW[1]).epsilon(1e-10));
}

TEST_CASE("per-column mode equals combined mode for linear fast drift") {
  const auto p = build_stage_params(3, 6, 0.05, 0.05);
  const DriftPair dp{[](double, std::span<const double> y, std::span<double> o) {
                       o[0] = -300.0 * y[0] + 10.0 * y[1];
                       o[1] = 5.0 * y[0] - 90.0 * y[1];
                     },
                     linear(-1.0), 2};
  const auto d = DiffusionSpec::make_matrix(
      [](double, std::span<const double> y, std::span<double> o) {
        o[0] = 0.1 * y[0];
        o[1] = 0.2;
        o[2] = -0.3 * y[1];
        o[3] = 0.4 * y[0];
        o[4] = 0.05;
        o[5] = 0.0;
      },
      3);
  const Vector x = {1.0, 0.5}, dW = {0.1, -0.2, 0.05};
  Workspace ws(2, d.scratch_size(2));
  Vector a(2), b(2);
  mskrock_step(dp, d, p, x, 0.0, dW, a, ws, nullptr, NoiseMode::combined);
  mskrock_step(dp, d, p, x, 0.0, dW, b, ws, nullptr, NoiseMode::per_column);
  CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-11));
  CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-11));
}

TEST_CASE("mskrock without noise equals mrkc bit for bit") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    const double lambda = -std::pow(10.0, 6.0 * u(gen)), zeta = -std::pow(10.0, 2.0 * u(gen));
    const double tau = 0.001 + 0.1 * u(gen);
    const auto p = select_stages(tau, -lambda, -zeta, 0.05);
    const DriftPair dp{linear(lambda), [](double t, std::span<const double> y, std::span<double> o) {
                         o[0] = -std::sin(y[0]) + std::cos(t);
                       },
                       1};
    const Vector x = {0.3 + u(gen)}, dW = {0.4};
    const auto a = mskrock_step(dp, DiffusionSpec::make_vector(zero()), p, x, 0.2, dW);
    const auto b = mrkc_step(dp, p, x, 0.2);
    CHECK(a[0] == b[0]);
  }
}

TEST_CASE("mskrock closed form on the multirate test equation") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 50; ++k) {
    const double lambda = -1e6 * u(gen), zeta = -100.0 * u(gen);
    const double mu = std::sqrt(0.99 * u(gen) * 2.0 * std::abs(lambda + zeta));
    const double tau = 1e-3 + (0.1 - 1e-3) * u(gen);
    const double xi = n01(gen);
    const auto p = select_stages(tau, -lambda, -zeta, 0.05);
    const DriftPair dp{linear(lambda), linear(zeta), 1};
    const Vector x = {1.0}, dW = {xi * std::sqrt(tau)};
    const auto out = mskrock_step(dp, DiffusionSpec::make_vector(linear(mu)), p, x, 0.0, dW);
    const double ref = R(p.s, p.m, p.eps, lambda, zeta, mu, tau, p.eta, xi);
    CHECK(std::abs(out[0] - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("evaluation counters") {
  const DriftPair dp{linear(-10.0), linear(-1.0), 1};
  const auto d = DiffusionSpec::make_vector(linear(0.5));
  const Vector x = {1.0}, dW = {0.1};
  SUBCASE("(5, 4)") {
    StepStats st;
    mskrock_step(dp, d, build_stage_params(5, 4, 0.1, 0.05), x, 0.0, dW, &st);
    CHECK(st.n_fF == 24);
    CHECK(st.n_fS == 5);
    CHECK(st.n_g == 1);
    CHECK(st.s_used == 5);
    CHECK(st.m_used == 4);
  }
  SUBCASE("full sweep") {
    for (int s = 1; s <= 20; ++s) {
      for (int m = 2; m <= 20; m += 2) {
        StepStats st;
        mskrock_step(dp, d, build_stage_params(s, m, 0.1, 0.05), x, 0.0, dW, &st);
        CHECK(st.n_fF == (s + 1) * m);
        CHECK(st.n_fS == s);
        CHECK(st.n_g == 1);
      }
    }
  }
}

TEST_CASE("sampled mean-square contraction") {
  const double lambda = -2000.0, zeta = -3.0, mu = std::sqrt(0.8 * 2 * 2003.0), tau = 0.05;
  const auto p = select_stages(tau, -lambda, -zeta, 0.0);
  const DriftPair dp{linear(lambda), linear(zeta), 1};
  const auto d = DiffusionSpec::make_vector(linear(mu));
  std::mt19937_64 gen(21);
  std::normal_distribution<double> n01;
  Workspace ws(1, 1);
  Vector out(1);
  const Vector x = {1.0};
  const int N = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const Vector dW = {std::sqrt(tau) * n01(gen)};
    mskrock_step(dp, d, p, x, 0.0, dW, out, ws);
    const double r2 = out[0] * out[0];
    sum += r2;
    sum2 += r2 * r2;
  }
  const double mean = sum / N;
  const double se = std::sqrt((sum2 / N - mean * mean) / N);
  CHECK(mean < 1.0 + 3.0 * se);
}

TEST_CASE("divergence is reported") {
  const DriftPair dp{[](double, std::span<const double>, std::span<double> o) { o[0] = std::nan(""); },
                     linear(-1.0), 1};
  const Vector x = {1.0}, dW = {0.1};
  CHECK_THROWS_AS(mskrock_step(dp, DiffusionSpec::make_vector(linear(1.0)), build_stage_params(2, 2, 0.1), x,
                               0.0, dW),
                  DivergenceError);
}
