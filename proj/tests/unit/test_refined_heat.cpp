#include <doctest.h>

#include "mskrock/brownian.hpp"
#include "mskrock/refined_heat.hpp"
#include "mskrock/spectral.hpp"
#include "mskrock/trajectory.hpp"

#include <cmath>
#include <random>

using namespace mskrock;

namespace {

double radius(const VectorField& f, const Vector& x) {
  const StateMap m = [&](std::span<const double> y, std::span<double> o) { f(0.0, y, o); };
  return estimate_radius(m, x, {}, {1e-3, 500}).rho;
}

} // namespace

TEST_CASE("grid layout") {
  const auto g = build_refined_grid(0.25, 1.0 / 16, 8.0);
  CHECK(g.nodes.front() == 0.0);
  CHECK(g.nodes.back() == 8.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
  CHECK(g.fine_spacing == doctest::Approx(0.25 / 8));
  CHECK(g.fast_count() == 9);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const bool inside = g.nodes[i] >= g.channel_begin - 1e-12 && g.nodes[i] <= g.channel_end + 1e-12;
    CHECK(g.fast[i] == inside);
  }
  CHECK_THROWS_AS(build_refined_grid(8.0, 1.0 / 16, 8.0), InputError);
  CHECK_THROWS_AS(build_refined_grid(-1.0, 1.0 / 16, 8.0), InputError);
}

TEST_CASE("split is complementary") {
  const auto p = make_refined_heat(1.0 / 16, 1.0 / 16, 0.5);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = p.dimension();
  Vector x(n), a(n), b(n), full(n), scratch(n);
  for (double& v : x) v = u(gen);
  p.drift.fast(0.03, x, a);
  p.drift.slow(0.03, x, b);
  p.drift.full(0.03, x, full, scratch);
  for (std::size_t i = 0; i < n; ++i) CHECK(a[i] + b[i] == doctest::Approx(full[i]).epsilon(1e-12));
}

TEST_CASE("no noise and no source keeps a constant state") {
  RefinedHeatOptions o;
  o.source_amplitude = 0.0;
  o.initial_value = 1.3;
  const auto p = make_refined_heat(1.0 / 16, 1.0 / 16, 0.0, o);
  StageControl c;
  TrajectoryIntegrator integ(p, Method::mskrock, c, 0.01);
  const BrownianGrid grid(1, integ.steps(), p.noise_dim(), p.horizon);
  Vector x(p.dimension());
  integ.run(grid.path(0), x);
  for (double v : x) CHECK(std::abs(v - 1.3) <= 1e-10);
}

TEST_CASE("wide channel: both radii near 4/H^2") {
  const double H = 1.0 / 16;
  const auto p = make_refined_heat(0.5, H, 0.5, {});
  const Vector x(p.dimension(), 1.0);
  const double rf = radius(p.drift.fast, x), rs = radius(p.drift.slow, x);
  const double bound = 4.0 / (H * H);
  CHECK(rs == doctest::Approx(bound).epsilon(0.1));
  CHECK(rf / rs == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("radii scale with the channel width") {
  double prev_F = 0.0, first_S = 0.0;
  for (int k = 2; k <= 6; ++k) {
    const double delta = std::ldexp(1.0, -k);
    const auto p = make_refined_heat(delta, 1.0 / 16, 0.5);
    const Vector x(p.dimension(), 1.0);
    const double rf = radius(p.drift.fast, x), rs = radius(p.drift.slow, x);
    if (prev_F > 0.0) CHECK(rf / prev_F == doctest::Approx(4.0).epsilon(0.2));
    if (first_S == 0.0) first_S = rs;
    CHECK(rs == doctest::Approx(first_S).epsilon(0.05));
    prev_F = rf;
  }
}

TEST_CASE("diagonal multiplicative noise") {
  const auto p = make_refined_heat(0.25, 1.0 / 16, 0.7);
  CHECK(p.diffusion.kind == DiffusionKind::diagonal);
  CHECK(p.noise_dim() == p.dimension());
  Vector x(p.dimension(), 2.0), g(p.dimension());
  p.diffusion.values(0.0, x, g);
  for (double v : g) CHECK(v == doctest::Approx(1.4));
}
