#include "mskrock/problems.hpp"

#include <cmath>

namespace mskrock {

void SplitSdeProblem::validate() const {
  if (!drift.fast || !drift.slow) throw InputError(name + ": drift pair is incomplete");
  if (x0.size() != drift.dimension)
    throw InputError(name + ": initial state has dimension " + std::to_string(x0.size()) +
                     ", drift has " + std::to_string(drift.dimension));
  if (!(horizon > 0.0)) throw InputError(name + ": horizon must be > 0");
  if (diffusion.kind == DiffusionKind::matrix ? !diffusion.matrix : !diffusion.values)
    throw InputError(name + ": diffusion is undefined");
  if (diffusion.kind == DiffusionKind::diagonal && diffusion.noise_dim != drift.dimension)
    throw InputError(name + ": diagonal diffusion needs l = n");
}

SplitSdeProblem make_multirate_test(double lambda, double zeta, double mu, double x0,
                                    double horizon) {
  if (lambda > 0.0 || zeta > 0.0)
    throw InputError("multirate test problem: lambda and zeta must be <= 0");
  SplitSdeProblem p;
  p.name = "multirate-test";
  p.drift.dimension = 1;
  p.drift.fast = [lambda](double, std::span<const double> x, std::span<double> out) {
    out[0] = lambda * x[0];
  };
  p.drift.slow = [zeta](double, std::span<const double> x, std::span<double> out) {
    out[0] = zeta * x[0];
  };
  p.diffusion = DiffusionSpec::make_vector(
      [mu](double, std::span<const double> x, std::span<double> out) { out[0] = mu * x[0]; });
  p.x0 = {x0};
  p.horizon = horizon;
  p.exact_solution = [=](double t, std::span<const double> w) {
    return Vector{x0 * std::exp((lambda + zeta - 0.5 * mu * mu) * t + mu * w[0])};
  };
  p.weak_functional = [](std::span<const double> x) { return x[0] * x[0]; };
  return p;
}

SplitSdeProblem make_sinh_problem() {
  SplitSdeProblem p;
  p.name = "sinh";
  p.drift.dimension = 1;
  p.drift.fast = [](double, std::span<const double> x, std::span<double> out) {
    out[0] = 0.5 * std::sqrt(x[0] * x[0] + 1.0);
  };
  p.drift.slow = [](double, std::span<const double> x, std::span<double> out) {
    out[0] = 0.25 * x[0];
  };
  p.diffusion = DiffusionSpec::make_vector(
      [](double, std::span<const double> x, std::span<double> out) {
        out[0] = std::sqrt(0.5 * (x[0] * x[0] + 1.0));
      });
  p.x0 = {0.0};
  p.horizon = 1.0;
  p.exact_solution = [](double t, std::span<const double> w) {
    return Vector{std::sinh(0.5 * t + w[0] / std::sqrt(2.0))};
  };
  p.weak_functional = [](std::span<const double> x) { return std::asinh(x[0]); };
  return p;
}

SplitSdeProblem make_split_cosine_ode(double y0, double horizon) {
  SplitSdeProblem p;
  p.name = "split-cosine";
  p.drift.dimension = 1;
  p.drift.fast = [](double, std::span<const double> x, std::span<double> out) {
    out[0] = -x[0];
  };
  p.drift.slow = [](double, std::span<const double> x, std::span<double> out) {
    out[0] = std::cos(x[0]);
  };
  p.diffusion = DiffusionSpec::make_vector(
      [](double, std::span<const double>, std::span<double> out) { out[0] = 0.0; });
  p.x0 = {y0};
  p.horizon = horizon;
  p.weak_functional = [](std::span<const double> x) { return x[0]; };
  return p;
}

} // namespace mskrock
