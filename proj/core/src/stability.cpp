#include "mskrock/stability.hpp"

#include "mskrock/chebyshev.hpp"
#include "mskrock/stages.hpp"
#include "mskrock/types.hpp"

#include <cmath>
#include <stdexcept>

namespace mskrock {

StabilityPolyParams StabilityPolyParams::make(int stages, double damping) {
  if (stages < 1) throw InputError("StabilityPolyParams: stages must be >= 1");
  if (!(damping >= 0.0) || !std::isfinite(damping))
    throw InputError("StabilityPolyParams: damping must be finite and >= 0");
  StabilityPolyParams p;
  p.stages = stages;
  p.damping = damping;
  p.omega0 = 1.0 + damping / (static_cast<double>(stages) * stages);
  const auto te = cheb::T_with_derivative(stages, p.omega0);
  p.omega1 = te.value / te.derivative;
  return p;
}

double stability_beta(double eps) { return 2.0 - 4.0 * eps / 3.0; }

double phi(double z) {
  if (!std::isfinite(z)) throw std::domain_error("phi: non-finite argument");
  if (std::abs(z) < 1e-6) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}

double stab_A(const StabilityPolyParams& p, double z) {
  return cheb::T(p.stages, p.omega0 + p.omega1 * z) / cheb::T(p.stages, p.omega0);
}

double stab_Phi(const StabilityPolyParams& p, double z) {
  if (z == 0.0) return 1.0;
  if (std::abs(z) < 1e-8) {
    // A'(0) = omega1 T'(omega0) / T(omega0)
    const auto te = cheb::T_with_derivative(p.stages, p.omega0);
    return p.omega1 * te.derivative / te.value;
  }
  return (stab_A(p, z) - 1.0) / z;
}

double stab_B(const StabilityPolyParams& p, double z) {
  const int k = p.stages - 1;
  return cheb::U(k, p.omega0 + p.omega1 * z) / cheb::U(k, p.omega0) *
         (1.0 + 0.5 * p.omega1 * z);
}

double stab_Psi(const StabilityPolyParams& p, double z) {
  if (p.stages < 2 || p.stages % 2 != 0)
    throw InputError("stab_Psi: params must carry an even stage count m = 2r");
  const int k = p.stages / 2 - 1;
  return cheb::U(k, p.omega0 + p.omega1 * z) / cheb::U(k, p.omega0) *
         (1.0 + 0.5 * p.omega1 * z);
}

bool ms_stable_exact(const MultirateTestParams& t) {
  return t.lambda <= 0.0 && t.zeta <= 0.0 && t.lambda + t.zeta + 0.5 * t.mu * t.mu < 0.0;
}

double ms_amplification(const StabilityPolyParams& outer, double p, double q) {
  const double a = stab_A(outer, p);
  const double b = stab_B(outer, p);
  return a * a + b * b * q * q;
}

MultirateStabilityPoint evaluate_stability_point(const MultirateTestParams& t, double tau,
                                                 double eps) {
  const StageParams sp = select_stages(tau, std::abs(t.lambda), std::abs(t.zeta), eps, 1.0);
  MultirateStabilityPoint pt;
  pt.params = t;
  pt.tau = tau;
  pt.s = sp.s;
  pt.m = sp.m;
  pt.eta = sp.eta;
  const auto outer = StabilityPolyParams::make(sp.s, eps);
  const auto inner = StabilityPolyParams::make(sp.m, eps);
  const double z = sp.eta * t.lambda;
  pt.p = tau * stab_Phi(inner, z) * (t.lambda + t.zeta);
  pt.q = stab_Psi(inner, z) * t.mu * std::sqrt(tau);
  pt.amplification = ms_amplification(outer, pt.p, pt.q);
  pt.stable = pt.amplification < 1.0 - kStabilitySlack;
  return pt;
}

CertificationReport certify_theorem_stability(std::span<const MultirateTestParams> grid,
                                              double tau) {
  if (!(tau > 0.0)) throw InputError("certify_theorem_stability: tau must be > 0");
  CertificationReport report;
  report.points.reserve(grid.size());
  for (const auto& t : grid) {
    if (!ms_stable_exact(t))
      throw InputError("certify_theorem_stability: grid point outside the mean-square domain");
    auto pt = evaluate_stability_point(t, tau, 0.0);
    if (!pt.stable) ++report.violations;
    report.points.push_back(pt);
  }
  return report;
}

std::vector<MultirateTestParams> ms_certification_grid(std::size_t per_axis, double lambda_max,
                                                       double zeta_max) {
  if (per_axis < 2) throw InputError("ms_certification_grid: need at least 2 points per axis");
  auto logspace = [](double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
  };
  std::vector<double> lambdas{0.0};
  for (double v : logspace(1e-2, lambda_max, per_axis - 1)) lambdas.push_back(-v);
  const auto zetas = logspace(1e-2, zeta_max, per_axis);
  const auto fractions = logspace(1e-4, 0.99, per_axis);

  std::vector<MultirateTestParams> grid;
  grid.reserve(per_axis * per_axis * per_axis);
  for (double l : lambdas)
    for (double z : zetas)
      for (double c : fractions) {
        const double mu = std::sqrt(c * 2.0 * std::abs(l - z));
        grid.push_back({l, -z, mu});
      }
  return grid;
}

} // namespace mskrock
