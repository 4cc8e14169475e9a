#include "mskrock/certification.hpp"

#include "mskrock/csv.hpp"
#include "mskrock/stability.hpp"
#include "mskrock/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mskrock {
namespace {

void record(InequalityCheck& c, double lhs, double rhs, double at) {
  ++c.points;
  const double excess = lhs - rhs;
  if (c.points == 1 || excess > c.worst) {
    c.worst = excess;
    c.worst_at = at;
  }
  if (excess > kStabilitySlack * std::max(1.0, std::abs(rhs))) ++c.violations;
}

double uniform_point(double a, double b, std::size_t i, std::size_t n) {
  return n == 1 ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
}

} // namespace

InequalityCheck check_phi_half_square(std::size_t n, double z_min) {
  if (n == 0 || !(z_min < 0.0)) throw InputError("check_phi_half_square: bad sampling");
  InequalityCheck c;
  c.name = "phi(z/2)^2 <= phi(z)";
  for (std::size_t i = 0; i < n; ++i) {
    const double z = uniform_point(z_min, 0.0, i, n);
    const double h = phi(0.5 * z);
    record(c, h * h, phi(z), z);
  }
  return c;
}

InequalityCheck check_psi_phi(int r, double eps, std::size_t n) {
  if (r < 1 || n == 0 || !(eps >= 0.0)) throw InputError("check_psi_phi: bad arguments");
  const int m = 2 * r;
  const auto p = StabilityPolyParams::make(m, eps);
  const double z_min = -stability_beta(eps) * m * m;
  InequalityCheck c;
  c.name = "Psi_" + std::to_string(r) + "^2 <= Phi_" + std::to_string(m) + " (eps=" +
           format_double(eps) + ")";
  for (std::size_t i = 0; i < n; ++i) {
    const double z = uniform_point(z_min, 0.0, i, n);
    const double psi = stab_Psi(p, z);
    record(c, psi * psi, stab_Phi(p, z), z);
  }
  return c;
}

InequalityCheck check_averaged_force_bound(double eta_abs_zeta, double zeta, std::size_t n,
                                           double lambda_min) {
  if (!(zeta < 0.0) || !(eta_abs_zeta > 0.0) || n < 2 || !(lambda_min < 0.0))
    throw InputError("check_averaged_force_bound: bad arguments");
  const double eta = eta_abs_zeta / std::abs(zeta);
  InequalityCheck c;
  c.name = "phi(eta lambda)(lambda + zeta) in [zeta, 0], eta|zeta|=" + format_double(eta_abs_zeta);
  const double lo = std::log10(std::abs(lambda_min)) - 16.0;
  const double hi = std::log10(std::abs(lambda_min));
  auto check = [&](double lambda) {
    const double v = phi(eta * lambda) * (lambda + zeta);
    // violation measured as distance outside [zeta, 0]
    const double below = zeta - v;
    const double above = v;
    record(c, std::max(below, above), 0.0, lambda);
  };
  check(0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) check(-std::pow(10.0, uniform_point(lo, hi, i, n - 1)));
  return c;
}

} // namespace mskrock
