#include "mskrock/stages.hpp"

#include "mskrock/chebyshev.hpp"
#include "mskrock/stability.hpp"
#include "mskrock/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mskrock {

OuterCoefficients OuterCoefficients::make(int s, double eps) {
  const auto poly = StabilityPolyParams::make(s, eps);
  OuterCoefficients c;
  c.s = s;
  c.eps = eps;
  c.omega0 = poly.omega0;
  c.omega1 = poly.omega1;
  c.b.resize(s + 1);
  for (int j = 0; j <= s; ++j) c.b[j] = 1.0 / cheb::T(j, c.omega0);
  c.mu.assign(s + 1, 0.0);
  c.nu.assign(s + 1, 0.0);
  c.kappa.assign(s + 1, 0.0);
  c.mu[1] = c.omega1 / c.omega0;
  c.nu[1] = s * c.omega1 / 2.0;
  c.kappa[1] = s * c.omega1 / c.omega0;
  for (int j = 2; j <= s; ++j) {
    c.mu[j] = 2.0 * c.omega1 * c.b[j] / c.b[j - 1];
    c.nu[j] = 2.0 * c.omega0 * c.b[j] / c.b[j - 1];
    c.kappa[j] = -c.b[j] / c.b[j - 2];
  }
  return c;
}

InnerCoefficients InnerCoefficients::make(int m, double eps) {
  if (m < 2 || m % 2 != 0) throw InputError("InnerCoefficients: m must be even and >= 2");
  const auto poly = StabilityPolyParams::make(m, eps);
  InnerCoefficients c;
  c.m = m;
  c.eps = eps;
  c.omega0 = poly.omega0;
  c.omega1 = poly.omega1;
  c.a.resize(m + 1);
  for (int j = 0; j <= m; ++j) c.a[j] = 1.0 / cheb::T(j, c.omega0);
  c.alpha.assign(m + 1, 0.0);
  c.beta.assign(m + 1, 0.0);
  c.gamma.assign(m + 1, 0.0);
  c.alpha[1] = c.omega1 / c.omega0;
  for (int j = 2; j <= m; ++j) {
    c.alpha[j] = 2.0 * c.omega1 * c.a[j] / c.a[j - 1];
    c.beta[j] = 2.0 * c.omega0 * c.a[j] / c.a[j - 1];
    c.gamma[j] = -c.a[j] / c.a[j - 2];
  }
  const int r = m / 2;
  c.noise_beta1 = m * c.omega1 / 2.0;
  c.noise_gamma1 = m * c.omega1 / c.omega0;
  const auto tr = cheb::T_with_derivative(r, c.omega0);
  c.theta1 = tr.value / (2.0 * c.omega1 * tr.derivative);
  return c;
}

double coupling_time(double tau, int s, int m, double eps) {
  const double beta = stability_beta(eps);
  const double m2 = static_cast<double>(m) * m;
  return 6.0 * tau / (beta * s * s) * m2 / (m2 - 1.0);
}

StageParams build_stage_params(int s, int m, double tau, double eps) {
  if (s < 1) throw InputError("build_stage_params: s must be >= 1");
  if (m < 2 || m % 2 != 0) throw InputError("build_stage_params: m must be even and >= 2");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InputError("build_stage_params: tau must be > 0");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InputError("build_stage_params: eps must be >= 0");
  StageParams p;
  p.s = s;
  p.m = m;
  p.r = m / 2;
  p.tau = tau;
  p.eps = eps;
  p.beta = stability_beta(eps);
  p.eta = coupling_time(tau, s, m, eps);
  p.outer = OuterCoefficients::make(s, eps);
  p.inner = InnerCoefficients::make(m, eps);
  return p;
}

namespace {

void check_radius(double rho, const char* name) {
  if (!std::isfinite(rho) || rho < 0.0)
    throw InputError(std::string("select_stages: ") + name + " must be finite and >= 0");
}

int smallest_stage_count(double target, double beta) {
  // smallest s >= 1 with beta s^2 >= target; exact integer ties are kept
  int s = std::max(1, static_cast<int>(std::ceil(std::sqrt(target / beta))));
  while (s > 1 && beta * (s - 1.0) * (s - 1.0) >= target) --s;
  while (beta * static_cast<double>(s) * s < target) ++s;
  return s;
}

} // namespace

int select_outer_stages(double tau, double rho, double eps, double safety) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InputError("select_stages: tau must be > 0");
  check_radius(rho, "rho");
  return smallest_stage_count(tau * rho * safety, stability_beta(eps));
}

StageParams select_stages(double tau, double rho_F, double rho_S, double eps, double safety) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InputError("select_stages: tau must be > 0");
  check_radius(rho_F, "rho_F");
  check_radius(rho_S, "rho_S");
  if (!(safety >= 1.0)) throw InputError("select_stages: safety factor must be >= 1");
  const double beta = stability_beta(eps);
  const int s = smallest_stage_count(tau * rho_S * safety, beta);
  // eta rho_F <= beta m^2  <=>  6 tau rho_F / (beta s^2) <= beta (m^2 - 1)
  const double target = 6.0 * tau * rho_F * safety / (beta * s * s);
  int m = std::max(2, static_cast<int>(std::ceil(std::sqrt(target / beta + 1.0))));
  if (m % 2 != 0) ++m;
  while (m > 2 && beta * ((m - 2.0) * (m - 2.0) - 1.0) >= target) m -= 2;
  while (beta * (static_cast<double>(m) * m - 1.0) < target) m += 2;
  return build_stage_params(s, m, tau, eps);
}

StageCheckReport stage_abscissae_check(const OuterCoefficients& c, double tol) {
  StageCheckReport rep;
  const int s = c.s;
  double sum = 0.0;
  double min_w = 0.0;
  for (int k = 1; k <= s; ++k) {
    const double w = c.b[s] / c.b[k] * cheb::U(s - k, c.omega0) * c.mu[k];
    sum += w;
    min_w = (k == 1) ? w : std::min(min_w, w);
  }
  rep.consistency_sum = sum;
  rep.min_weight = min_w;
  rep.noise_weight = c.b[s] / c.b[1] * cheb::U(s - 1, c.omega0) * c.kappa[1];
  std::ostringstream msg;
  bool ok = true;
  if (std::abs(sum - 1.0) > tol) {
    ok = false;
    msg << "drift weights sum to " << sum << "; ";
  }
  if (std::abs(rep.noise_weight - 1.0) > tol) {
    ok = false;
    msg << "noise weight is " << rep.noise_weight << "; ";
  }
  if (min_w < -1e-14) {
    ok = false;
    msg << "negative drift weight " << min_w << "; ";
  }
  rep.ok = ok;
  rep.message = msg.str();
  return rep;
}

StageCheckReport stage_abscissae_check(const StageParams& p, double tol) {
  return stage_abscissae_check(p.outer, tol);
}

} // namespace mskrock
