#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mskrock {

/// Abscissa pair of an s-stage damped Chebyshev method:
/// omega0 = 1 + eps/s^2, omega1 = T_s(omega0) / T_s'(omega0).
struct StabilityPolyParams {
  int stages = 1;
  double damping = 0.0;
  double omega0 = 1.0;
  double omega1 = 1.0;

  static StabilityPolyParams make(int stages, double damping);
};

/// Scalar stochastic multirate test problem dX = (lambda + zeta) X dt + mu X dW.
struct MultirateTestParams {
  double lambda = 0.0;
  double zeta = 0.0;
  double mu = 0.0;
};

/// Stability-domain half length factor beta = 2 - 4 eps / 3.
double stability_beta(double eps);

/// (e^z - 1)/z with phi(0) = 1.
double phi(double z);

/// A_s(z) = T_s(omega0 + omega1 z) / T_s(omega0).
double stab_A(const StabilityPolyParams& p, double z);

/// Phi_m(z) = (A_m(z) - 1)/z with Phi_m(0) = 1.
double stab_Phi(const StabilityPolyParams& p, double z);

/// B_s(z) = U_{s-1}(omega0 + omega1 z) / U_{s-1}(omega0) * (1 + omega1 z / 2).
double stab_B(const StabilityPolyParams& p, double z);

/// Psi_r(z) for r = p.stages / 2. `p` carries the m = 2r stage abscissae.
double stab_Psi(const StabilityPolyParams& p, double z);

/// lambda + zeta + mu^2/2 < 0 with lambda, zeta <= 0.
bool ms_stable_exact(const MultirateTestParams& t);

/// E|A_s(p) + B_s(p) q xi|^2 = A_s(p)^2 + B_s(p)^2 q^2 for xi ~ N(0,1).
double ms_amplification(const StabilityPolyParams& outer, double p, double q);

/// Drift and noise arguments of the mSK-ROCK stability function on the test
/// problem: p_m = tau Phi_m(eta lambda)(lambda + zeta), q_r = Psi_r(eta lambda) mu sqrt(tau).
struct MultirateStabilityPoint {
  MultirateTestParams params;
  double tau = 0.0;
  int s = 0;
  int m = 0;
  double eta = 0.0;
  double p = 0.0;
  double q = 0.0;
  double amplification = 0.0;
  bool stable = false;
};

/// Relative slack used by every strict stability inequality.
inline constexpr double kStabilitySlack = 1e-12;

struct CertificationReport {
  std::vector<MultirateStabilityPoint> points;
  std::size_t violations = 0;
};

/// For each grid point selects (s, m, eta) with eps = 0 from rho_F = |lambda|,
/// rho_S = |zeta| and checks that the mean-square amplification is below one.
/// Throws InputError for a point outside the exact mean-square stability domain.
CertificationReport certify_theorem_stability(std::span<const MultirateTestParams> grid,
                                              double tau);

/// Single point of the certification chain.
MultirateStabilityPoint evaluate_stability_point(const MultirateTestParams& t, double tau,
                                                 double eps = 0.0);

/// Deterministic logarithmic grid inside the exact mean-square domain:
/// lambda in {0} U -[1e-2, lambda_max], zeta in -[1e-2, zeta_max], mu^2 = c 2|lambda + zeta|
/// with c log-spaced in [1e-4, 0.99].
std::vector<MultirateTestParams> ms_certification_grid(std::size_t per_axis,
                                                       double lambda_max = 1e6,
                                                       double zeta_max = 1e3);

} // namespace mskrock
