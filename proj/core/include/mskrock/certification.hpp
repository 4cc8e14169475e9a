#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mskrock {

/// Outcome of a sampled inequality check; `worst` is max(lhs - rhs) over the samples.
struct InequalityCheck {
  std::string name;
  std::size_t points = 0;
  std::size_t violations = 0;
  double worst = 0.0;
  double worst_at = 0.0;

  bool passed() const { return violations == 0; }
};

/// phi(z/2)^2 <= phi(z) on n uniform points of [z_min, 0].
InequalityCheck check_phi_half_square(std::size_t n, double z_min = -1e3);

/// Psi_r(z)^2 <= Phi_{2r}(z) on n uniform points of [-beta (2r)^2, 0].
InequalityCheck check_psi_phi(int r, double eps, std::size_t n);

/// phi(eta lambda)(lambda + zeta) in [zeta, 0] on a log grid of lambda in
/// [lambda_min, 0] with eta = eta_abs_zeta / |zeta|. Holds for every lambda
/// exactly when eta |zeta| >= 2.
InequalityCheck check_averaged_force_bound(double eta_abs_zeta, double zeta = -1.0,
                                           std::size_t n = 20001, double lambda_min = -1e8);

} // namespace mskrock
