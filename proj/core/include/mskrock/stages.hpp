#pragma once

#include <string>
#include <vector>

namespace mskrock {

/// Default damping of the Chebyshev stability polynomials.
inline constexpr double kDefaultDamping = 0.05;
/// Multiplier applied to estimated spectral radii before stage selection.
inline constexpr double kDefaultRadiusSafety = 1.05;

/// Coefficients of one s-stage damped Chebyshev (RKC / SK-ROCK) outer step.
/// Index 0 is unused so that mu[j], nu[j], kappa[j] match stage j = 1..s.
/// The first-stage triple (mu[1], nu[1], kappa[1]) is the SK-ROCK one; plain
/// RKC uses only mu[1].
struct OuterCoefficients {
  int s = 1;
  double eps = 0.0;
  double omega0 = 1.0;
  double omega1 = 1.0;
  std::vector<double> mu;
  std::vector<double> nu;
  std::vector<double> kappa;
  std::vector<double> b; // b_j = 1 / T_j(omega0), j = 0..s

  static OuterCoefficients make(int s, double eps);
};

/// Coefficients of the m-stage inner RKC scheme (averaged force) and the
/// noise-injecting first stage of the r = m/2 stage damped-diffusion chains.
struct InnerCoefficients {
  int m = 2;
  double eps = 0.0;
  double omega0 = 1.0;
  double omega1 = 1.0;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;
  std::vector<double> a; // a_j = 1 / T_j(omega0), j = 0..m
  double noise_beta1 = 0.0;
  double noise_gamma1 = 0.0;
  double theta1 = 0.0;

  static InnerCoefficients make(int m, double eps);
};

struct StageParams {
  int s = 1;
  int m = 2;
  int r = 1;
  double tau = 0.0;
  double eta = 0.0;
  double eps = kDefaultDamping;
  double beta = 2.0;
  OuterCoefficients outer;
  InnerCoefficients inner;
};

/// eta = 6 tau / (beta s^2) * m^2 / (m^2 - 1).
double coupling_time(double tau, int s, int m, double eps);

/// Builds every coefficient for fixed (s, m). m must be even and >= 2.
StageParams build_stage_params(int s, int m, double tau, double eps = kDefaultDamping);

/// Smallest s >= 1 with beta s^2 >= tau rho_S and smallest even m >= 2 with
/// eta rho_F <= beta m^2, radii multiplied by `safety` first.
StageParams select_stages(double tau, double rho_F, double rho_S,
                          double eps = kDefaultDamping, double safety = 1.0);

/// Smallest s >= 1 with beta s^2 >= tau rho (single-rate RKC / SK-ROCK).
int select_outer_stages(double tau, double rho, double eps = kDefaultDamping,
                        double safety = 1.0);

struct StageCheckReport {
  double consistency_sum = 0.0;   // sum_k (b_s/b_k) U_{s-k}(omega0) mu_k
  double min_weight = 0.0;        // min_k of the summands
  double noise_weight = 0.0;      // (b_s/b_1) U_{s-1}(omega0) kappa_1
  bool ok = false;
  std::string message;
};

/// Verifies the outer consistency identities and the non-negativity of the
/// stage weights.
StageCheckReport stage_abscissae_check(const StageParams& p, double tol = 1e-12);
StageCheckReport stage_abscissae_check(const OuterCoefficients& c, double tol = 1e-12);

} // namespace mskrock
