#pragma once

namespace mskrock {

/// Relative cost of one step, counted in units of one evaluation of f_F + f_S + g.
/// c_F, c_S are the relative costs of f_F and f_S (c_g = 1 - c_F - c_S).
double mskrock_step_cost(double s, double m, double c_F, double c_S);
double skrock_step_cost(double s, double c_F, double c_S);

struct CostEstimate {
  double s = 0.0;         ///< mSK-ROCK outer stages, sqrt(p_S / 2)
  double m = 0.0;         ///< mSK-ROCK inner stages, sqrt(3 p_F / p_S + 1)
  double s_skrock = 0.0;  ///< SK-ROCK stages from the combined radius, sqrt((p_F + p_S) / 2)
  double cost_mskrock = 0.0;
  double cost_skrock = 0.0;
  double speedup = 0.0;   ///< cost_skrock / cost_mskrock
};

/// Theoretical per-step costs with eps = 0 and real-valued stage numbers,
/// p_F = tau rho_F, p_S = tau rho_S > 0, assuming rho = rho_F + rho_S.
CostEstimate cost_model(double p_F, double p_S, double c_F, double c_S);

/// Closed-form speed-up S(p_F, p_S, c_F, c_S).
double theoretical_speedup(double p_F, double p_S, double c_F, double c_S);

} // namespace mskrock
