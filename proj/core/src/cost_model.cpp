#include "mskrock/cost_model.hpp"

#include "mskrock/types.hpp"

#include <cmath>

namespace mskrock {
namespace {

void check_costs(double c_F, double c_S) {
  if (c_F < 0.0 || c_S < 0.0 || c_F + c_S > 1.0 + 1e-15)
    throw InputError("cost model: need c_F, c_S >= 0 and c_F + c_S <= 1");
}

} // namespace

double mskrock_step_cost(double s, double m, double c_F, double c_S) {
  check_costs(c_F, c_S);
  return ((s + 1.0) * m - 1.0) * c_F + (s - 1.0) * c_S + 1.0;
}

double skrock_step_cost(double s, double c_F, double c_S) {
  check_costs(c_F, c_S);
  return (s - 1.0) * (c_F + c_S) + 1.0;
}

double theoretical_speedup(double p_F, double p_S, double c_F, double c_S) {
  check_costs(c_F, c_S);
  if (!(p_S > 0.0) || p_F < 0.0) throw InputError("cost model: need p_S > 0 and p_F >= 0");
  const double r2 = std::sqrt(2.0);
  const double num = (std::sqrt(p_F + p_S) - r2) * (c_F + c_S) + r2;
  const double den = ((std::sqrt(p_S) + r2) * std::sqrt(3.0 * p_F / p_S + 1.0) - r2) * c_F +
                     (std::sqrt(p_S) - r2) * c_S + r2;
  return num / den;
}

CostEstimate cost_model(double p_F, double p_S, double c_F, double c_S) {
  CostEstimate e;
  e.speedup = theoretical_speedup(p_F, p_S, c_F, c_S);
  e.s = std::sqrt(p_S / 2.0);
  e.m = std::sqrt(3.0 * p_F / p_S + 1.0);
  e.s_skrock = std::sqrt((p_F + p_S) / 2.0);
  e.cost_mskrock = mskrock_step_cost(e.s, e.m, c_F, c_S);
  e.cost_skrock = skrock_step_cost(e.s_skrock, c_F, c_S);
  return e;
}

} // namespace mskrock
