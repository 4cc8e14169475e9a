#pragma once

#include "mskrock/model.hpp"
#include "mskrock/stages.hpp"

#include <span>

namespace mskrock {

/// One s-stage RKC step of y' = f(t, y); f is evaluated at the base time t.
void rkc_step(const OuterCoefficients& c, const VectorField& f, std::span<const double> y,
              double t, double tau, std::span<double> out, Workspace& ws);
Vector rkc_step(const OuterCoefficients& c, const VectorField& f, std::span<const double> y,
                double t, double tau);

/// Discrete averaged force (u_m - y)/eta, where u_m is one m-stage RKC step of
/// length eta of u' = f_F(u) + f_S(y) with f_S(y) frozen. Costs m f_F and one f_S.
void averaged_force(const DriftPair& dp, const StageParams& p, std::span<const double> y,
                    double t, std::span<double> out, Workspace& ws, StepStats* stats = nullptr);
Vector averaged_force(const DriftPair& dp, const StageParams& p, std::span<const double> y,
                      double t);

/// One mRKC step: the outer s-stage RKC recurrence driven by the averaged force.
void mrkc_step(const DriftPair& dp, const StageParams& p, std::span<const double> y, double t,
               std::span<double> out, Workspace& ws, StepStats* stats = nullptr);
Vector mrkc_step(const DriftPair& dp, const StageParams& p, std::span<const double> y, double t);

/// Exact averaged force of the scalar multirate test problem, phi(eta lambda)(lambda + zeta) y.
double exact_averaged_force_oracle(double lambda, double zeta, double eta, double y);

} // namespace mskrock
