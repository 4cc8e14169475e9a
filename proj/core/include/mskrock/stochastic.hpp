#pragma once

#include "mskrock/model.hpp"
#include "mskrock/stages.hpp"

#include <span>

namespace mskrock {

/// How matrix-valued diffusion is stabilized.
enum class NoiseMode {
  combined,  ///< inject eta g(x) dW once; one pair of chains regardless of l
  per_column ///< one pair of chains per column of g, then contract with dW
};

/// One SK-ROCK step with drift f = f_F + f_S and noise Q = g(x) dW.
void skrock_step(const DriftPair& dp, const DiffusionSpec& d, const OuterCoefficients& c,
                 std::span<const double> x, double t, double tau, std::span<const double> dW,
                 std::span<double> out, Workspace& ws, StepStats* stats = nullptr);
/// Same with a single unsplit drift.
void skrock_step(const VectorField& f, const DiffusionSpec& d, const OuterCoefficients& c,
                 std::span<const double> x, double t, double tau, std::span<const double> dW,
                 std::span<double> out, Workspace& ws, StepStats* stats = nullptr);

/// Damped diffusion (v_r - vbar_r)/eta for a vector diffusion; result is not
/// multiplied by dW.
void damped_diffusion_vector(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                             std::span<const double> x, double t, std::span<double> out,
                             Workspace& ws, StepStats* stats = nullptr);

/// Damped diffusion with eta g(x) dW injected; the result already contains dW.
void damped_diffusion_matrix(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                             std::span<const double> x, double t, std::span<const double> dW,
                             std::span<double> out, Workspace& ws, StepStats* stats = nullptr);

/// Damped chains for an arbitrary injected vector (eta g or eta g dW).
void damped_chains(const DriftPair& dp, const StageParams& p, std::span<const double> x,
                   double t, std::span<const double> injection, std::span<double> out,
                   Workspace& ws, StepStats* stats = nullptr);

/// One mSK-ROCK step. With vector diffusion n_fF = (s+1) m, n_fS = s, n_g = 1.
void mskrock_step(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                  std::span<const double> x, double t, std::span<const double> dW,
                  std::span<double> out, Workspace& ws, StepStats* stats = nullptr,
                  NoiseMode mode = NoiseMode::combined);

Vector mskrock_step(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                    std::span<const double> x, double t, std::span<const double> dW,
                    StepStats* stats = nullptr);

} // namespace mskrock
