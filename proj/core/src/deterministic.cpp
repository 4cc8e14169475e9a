#include "mskrock/deterministic.hpp"

#include "chain.hpp"
#include "mskrock/stability.hpp"

#include <stdexcept>

namespace mskrock {
namespace detail {

ChainCoeffs outer_chain(const OuterCoefficients& c) {
  return {c.s, c.mu, c.nu, c.kappa, c.mu[1], c.nu[1], c.kappa[1]};
}

ChainCoeffs inner_chain(const InnerCoefficients& c, int stages) {
  return {stages, c.alpha, c.beta, c.gamma, c.alpha[1], 0.0, 0.0};
}

} // namespace detail

void rkc_step(const OuterCoefficients& c, const VectorField& f, std::span<const double> y,
              double t, double tau, std::span<double> out, Workspace& ws) {
  auto eval = [&](std::span<const double> x, std::span<double> fx) { f(t, x, fx); };
  detail::run_chain(detail::outer_chain(c), y, tau, {}, eval, ws.outer, out, "rkc_step");
}

Vector rkc_step(const OuterCoefficients& c, const VectorField& f, std::span<const double> y,
                double t, double tau) {
  Workspace ws(y.size(), y.size());
  Vector out(y.size());
  rkc_step(c, f, y, t, tau, out, ws);
  return out;
}

void averaged_force(const DriftPair& dp, const StageParams& p, std::span<const double> y,
                    double t, std::span<double> out, Workspace& ws, StepStats* stats) {
  if (!(p.eta > 0.0)) throw InputError("averaged_force: eta must be > 0");
  const std::size_t n = y.size();
  dp.slow(t, y, ws.frozen_slow);
  if (stats) ++stats->n_fS;
  const auto& fs = ws.frozen_slow;
  auto eval = [&](std::span<const double> u, std::span<double> fu) {
    dp.fast(t, u, fu);
    if (stats) ++stats->n_fF;
    for (std::size_t i = 0; i < n; ++i) fu[i] += fs[i];
  };
  detail::run_chain(detail::inner_chain(p.inner, p.m), y, p.eta, {}, eval, ws.inner, out,
                    "averaged_force");
  const double inv_eta = 1.0 / p.eta;
  for (std::size_t i = 0; i < n; ++i) out[i] = (out[i] - y[i]) * inv_eta;
}

Vector averaged_force(const DriftPair& dp, const StageParams& p, std::span<const double> y,
                      double t) {
  Workspace ws(y.size(), y.size());
  Vector out(y.size());
  averaged_force(dp, p, y, t, out, ws);
  return out;
}

void mrkc_step(const DriftPair& dp, const StageParams& p, std::span<const double> y, double t,
               std::span<double> out, Workspace& ws, StepStats* stats) {
  auto eval = [&](std::span<const double> x, std::span<double> fx) {
    averaged_force(dp, p, x, t, fx, ws, stats);
  };
  detail::run_chain(detail::outer_chain(p.outer), y, p.tau, {}, eval, ws.outer, out,
                    "mrkc_step");
  if (stats) {
    stats->s_used = p.s;
    stats->m_used = p.m;
    stats->eta = p.eta;
  }
}

Vector mrkc_step(const DriftPair& dp, const StageParams& p, std::span<const double> y,
                 double t) {
  Workspace ws(y.size(), y.size());
  Vector out(y.size());
  mrkc_step(dp, p, y, t, out, ws);
  return out;
}

double exact_averaged_force_oracle(double lambda, double zeta, double eta, double y) {
  if (eta < 0.0) throw InputError("exact_averaged_force_oracle: eta must be >= 0");
  return phi(eta * lambda) * (lambda + zeta) * y;
}

} // namespace mskrock
