#include "mskrock/stochastic.hpp"

#include "chain.hpp"
#include "mskrock/deterministic.hpp"

#include <algorithm>

namespace mskrock {
namespace detail {
ChainCoeffs outer_chain(const OuterCoefficients& c);
ChainCoeffs inner_chain(const InnerCoefficients& c, int stages);
} // namespace detail

namespace {

void check_dims(const DiffusionSpec& d, std::span<const double> x, std::span<const double> dW,
                const char* where) {
  if (dW.size() != d.noise_dim)
    throw InputError(std::string(where) + ": noise increment has dimension " +
                     std::to_string(dW.size()) + ", expected " + std::to_string(d.noise_dim));
  if (d.kind == DiffusionKind::diagonal && d.noise_dim != x.size())
    throw InputError(std::string(where) + ": diagonal diffusion needs l = n");
}

} // namespace

void skrock_step(const VectorField& f, const DiffusionSpec& d, const OuterCoefficients& c,
                 std::span<const double> x, double t, double tau, std::span<const double> dW,
                 std::span<double> out, Workspace& ws, StepStats* stats) {
  check_dims(d, x, dW, "skrock_step");
  ws.ensure(x.size(), d.scratch_size(x.size()));
  d.apply(t, x, dW, ws.noise, ws.diffusion);
  if (stats) ++stats->n_g;
  auto eval = [&](std::span<const double> y, std::span<double> fy) {
    f(t, y, fy);
    if (stats) {
      ++stats->n_fF;
      ++stats->n_fS;
    }
  };
  detail::run_chain(detail::outer_chain(c), x, tau, ws.noise, eval, ws.outer, out,
                    "skrock_step");
  if (stats) stats->s_used = c.s;
}

void skrock_step(const DriftPair& dp, const DiffusionSpec& d, const OuterCoefficients& c,
                 std::span<const double> x, double t, double tau, std::span<const double> dW,
                 std::span<double> out, Workspace& ws, StepStats* stats) {
  ws.ensure(x.size(), d.scratch_size(x.size()));
  VectorField f = [&](double tt, std::span<const double> y, std::span<double> fy) {
    dp.full(tt, y, fy, ws.sum);
  };
  skrock_step(f, d, c, x, t, tau, dW, out, ws, stats);
}

void damped_chains(const DriftPair& dp, const StageParams& p, std::span<const double> x,
                   double t, std::span<const double> injection, std::span<double> out,
                   Workspace& ws, StepStats* stats) {
  if (!(p.eta > 0.0)) throw InputError("damped diffusion: eta must be > 0");
  const std::size_t n = x.size();
  const auto& ic = p.inner;
  auto eval = [&](std::span<const double> v, std::span<double> fv) {
    dp.fast(t, v, fv);
    if (stats) ++stats->n_fF;
  };

  // noisy chain: first stage sees theta_1 * injection as its noise vector
  auto& scaled = ws.sum;
  for (std::size_t i = 0; i < n; ++i) scaled[i] = ic.theta1 * injection[i];
  detail::ChainCoeffs noisy = detail::inner_chain(ic, p.r);
  noisy.first_nu = ic.noise_beta1;
  noisy.first_kappa = ic.noise_gamma1;
  detail::run_chain(noisy, x, p.eta, scaled, eval, ws.inner, ws.chain_out,
                    "damped_diffusion");

  detail::run_chain(detail::inner_chain(ic, p.r), x, p.eta, {}, eval, ws.inner, out,
                    "damped_diffusion");

  const double inv_eta = 1.0 / p.eta;
  for (std::size_t i = 0; i < n; ++i) out[i] = (ws.chain_out[i] - out[i]) * inv_eta;
}

void damped_diffusion_vector(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                             std::span<const double> x, double t, std::span<double> out,
                             Workspace& ws, StepStats* stats) {
  if (d.kind != DiffusionKind::vector)
    throw InputError("damped_diffusion_vector: diffusion must be of vector kind");
  const std::size_t n = x.size();
  ws.ensure(n, d.scratch_size(n));
  d.values(t, x, ws.diffusion);
  if (stats) ++stats->n_g;
  for (std::size_t i = 0; i < n; ++i) ws.injection[i] = p.eta * ws.diffusion[i];
  damped_chains(dp, p, x, t, ws.injection, out, ws, stats);
}

void damped_diffusion_matrix(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                             std::span<const double> x, double t, std::span<const double> dW,
                             std::span<double> out, Workspace& ws, StepStats* stats) {
  check_dims(d, x, dW, "damped_diffusion_matrix");
  const std::size_t n = x.size();
  ws.ensure(n, d.scratch_size(n));
  d.apply(t, x, dW, ws.injection, ws.diffusion);
  if (stats) ++stats->n_g;
  for (std::size_t i = 0; i < n; ++i) ws.injection[i] *= p.eta;
  damped_chains(dp, p, x, t, ws.injection, out, ws, stats);
}

namespace {

// Per-column damped diffusion contracted with dW. The evaluated g stays in
// ws.diffusion; chain_out/sum are used by damped_chains, so the column and the
// accumulated result live in `column` and `acc`.
void damped_diffusion_per_column(const DriftPair& dp, const DiffusionSpec& d,
                                 const StageParams& p, std::span<const double> x, double t,
                                 std::span<const double> dW, std::span<double> acc,
                                 Workspace& ws, StepStats* stats) {
  const std::size_t n = x.size();
  d.evaluate(t, x, ws.diffusion);
  if (stats) ++stats->n_g;
  Vector column(n);
  Vector gbar(n);
  std::fill(acc.begin(), acc.end(), 0.0);
  for (std::size_t j = 0; j < d.noise_dim; ++j) {
    d.column(ws.diffusion, j, column);
    for (std::size_t i = 0; i < n; ++i) ws.injection[i] = p.eta * column[i];
    damped_chains(dp, p, x, t, ws.injection, gbar, ws, stats);
    for (std::size_t i = 0; i < n; ++i) acc[i] += gbar[i] * dW[j];
  }
}

} // namespace

void mskrock_step(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                  std::span<const double> x, double t, std::span<const double> dW,
                  std::span<double> out, Workspace& ws, StepStats* stats, NoiseMode mode) {
  check_dims(d, x, dW, "mskrock_step");
  const std::size_t n = x.size();
  ws.ensure(n, d.scratch_size(n));

  if (d.kind == DiffusionKind::vector) {
    damped_diffusion_vector(dp, d, p, x, t, ws.noise, ws, stats);
    for (std::size_t i = 0; i < n; ++i) ws.noise[i] *= dW[0];
  } else if (mode == NoiseMode::combined) {
    damped_diffusion_matrix(dp, d, p, x, t, dW, ws.noise, ws, stats);
  } else {
    damped_diffusion_per_column(dp, d, p, x, t, dW, ws.noise, ws, stats);
  }

  auto eval = [&](std::span<const double> y, std::span<double> fy) {
    averaged_force(dp, p, y, t, fy, ws, stats);
  };
  detail::run_chain(detail::outer_chain(p.outer), x, p.tau, ws.noise, eval, ws.outer, out,
                    "mskrock_step");
  if (stats) {
    stats->s_used = p.s;
    stats->m_used = p.m;
    stats->eta = p.eta;
  }
}

Vector mskrock_step(const DriftPair& dp, const DiffusionSpec& d, const StageParams& p,
                    std::span<const double> x, double t, std::span<const double> dW,
                    StepStats* stats) {
  Workspace ws(x.size(), d.scratch_size(x.size()));
  Vector out(x.size());
  mskrock_step(dp, d, p, x, t, dW, out, ws, stats);
  return out;
}

} // namespace mskrock
