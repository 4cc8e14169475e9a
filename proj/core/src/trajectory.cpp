#include "mskrock/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace mskrock {

const char* method_name(Method m) { return m == Method::skrock ? "skrock" : "mskrock"; }

Method parse_method(const std::string& name) {
  if (name == "skrock") return Method::skrock;
  if (name == "mskrock") return Method::mskrock;
  throw InputError("unknown method '" + name + "' (expected skrock or mskrock)");
}

TrajectoryIntegrator::TrajectoryIntegrator(const SplitSdeProblem& problem, Method method,
                                           StageControl control, double tau)
    : problem_(problem), method_(method), control_(std::move(control)), tau_(tau),
      steps_(steps_for(problem.horizon, tau)) {
  problem_.validate();
  if (control_.reestimate_every < 1) throw InputError("reestimate_every must be >= 1");
  if (control_.fixed) {
    const auto [s, m] = *control_.fixed;
    if (s < 1) throw InputError("fixed outer stage count must be >= 1");
    if (method_ == Method::mskrock && (m < 2 || m % 2 != 0))
      throw InputError("fixed inner stage count must be even and >= 2");
  }
  const std::size_t n = problem_.dimension();
  ws_.ensure(n, problem_.diffusion.scratch_size(n));
  scratch_.resize(n);
}

const StageParams& TrajectoryIntegrator::params_for(int s, int m) {
  auto it = cache_.find({s, m});
  if (it == cache_.end())
    it = cache_.emplace(std::pair{s, m}, build_stage_params(s, m, tau_, control_.eps)).first;
  return it->second;
}

const OuterCoefficients& TrajectoryIntegrator::outer_for(int s) {
  auto it = outer_cache_.find(s);
  if (it == outer_cache_.end())
    it = outer_cache_.emplace(s, OuterCoefficients::make(s, control_.eps)).first;
  return it->second;
}

void TrajectoryIntegrator::update_radii(double t, std::span<const double> x) {
  if (control_.fixed) return;
  const bool known = method_ == Method::mskrock ? (control_.rho_F && control_.rho_S)
                                                : (control_.rho_F || control_.rho_S);
  if (known) {
    rho_F_ = control_.rho_F.value_or(0.0);
    rho_S_ = control_.rho_S.value_or(0.0);
    have_radii_ = true;
    return;
  }
  if (have_radii_ && since_estimate_ < static_cast<std::size_t>(control_.reestimate_every))
    return;
  since_estimate_ = 0;
  const auto& dp = problem_.drift;
  if (method_ == Method::mskrock) {
    const auto fast = estimate_radius(
        [&](std::span<const double> y, std::span<double> o) { dp.fast(t, y, o); }, x, warm_F_,
        control_.power);
    const auto slow = estimate_radius(
        [&](std::span<const double> y, std::span<double> o) { dp.slow(t, y, o); }, x, warm_S_,
        control_.power);
    rho_F_ = fast.rho;
    rho_S_ = slow.rho;
    warm_F_ = fast.eigvec;
    warm_S_ = slow.eigvec;
  } else {
    const auto full = estimate_radius(
        [&](std::span<const double> y, std::span<double> o) { dp.full(t, y, o, scratch_); }, x,
        warm_full_, control_.power);
    rho_F_ = full.rho;
    rho_S_ = 0.0;
    warm_full_ = full.eigvec;
  }
  have_radii_ = true;
}

StepStats TrajectoryIntegrator::step(double t, std::span<const double> x,
                                     std::span<const double> dW, std::span<double> out) {
  StepStats st;
  update_radii(t, x);
  ++since_estimate_;
  st.rho_F_est = rho_F_;
  st.rho_S_est = rho_S_;
  if (method_ == Method::mskrock) {
    int s = 0, m = 0;
    if (control_.fixed) {
      std::tie(s, m) = *control_.fixed;
    } else {
      const StageParams sel =
          select_stages(tau_, rho_F_, rho_S_, control_.eps, control_.safety);
      s = sel.s;
      m = sel.m;
    }
    mskrock_step(problem_.drift, problem_.diffusion, params_for(s, m), x, t, dW, out, ws_, &st,
                 control_.noise_mode);
  } else {
    const int s = control_.fixed
                      ? control_.fixed->first
                      : select_outer_stages(tau_, rho_F_ + rho_S_, control_.eps, control_.safety);
    skrock_step(problem_.drift, problem_.diffusion, outer_for(s), x, t, tau_, dW, out, ws_, &st);
    st.s_used = s;
    st.m_used = 0;
  }
  return st;
}

PathSummary TrajectoryIntegrator::run(const BrownianPath& path, std::span<double> x_out,
                                      const StepObserver& observer) {
  if (path.noise_dim != problem_.noise_dim())
    throw InputError("Brownian path noise dimension does not match the problem");
  if (std::abs(path.horizon - problem_.horizon) > 1e-12 * problem_.horizon)
    throw InputError("Brownian path horizon does not match the problem");
  if (x_out.size() != problem_.dimension()) throw InputError("output state has wrong dimension");

  have_radii_ = false;
  since_estimate_ = 0;
  warm_F_.clear();
  warm_S_.clear();
  warm_full_.clear();

  Vector x = problem_.x0, next(x.size()), dW(path.noise_dim);
  PathSummary sum;
  for (std::size_t k = 0; k < steps_; ++k) {
    const double t = static_cast<double>(k) * tau_;
    path.coarse(steps_, k, dW);
    const StepStats st = step(t, x, dW, next);
    x.swap(next);
    sum.totals.add_counts(st);
    sum.sum_s += st.s_used;
    sum.sum_m += st.m_used;
    sum.max_s = std::max(sum.max_s, st.s_used);
    sum.max_m = std::max(sum.max_m, st.m_used);
    if (observer) observer(StepRecord{k, t, st}, x);
  }
  sum.steps = steps_;
  std::copy(x.begin(), x.end(), x_out.begin());
  return sum;
}

} // namespace mskrock
