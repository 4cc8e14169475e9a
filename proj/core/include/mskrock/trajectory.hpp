#pragma once

#include "mskrock/brownian.hpp"
#include "mskrock/problems.hpp"
#include "mskrock/spectral.hpp"
#include "mskrock/stages.hpp"
#include "mskrock/stochastic.hpp"

#include <functional>
#include <map>
#include <optional>
#include <utility>

namespace mskrock {

enum class Method { skrock, mskrock };

const char* method_name(Method m);
Method parse_method(const std::string& name);

/// How stage numbers are chosen along a trajectory.
struct StageControl {
  std::optional<std::pair<int, int>> fixed; ///< (s, m); m is ignored by SK-ROCK
  std::optional<double> rho_F;              ///< known radii skip the power method
  std::optional<double> rho_S;
  double eps = kDefaultDamping;
  double safety = kDefaultRadiusSafety;
  int reestimate_every = 1;
  PowerOptions power;
  NoiseMode noise_mode = NoiseMode::combined;
};

struct StepRecord {
  std::size_t step = 0;
  double t = 0.0; ///< start time of the step
  StepStats stats;
};

using StepObserver = std::function<void(const StepRecord&, std::span<const double> x_next)>;

struct PathSummary {
  std::size_t steps = 0;
  StepStats totals; ///< summed counters
  double sum_s = 0.0;
  double sum_m = 0.0;
  int max_s = 0;
  int max_m = 0;
};

/// Integrates one problem along Brownian paths with a fixed step size. Not
/// thread-safe: use one instance per worker.
class TrajectoryIntegrator {
public:
  TrajectoryIntegrator(const SplitSdeProblem& problem, Method method, StageControl control,
                       double tau);

  /// Integrates from problem.x0 to the horizon using increments of `path`
  /// aggregated to this step size; the terminal state is written to x_out.
  PathSummary run(const BrownianPath& path, std::span<double> x_out,
                  const StepObserver& observer = {});

  /// Single step from (t, x) with increment dW.
  StepStats step(double t, std::span<const double> x, std::span<const double> dW,
                 std::span<double> out);

  std::size_t steps() const { return steps_; }
  double tau() const { return tau_; }
  Method method() const { return method_; }

private:
  const StageParams& params_for(int s, int m);
  const OuterCoefficients& outer_for(int s);
  void update_radii(double t, std::span<const double> x);

  const SplitSdeProblem& problem_;
  Method method_;
  StageControl control_;
  double tau_;
  std::size_t steps_;
  Workspace ws_;
  std::map<std::pair<int, int>, StageParams> cache_;
  std::map<int, OuterCoefficients> outer_cache_;
  Vector warm_F_, warm_S_, warm_full_;
  Vector scratch_;
  double rho_F_ = 0.0;
  double rho_S_ = 0.0;
  std::size_t since_estimate_ = 0;
  bool have_radii_ = false;
};

} // namespace mskrock
