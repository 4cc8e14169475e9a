#pragma once

#include "mskrock/model.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace mskrock {

/// Relative cost of one evaluation of f_F, f_S and g, used to weight
/// evaluation counters into a single work figure.
struct CostWeights {
  double fast = 1.0;
  double slow = 1.0;
  double diffusion = 1.0;
};

/// dX = (f_F(X) + f_S(X)) dt + g(X) dW on [0, horizon].
struct SplitSdeProblem {
  std::string name;
  DriftPair drift;
  DiffusionSpec diffusion;
  Vector x0;
  double horizon = 1.0;
  /// Exact solution X(t) given the Wiener value W(t) (length noise_dim).
  std::function<Vector(double t, std::span<const double> w)> exact_solution;
  /// Weak-error functional psi.
  std::function<double(std::span<const double> x)> weak_functional;
  CostWeights weights;

  std::size_t dimension() const { return drift.dimension; }
  std::size_t noise_dim() const { return diffusion.noise_dim; }
  void validate() const;
};

/// dX = (lambda + zeta) X dt + mu X dW, X(0) = x0, with f_F = lambda X, f_S = zeta X.
SplitSdeProblem make_multirate_test(double lambda, double zeta, double mu, double x0 = 1.0,
                                    double horizon = 1.0);

/// dX = (X/4 + sqrt(X^2+1)/2) dt + sqrt((X^2+1)/2) dW, X(0) = 0, T = 1, with
/// exact solution sinh(t/2 + W/sqrt 2), f_F = sqrt(X^2+1)/2, f_S = X/4 and psi = asinh.
SplitSdeProblem make_sinh_problem();

/// Scalar deterministic split ODE y' = -y + cos(y), f_F = -y, f_S = cos(y).
SplitSdeProblem make_split_cosine_ode(double y0 = 1.0, double horizon = 1.0);

} // namespace mskrock
