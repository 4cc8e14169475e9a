#pragma once

#include "mskrock/types.hpp"

#include <functional>
#include <optional>
#include <span>

namespace mskrock {

struct RadiusEstimate {
  double rho = 0.0;
  int iterations = 0;
  Vector eigvec; ///< unit-norm direction, reused to warm-start the next call
};

struct PowerOptions {
  double tol = 1e-2;
  int max_iter = 100;
};

/// Raised when the map returns non-finite values during estimation.
class EstimationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using StateMap = std::function<void(std::span<const double> x, std::span<double> out)>;

/// Nonlinear power method on the Jacobian of `fmap` at y, with Jacobian-vector
/// products by forward differences (f(y + delta z) - f(y)) / delta,
/// delta = sqrt(machine eps) * max(1, |y|). Stops when successive estimates
/// differ by less than tol * current or after max_iter products.
RadiusEstimate estimate_radius(const StateMap& fmap, std::span<const double> y,
                               std::span<const double> warm = {},
                               const PowerOptions& opts = {});

} // namespace mskrock
