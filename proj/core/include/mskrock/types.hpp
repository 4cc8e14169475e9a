#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mskrock {

using Vector = std::vector<double>;

/// Right-hand side evaluated at (t, x), written into `out` (same length as x).
using VectorField =
    std::function<void(double t, std::span<const double> x, std::span<double> out)>;

/// Raised when a stage of an integrator produces a non-finite value.
class DivergenceError : public std::runtime_error {
public:
  DivergenceError(const std::string& where, int stage)
      : std::runtime_error(where + ": non-finite value at stage " + std::to_string(stage)),
        stage_(stage) {}

  int stage() const noexcept { return stage_; }

private:
  int stage_;
};

/// Malformed user input: configuration keys, problem parameters, network files.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!(v - v == 0.0)) return false;
  }
  return true;
}

} // namespace mskrock
