#pragma once

// Chebyshev polynomials of the first and second kind, evaluated with the
// forward three-term recurrence. The recurrence is deliberately used instead of
// cos/cosh closed forms: every stabilized integrator in this library runs the
// same recurrence on state vectors, and arguments slightly above 1 (the damped
// abscissa 1 + eps/s^2) stay exact to round-off.

namespace mskrock::cheb {

struct ChebEval {
  double value = 0.0;
  double derivative = 0.0;
};

/// T_k(x). Throws std::domain_error for non-finite x or negative k.
double T(int k, double x);

/// U_k(x), with U_0 = 1 and U_1 = 2x.
double U(int k, double x);

/// T_k'(x) = k U_{k-1}(x); zero for k = 0.
double T_prime(int k, double x);

/// T_k(x) and T_k'(x) in one pass.
ChebEval T_with_derivative(int k, double x);

} // namespace mskrock::cheb
