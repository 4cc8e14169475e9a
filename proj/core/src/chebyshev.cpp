#include "mskrock/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mskrock::cheb {
namespace {

void check_args(int k, double x, const char* fn) {
  if (k < 0) throw std::domain_error(std::string(fn) + ": negative degree");
  if (!std::isfinite(x)) throw std::domain_error(std::string(fn) + ": non-finite argument");
}

// Shared recurrence p_k = 2x p_{k-1} - p_{k-2} from (p_0, p_1).
double recur(int k, double x, double p0, double p1) {
  if (k == 0) return p0;
  double prev = p0;
  double cur = p1;
  for (int j = 2; j <= k; ++j) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

} // namespace

double T(int k, double x) {
  check_args(k, x, "cheb::T");
  return recur(k, x, 1.0, x);
}

double U(int k, double x) {
  check_args(k, x, "cheb::U");
  return recur(k, x, 1.0, 2.0 * x);
}

double T_prime(int k, double x) {
  check_args(k, x, "cheb::T_prime");
  if (k == 0) return 0.0;
  return k * U(k - 1, x);
}

ChebEval T_with_derivative(int k, double x) {
  return {T(k, x), T_prime(k, x)};
}

} // namespace mskrock::cheb
