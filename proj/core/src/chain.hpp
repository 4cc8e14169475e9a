#pragma once

// Three-term Chebyshev recurrence shared by RKC, mRKC, SK-ROCK, mSK-ROCK and
// the auxiliary inner solves:
//   K_1 = K_0 + w_1 h F(K_0 + n_1 Q) + k_1 Q
//   K_j = nu_j K_{j-1} + kappa_j K_{j-2} + mu_j h F(K_{j-1}),  j = 2..stages
// With an empty Q the first stage reduces to K_0 + w_1 h F(K_0).

#include "mskrock/model.hpp"
#include "mskrock/types.hpp"

#include <cstddef>
#include <span>
#include <utility>

namespace mskrock::detail {

struct ChainCoeffs {
  int stages = 1;
  std::span<const double> mu;
  std::span<const double> nu;
  std::span<const double> kappa;
  double first_mu = 0.0;
  double first_nu = 0.0;
  double first_kappa = 0.0;
};

template <class Eval>
void run_chain(const ChainCoeffs& c, std::span<const double> x0, double h,
               std::span<const double> noise, Eval&& eval, ChainBuffers& buf,
               std::span<double> out, const char* name) {
  const std::size_t n = x0.size();
  buf.resize(n);
  const double w1 = c.first_mu * h;

  if (noise.empty()) {
    eval(std::span<const double>(x0), std::span<double>(buf.eval));
    for (std::size_t i = 0; i < n; ++i) buf.prev[i] = x0[i] + w1 * buf.eval[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) buf.arg[i] = x0[i] + c.first_nu * noise[i];
    eval(std::span<const double>(buf.arg), std::span<double>(buf.eval));
    for (std::size_t i = 0; i < n; ++i)
      buf.prev[i] = x0[i] + w1 * buf.eval[i] + c.first_kappa * noise[i];
  }
  if (!all_finite(buf.prev)) throw DivergenceError(name, 1);

  std::copy(x0.begin(), x0.end(), buf.prev2.begin());
  for (int j = 2; j <= c.stages; ++j) {
    eval(std::span<const double>(buf.prev), std::span<double>(buf.eval));
    const double nu = c.nu[j];
    const double kappa = c.kappa[j];
    const double w = c.mu[j] * h;
    for (std::size_t i = 0; i < n; ++i)
      buf.prev2[i] = nu * buf.prev[i] + kappa * buf.prev2[i] + w * buf.eval[i];
    std::swap(buf.prev, buf.prev2);
    if (!all_finite(buf.prev)) throw DivergenceError(name, j);
  }
  std::copy(buf.prev.begin(), buf.prev.end(), out.begin());
}

} // namespace mskrock::detail
