#include "mskrock/spectral.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace mskrock {
namespace {

double norm2(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

} // namespace

RadiusEstimate estimate_radius(const StateMap& fmap, std::span<const double> y,
                               std::span<const double> warm, const PowerOptions& opts) {
  if (!(opts.tol > 0.0)) throw InputError("estimate_radius: tol must be > 0");
  if (opts.max_iter < 1) throw InputError("estimate_radius: max_iter must be >= 1");
  if (!all_finite(y)) throw EstimationError("estimate_radius: non-finite state");
  const std::size_t n = y.size();
  RadiusEstimate est;
  if (n == 0) return est;

  Vector z(n);
  if (warm.size() == n && norm2(warm) > 0.0 && all_finite(warm)) {
    std::copy(warm.begin(), warm.end(), z.begin());
  } else {
    for (std::size_t i = 0; i < n; ++i) z[i] = (i % 2 == 0) ? 1.0 : -1.0;
  }
  {
    const double nz = norm2(z);
    for (double& v : z) v /= nz;
  }

  Vector f0(n), f1(n), yp(n);
  fmap(y, f0);
  if (!all_finite(f0)) throw EstimationError("estimate_radius: map returned non-finite values");
  const double delta =
      std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, norm2(y));

  double rho_prev = -1.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) yp[i] = y[i] + delta * z[i];
    fmap(yp, f1);
    if (!all_finite(f1))
      throw EstimationError("estimate_radius: map returned non-finite values");
    for (std::size_t i = 0; i < n; ++i) f1[i] = (f1[i] - f0[i]) / delta;
    const double rho = norm2(f1);
    est.iterations = it;
    est.rho = rho;
    if (rho == 0.0) break; // z lies in the kernel (or the map is constant)
    for (std::size_t i = 0; i < n; ++i) z[i] = f1[i] / rho;
    if (n == 1) break;
    if (rho_prev >= 0.0 && std::abs(rho - rho_prev) < opts.tol * rho) break;
    rho_prev = rho;
  }
  est.eigvec = std::move(z);
  return est;
}

} // namespace mskrock
