#include "mskrock/refined_heat.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace mskrock {

std::size_t RefinedGrid::fast_count() const {
  return static_cast<std::size_t>(std::count(fast.begin(), fast.end(), true));
}

RefinedGrid build_refined_grid(double delta, double H, double length) {
  if (!(delta > 0.0) || !(H > 0.0) || !(length > 0.0))
    throw InputError("refined heat: delta, H and the domain length must be positive");
  if (delta >= length) throw InputError("refined heat: channel width must be below the domain length");

  RefinedGrid g;
  g.length = length;
  const double side = 0.5 * (length - delta);
  const int nc = std::max(1, static_cast<int>(std::ceil(side / H - 1e-12)));
  g.coarse_spacing = side / nc;

  const double h_target = std::min(delta / 8.0, H);
  const int nf = std::max(1, static_cast<int>(std::lround(delta / h_target)));
  g.fine_spacing = delta / nf;
  if (!(g.fine_spacing <= H * (1.0 + 1e-12)))
    throw InputError("refined heat: fine spacing must not exceed H");

  g.channel_begin = side;
  g.channel_end = side + delta;
  g.nodes.reserve(2 * nc + nf + 1);
  for (int i = 0; i < nc; ++i) g.nodes.push_back(i * g.coarse_spacing);
  for (int i = 0; i < nf; ++i) g.nodes.push_back(side + i * g.fine_spacing);
  for (int i = 0; i <= nc; ++i) g.nodes.push_back(g.channel_end + i * g.coarse_spacing);
  g.nodes.back() = length;

  g.fast.assign(g.nodes.size(), false);
  for (int i = 0; i <= nf; ++i) g.fast[nc + i] = true;
  return g;
}

double laplacian_row(const RefinedGrid& g, std::span<const double> u, std::size_t i) {
  const auto& x = g.nodes;
  const std::size_t last = x.size() - 1;
  if (i == 0) {
    const double h = x[1] - x[0];
    return 2.0 * (u[1] - u[0]) / (h * h);
  }
  if (i == last) {
    const double h = x[last] - x[last - 1];
    return 2.0 * (u[last - 1] - u[last]) / (h * h);
  }
  const double hl = x[i] - x[i - 1];
  const double hr = x[i + 1] - x[i];
  return 2.0 / (hl + hr) * ((u[i + 1] - u[i]) / hr - (u[i] - u[i - 1]) / hl);
}

SplitSdeProblem make_refined_heat(double delta, double H, double sigma,
                                  const RefinedHeatOptions& opts) {
  if (!std::isfinite(sigma)) throw InputError("refined heat: sigma must be finite");
  auto grid = std::make_shared<const RefinedGrid>(build_refined_grid(delta, H, opts.domain_length));
  const std::size_t n = grid->size();
  const double center =
      opts.source_center >= 0.0 ? opts.source_center : 0.5 * grid->channel_begin;
  const double amp = opts.source_amplitude;

  SplitSdeProblem p;
  p.name = "refined-heat";
  p.drift.dimension = n;
  p.drift.fast = [grid](double, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = grid->fast[i] ? laplacian_row(*grid, x, i) : 0.0;
  };
  p.drift.slow = [grid, center, amp](double t, std::span<const double> x, std::span<double> out) {
    const double st = std::sin(10.0 * std::numbers::pi * t);
    const double a = amp * st * st;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (grid->fast[i]) {
        out[i] = 0.0;
        continue;
      }
      const double d = grid->nodes[i] - center;
      out[i] = laplacian_row(*grid, x, i) + (a != 0.0 ? a * std::exp(-5.0 * d * d) : 0.0);
    }
  };
  p.diffusion = DiffusionSpec::make_diagonal(
      [sigma](double, std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = sigma * x[i];
      },
      n);
  p.x0.assign(n, opts.initial_value);
  p.horizon = opts.horizon;
  p.weak_functional = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  const double nf = static_cast<double>(grid->fast_count());
  p.weights = {nf, static_cast<double>(n) - nf, static_cast<double>(n)};
  return p;
}

} // namespace mskrock
