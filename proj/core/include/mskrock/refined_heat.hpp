#pragma once

#include "mskrock/problems.hpp"

#include <vector>

namespace mskrock {

/// Piecewise-uniform 1-D grid on [0, L]: spacing ~H outside a channel of width
/// delta and spacing h <= delta/8 inside it.
struct RefinedGrid {
  double length = 0.0;
  double coarse_spacing = 0.0; ///< actual coarse spacing used (<= H)
  double fine_spacing = 0.0;
  double channel_begin = 0.0;
  double channel_end = 0.0;
  std::vector<double> nodes;
  std::vector<bool> fast; ///< D: nodes lying in the closed channel interval

  std::size_t size() const { return nodes.size(); }
  std::size_t fast_count() const;
};

struct RefinedHeatOptions {
  double domain_length = 8.0;
  double source_amplitude = 1.0;
  double source_center = -1.0; ///< negative: centre of the left coarse region
  double initial_value = 0.0;
  double horizon = 0.1;
};

RefinedGrid build_refined_grid(double delta, double H, double length);

/// Neumann finite-difference Laplacian row i applied to u.
double laplacian_row(const RefinedGrid& g, std::span<const double> u, std::size_t i);

/// Stochastic heat equation dX = (AX + b(t)) dt + sigma X dW (diagonal noise),
/// split as f_F = DAX and f_S = (I - D)AX + (I - D)b with
/// b(x, t) = amplitude sin(10 pi t)^2 exp(-5 (x - c)^2).
SplitSdeProblem make_refined_heat(double delta, double H, double sigma,
                                  const RefinedHeatOptions& opts = {});

} // namespace mskrock
