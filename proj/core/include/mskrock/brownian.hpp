#pragma once

#include "mskrock/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mskrock {

/// One sampled Brownian path on the finest grid. Increments are stored step by
/// step, each block holding `noise_dim` components.
struct BrownianPath {
  std::size_t finest_steps = 0;
  std::size_t noise_dim = 1;
  double horizon = 1.0;
  Vector increments;

  double fine_tau() const { return horizon / static_cast<double>(finest_steps); }
  std::span<const double> fine(std::size_t k) const {
    return {increments.data() + k * noise_dim, noise_dim};
  }
  /// Increment over coarse step k when the horizon is split into `coarse_steps`
  /// steps: the in-order sum of the contained fine increments.
  void coarse(std::size_t coarse_steps, std::size_t k, std::span<double> out) const;
  /// W(T).
  Vector terminal() const;
};

/// Reproducible path generator. Path i is drawn from a stream seeded by
/// (seed, i) only, so any subset of paths can be regenerated in any order.
struct BrownianGrid {
  std::uint64_t seed = 0;
  std::size_t finest_steps = 1;
  std::size_t noise_dim = 1;
  double horizon = 1.0;

  BrownianGrid(std::uint64_t seed, std::size_t finest_steps, std::size_t noise_dim,
               double horizon);

  BrownianPath path(std::uint64_t index) const;
  void fill(std::uint64_t index, BrownianPath& out) const;
  /// Throws InputError unless coarse_steps divides finest_steps.
  void check_level(std::size_t coarse_steps) const;
};

/// 64-bit stream key for path `index` under `seed`.
std::uint64_t path_stream_key(std::uint64_t seed, std::uint64_t index);

std::vector<BrownianPath> generate_paths(std::uint64_t seed, std::size_t n_paths,
                                         std::size_t finest_steps, std::size_t noise_dim,
                                         double horizon);

/// Number of steps of size tau on [0, T]; throws unless T / tau is an integer.
std::size_t steps_for(double horizon, double tau);

} // namespace mskrock
