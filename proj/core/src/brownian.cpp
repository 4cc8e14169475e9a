#include "mskrock/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mskrock {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t path_stream_key(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

void BrownianPath::coarse(std::size_t coarse_steps, std::size_t k, std::span<double> out) const {
  if (coarse_steps == 0 || finest_steps % coarse_steps != 0)
    throw InputError("coarse step count must divide the finest step count");
  if (out.size() != noise_dim) throw InputError("coarse increment: wrong output dimension");
  const std::size_t ratio = finest_steps / coarse_steps;
  for (std::size_t c = 0; c < noise_dim; ++c) out[c] = 0.0;
  for (std::size_t f = k * ratio; f < (k + 1) * ratio; ++f) {
    const auto inc = fine(f);
    for (std::size_t c = 0; c < noise_dim; ++c) out[c] += inc[c];
  }
}

Vector BrownianPath::terminal() const {
  Vector w(noise_dim, 0.0);
  coarse(1, 0, w);
  return w;
}

BrownianGrid::BrownianGrid(std::uint64_t seed_, std::size_t finest_steps_,
                           std::size_t noise_dim_, double horizon_)
    : seed(seed_), finest_steps(finest_steps_), noise_dim(noise_dim_), horizon(horizon_) {
  if (finest_steps == 0) throw InputError("Brownian grid needs at least one step");
  if (noise_dim == 0) throw InputError("Brownian grid needs noise dimension >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw InputError("Brownian grid horizon must be positive");
}

void BrownianGrid::fill(std::uint64_t index, BrownianPath& out) const {
  out.finest_steps = finest_steps;
  out.noise_dim = noise_dim;
  out.horizon = horizon;
  out.increments.resize(finest_steps * noise_dim);
  std::mt19937_64 gen(path_stream_key(seed, index));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(horizon / static_cast<double>(finest_steps));
  for (double& v : out.increments) v = scale * normal(gen);
}

BrownianPath BrownianGrid::path(std::uint64_t index) const {
  BrownianPath p;
  fill(index, p);
  return p;
}

void BrownianGrid::check_level(std::size_t coarse_steps) const {
  if (coarse_steps == 0 || finest_steps % coarse_steps != 0)
    throw InputError("step count " + std::to_string(coarse_steps) +
                     " does not divide the finest step count " + std::to_string(finest_steps));
}

std::vector<BrownianPath> generate_paths(std::uint64_t seed, std::size_t n_paths,
                                         std::size_t finest_steps, std::size_t noise_dim,
                                         double horizon) {
  const BrownianGrid grid(seed, finest_steps, noise_dim, horizon);
  std::vector<BrownianPath> out(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) grid.fill(i, out[i]);
  return out;
}

std::size_t steps_for(double horizon, double tau) {
  if (!(tau > 0.0) || !(horizon > 0.0)) throw InputError("step size and horizon must be positive");
  const double q = horizon / tau;
  const double n = std::round(q);
  if (n < 1.0 || std::abs(q - n) > 1e-9 * std::max(1.0, q))
    throw InputError("horizon is not an integer multiple of the step size");
  return static_cast<std::size_t>(n);
}

} // namespace mskrock
