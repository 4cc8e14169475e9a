#include "mskrock/model.hpp"

#include <algorithm>

namespace mskrock {

void DriftPair::full(double t, std::span<const double> x, std::span<double> out,
                     std::span<double> scratch) const {
  fast(t, x, out);
  slow(t, x, scratch);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scratch[i];
}

DiffusionSpec DiffusionSpec::make_vector(VectorField g) {
  DiffusionSpec d;
  d.kind = DiffusionKind::vector;
  d.noise_dim = 1;
  d.values = std::move(g);
  return d;
}

DiffusionSpec DiffusionSpec::make_diagonal(VectorField g, std::size_t n) {
  DiffusionSpec d;
  d.kind = DiffusionKind::diagonal;
  d.noise_dim = n;
  d.values = std::move(g);
  return d;
}

DiffusionSpec DiffusionSpec::make_matrix(MatrixField g, std::size_t noise_dim) {
  if (noise_dim == 0) throw InputError("DiffusionSpec: noise dimension must be positive");
  DiffusionSpec d;
  d.kind = DiffusionKind::matrix;
  d.noise_dim = noise_dim;
  d.matrix = std::move(g);
  return d;
}

std::size_t DiffusionSpec::scratch_size(std::size_t n) const {
  return kind == DiffusionKind::matrix ? n * noise_dim : n;
}

void DiffusionSpec::evaluate(double t, std::span<const double> x,
                             std::span<double> scratch) const {
  if (kind == DiffusionKind::matrix)
    matrix(t, x, scratch.first(x.size() * noise_dim));
  else
    values(t, x, scratch.first(x.size()));
}

void DiffusionSpec::apply(double t, std::span<const double> x, std::span<const double> dW,
                          std::span<double> out, std::span<double> scratch) const {
  const std::size_t n = x.size();
  if (dW.size() != noise_dim)
    throw InputError("DiffusionSpec::apply: noise increment has dimension " +
                     std::to_string(dW.size()) + ", expected " + std::to_string(noise_dim));
  evaluate(t, x, scratch);
  switch (kind) {
  case DiffusionKind::vector:
    for (std::size_t i = 0; i < n; ++i) out[i] = scratch[i] * dW[0];
    break;
  case DiffusionKind::diagonal:
    for (std::size_t i = 0; i < n; ++i) out[i] = scratch[i] * dW[i];
    break;
  case DiffusionKind::matrix:
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 0; j < noise_dim; ++j) {
      const double w = dW[j];
      if (w == 0.0) continue;
      const double* col = scratch.data() + j * n;
      for (std::size_t i = 0; i < n; ++i) out[i] += col[i] * w;
    }
    break;
  }
}

void DiffusionSpec::column(std::span<const double> evaluated, std::size_t j,
                           std::span<double> out) const {
  const std::size_t n = out.size();
  switch (kind) {
  case DiffusionKind::vector:
    std::copy_n(evaluated.begin(), n, out.begin());
    break;
  case DiffusionKind::diagonal:
    std::fill(out.begin(), out.end(), 0.0);
    out[j] = evaluated[j];
    break;
  case DiffusionKind::matrix:
    std::copy_n(evaluated.begin() + static_cast<std::ptrdiff_t>(j * n), n, out.begin());
    break;
  }
}

void Workspace::ensure(std::size_t n, std::size_t diffusion_scratch) {
  outer.resize(n);
  inner.resize(n);
  frozen_slow.resize(n);
  noise.resize(n);
  injection.resize(n);
  chain_out.resize(n);
  sum.resize(n);
  diffusion.resize(std::max(n, diffusion_scratch));
}

std::size_t Workspace::footprint() const {
  auto chain = [](const ChainBuffers& c) {
    return c.prev.size() + c.prev2.size() + c.eval.size() + c.arg.size();
  };
  return chain(outer) + chain(inner) + frozen_slow.size() + noise.size() + injection.size() +
         chain_out.size() + sum.size() + diffusion.size();
}

} // namespace mskrock
