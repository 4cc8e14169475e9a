#pragma once

#include "mskrock/types.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace mskrock {

/// Split drift f = f_F + f_S: f_F cheap and stiff, f_S expensive and mildly stiff.
struct DriftPair {
  VectorField fast;
  VectorField slow;
  std::size_t dimension = 0;

  /// f_F + f_S at (t, x); `scratch` must have the state dimension.
  void full(double t, std::span<const double> x, std::span<double> out,
            std::span<double> scratch) const;
};

/// n x l diffusion matrix, column-major, evaluated at (t, x).
using MatrixField =
    std::function<void(double t, std::span<const double> x, std::span<double> out)>;

enum class DiffusionKind {
  vector,   ///< g(x) in R^n driven by one scalar Wiener process (l = 1)
  diagonal, ///< column i is g_i(x) e_i (l = n)
  matrix    ///< general n x l matrix
};

struct DiffusionSpec {
  DiffusionKind kind = DiffusionKind::vector;
  std::size_t noise_dim = 1;
  VectorField values; ///< vector and diagonal kinds
  MatrixField matrix; ///< matrix kind

  static DiffusionSpec make_vector(VectorField g);
  static DiffusionSpec make_diagonal(VectorField g, std::size_t n);
  static DiffusionSpec make_matrix(MatrixField g, std::size_t noise_dim);

  /// Doubles needed by `apply` as scratch (n*l for the matrix kind, n otherwise).
  std::size_t scratch_size(std::size_t n) const;

  /// out = g(t, x) dW.
  void apply(double t, std::span<const double> x, std::span<const double> dW,
             std::span<double> out, std::span<double> scratch) const;

  /// Column j of g(t, x), evaluated from the full matrix held in `evaluated`
  /// (the scratch filled by `evaluate`).
  void evaluate(double t, std::span<const double> x, std::span<double> scratch) const;
  void column(std::span<const double> evaluated, std::size_t j, std::span<double> out) const;
};

/// Per-step evaluation counters and stage choices.
struct StepStats {
  std::int64_t n_fF = 0;
  std::int64_t n_fS = 0;
  std::int64_t n_g = 0;
  double rho_F_est = 0.0;
  double rho_S_est = 0.0;
  int s_used = 0;
  int m_used = 0;
  double eta = 0.0;

  void add_counts(const StepStats& o) {
    n_fF += o.n_fF;
    n_fS += o.n_fS;
    n_g += o.n_g;
  }
};

/// Buffers for one three-term recurrence: K_{j-1}, K_{j-2}, the evaluation, and
/// the shifted first-stage argument.
struct ChainBuffers {
  Vector prev;
  Vector prev2;
  Vector eval;
  Vector arg;

  void resize(std::size_t n) {
    prev.resize(n);
    prev2.resize(n);
    eval.resize(n);
    arg.resize(n);
  }
};

/// All scratch storage one trajectory needs. Its size depends only on the
/// state and noise dimensions, never on the stage numbers.
struct Workspace {
  ChainBuffers outer;
  ChainBuffers inner;
  Vector frozen_slow; // f_S(y) held fixed through the inner solve
  Vector noise;       // Q, the stabilized noise increment
  Vector injection;   // eta g(x) (dW) injected into the damped-diffusion chain
  Vector chain_out;   // v_r of the noisy chain
  Vector sum;         // scratch for f_F + f_S and per-column accumulation
  Vector diffusion;   // g evaluation scratch (n*l for matrix diffusion)

  Workspace() = default;
  Workspace(std::size_t n, std::size_t diffusion_scratch) { ensure(n, diffusion_scratch); }

  void ensure(std::size_t n, std::size_t diffusion_scratch);
  /// Total doubles held; constant across steps with different stage counts.
  std::size_t footprint() const;
};

} // namespace mskrock
