#pragma once

#include "mskrock/trajectory.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mskrock {

enum class ReferenceKind {
  exact,       ///< problem.exact_solution at the path's W(T)
  fine_skrock, ///< SK-ROCK on a grid 2^refinement times finer than the smallest tau
  same_tau     ///< another integrator at the same tau on the same path
};

const char* reference_name(ReferenceKind k);
ReferenceKind parse_reference(const std::string& name);

struct ReferenceSpec {
  ReferenceKind kind = ReferenceKind::exact;
  int refinement = 4;                   ///< fine_skrock only
  Method method = Method::skrock;       ///< same_tau only
  StageControl control;                 ///< fine_skrock and same_tau
};

struct ConvergenceOptions {
  Method method = Method::mskrock;
  StageControl control;
  std::vector<double> taus; ///< strictly decreasing
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  ReferenceSpec reference;
  unsigned threads = 1;
};

struct ErrorRow {
  double tau = 0.0;
  double strong_error = 0.0;
  double strong_mc_stderr = 0.0;
  double weak_error = 0.0;
  double weak_mc_stderr = 0.0;
  std::size_t n_samples = 0;
  double mean_s = 0.0; ///< per-step averages over all paths
  double mean_m = 0.0;
  double mean_n_fF = 0.0;
  double mean_n_fS = 0.0;
  double mean_n_g = 0.0;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
  /// Throws InputError unless tau strictly decreases and every error is >= 0.
  void validate() const;
};

/// Raised when a path produces non-finite values; carries the path index.
class PathDivergenceError : public std::runtime_error {
public:
  PathDivergenceError(std::size_t path, double tau, const std::string& what);
  std::size_t path() const noexcept { return path_; }
  double tau() const noexcept { return tau_; }

private:
  std::size_t path_;
  double tau_;
};

/// Strong and weak errors on common Brownian paths. Per-path results are
/// reduced in path order, so the table does not depend on the thread count.
ErrorTable run_convergence(const SplitSdeProblem& problem, const ConvergenceOptions& opts);

enum class ErrorKind { strong, weak };

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0; ///< log2 error = slope * log2 tau + intercept
};

/// Least squares of log2(error) against log2(tau); needs >= 3 positive points.
SlopeFit fit_slope(std::span<const double> taus, std::span<const double> errors);
SlopeFit fit_slope(const ErrorTable& table, ErrorKind which);

void write_error_table(std::ostream& out, const ErrorTable& table);
void write_error_table(const std::string& path, const ErrorTable& table);
ErrorTable read_error_table(std::istream& in);
ErrorTable read_error_table(const std::string& path);

/// key=value sidecar, one pair per line, keys in sorted order.
using Metadata = std::map<std::string, std::string>;
void write_metadata(const std::string& path, const Metadata& meta);
Metadata read_metadata(const std::string& path);

} // namespace mskrock
