#pragma once

#include "mskrock/problems.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mskrock {

struct Reaction {
  double rate = 0.0;
  std::vector<int> orders;        ///< reactant order per species
  std::vector<int> stoichiometry; ///< net change per species
};

/// Mass-action network; the first `fast_count` reactions form f_F.
struct ReactionNetwork {
  int n_species = 0;
  std::vector<Reaction> reactions;
  int fast_count = 0;
  std::optional<Vector> initial;
  std::optional<double> horizon;

  void validate() const;
};

/// Line-oriented text format:
///   species N
///   rate k | orders o_1 .. o_N | stoich v_1 .. v_N     (one line per reaction)
///   fast r
///   initial x_1 .. x_N                                 (optional)
///   horizon T                                          (optional)
/// '#' starts a comment. Errors carry the offending line number.
ReactionNetwork parse_reaction_network(std::istream& in, const std::string& source = "<stream>");
ReactionNetwork load_reaction_network_file(const std::string& path);

struct NetworkOptions {
  bool falling_factorial = false; ///< x (x-1)...(x-o+1) instead of x^o
};

/// a_j(x) = k_j prod_i x_i^{o_ji}.
double propensity(const Reaction& r, std::span<const double> x, bool falling_factorial = false);

/// Chemical Langevin problem: f_F = sum_{j < r} nu_j a_j, f_S = the rest, and
/// matrix diffusion with columns nu_j sqrt(max(a_j, 0)).
SplitSdeProblem make_reaction_problem(const ReactionNetwork& net, const NetworkOptions& opts = {});

/// Parses the file and builds the problem.
SplitSdeProblem load_reaction_network(const std::string& path, const NetworkOptions& opts = {});

} // namespace mskrock
