#include "mskrock/reaction_network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace mskrock {
namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

template <class T>
T parse_number(const std::string& tok, const std::string& source, int line) {
  std::istringstream is(tok);
  T v{};
  is >> v;
  if (!is || !is.eof()) fail(source, line, "expected a number, got '" + tok + "'");
  return v;
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::vector<std::string>& toks, std::size_t from,
                          std::size_t count, const std::string& source, int line,
                          const std::string& what) {
  if (toks.size() != from + count)
    fail(source, line,
         what + ": expected " + std::to_string(count) + " values, got " +
             std::to_string(toks.size() - std::min(from, toks.size())));
  std::vector<T> v;
  for (std::size_t i = from; i < toks.size(); ++i) v.push_back(parse_number<T>(toks[i], source, line));
  return v;
}

} // namespace

void ReactionNetwork::validate() const {
  if (n_species < 1) throw InputError("reaction network: species count must be >= 1");
  if (fast_count < 0 || fast_count > static_cast<int>(reactions.size()))
    throw InputError("reaction network: fast count out of range");
  for (const auto& r : reactions) {
    if (!(r.rate > 0.0)) throw InputError("reaction network: rate constants must be > 0");
    if (static_cast<int>(r.orders.size()) != n_species ||
        static_cast<int>(r.stoichiometry.size()) != n_species)
      throw InputError("reaction network: stoichiometry/order length mismatch");
    for (int o : r.orders)
      if (o < 0) throw InputError("reaction network: negative reactant order");
  }
  if (initial && static_cast<int>(initial->size()) != n_species)
    throw InputError("reaction network: initial state length mismatch");
}

ReactionNetwork parse_reaction_network(std::istream& in, const std::string& source) {
  ReactionNetwork net;
  bool have_species = false;
  bool have_fast = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = strip_comment(raw);
    if (content.find_first_not_of(" \t\r") == std::string::npos) continue;

    if (content.find('|') != std::string::npos) {
      if (!have_species) fail(source, line, "reaction before 'species' header");
      if (have_fast) fail(source, line, "reaction after 'fast' line");
      std::vector<std::string> parts;
      std::string part;
      std::istringstream ps(content);
      while (std::getline(ps, part, '|')) parts.push_back(part);
      if (parts.size() != 3) fail(source, line, "reaction needs 'rate | orders | stoich'");
      const auto rate_t = tokens_of(parts[0]);
      const auto ord_t = tokens_of(parts[1]);
      const auto sto_t = tokens_of(parts[2]);
      if (rate_t.size() != 2 || rate_t[0] != "rate") fail(source, line, "expected 'rate k'");
      if (ord_t.empty() || ord_t[0] != "orders") fail(source, line, "expected 'orders ...'");
      if (sto_t.empty() || sto_t[0] != "stoich") fail(source, line, "expected 'stoich ...'");
      Reaction r;
      r.rate = parse_number<double>(rate_t[1], source, line);
      if (!(r.rate > 0.0) || !std::isfinite(r.rate))
        fail(source, line, "rate constant must be positive");
      r.orders = parse_list<int>(ord_t, 1, net.n_species, source, line, "orders");
      for (int o : r.orders)
        if (o < 0) fail(source, line, "reactant orders must be >= 0");
      r.stoichiometry = parse_list<int>(sto_t, 1, net.n_species, source, line, "stoich");
      net.reactions.push_back(std::move(r));
      continue;
    }

    const auto toks = tokens_of(content);
    const std::string& key = toks[0];
    if (key == "species") {
      if (have_species) fail(source, line, "duplicate 'species' header");
      if (toks.size() != 2) fail(source, line, "expected 'species N'");
      net.n_species = parse_number<int>(toks[1], source, line);
      if (net.n_species < 1) fail(source, line, "species count must be >= 1");
      have_species = true;
    } else if (key == "fast") {
      if (!have_species) fail(source, line, "'fast' before 'species' header");
      if (have_fast) fail(source, line, "duplicate 'fast' line");
      if (toks.size() != 2) fail(source, line, "expected 'fast r'");
      net.fast_count = parse_number<int>(toks[1], source, line);
      if (net.fast_count < 0 || net.fast_count > static_cast<int>(net.reactions.size()))
        fail(source, line, "fast count must lie in [0, number of reactions]");
      have_fast = true;
    } else if (key == "initial") {
      if (!have_fast) fail(source, line, "'initial' must follow the 'fast' line");
      if (net.initial) fail(source, line, "duplicate 'initial' line");
      net.initial = parse_list<double>(toks, 1, net.n_species, source, line, "initial");
    } else if (key == "horizon") {
      if (!have_fast) fail(source, line, "'horizon' must follow the 'fast' line");
      if (net.horizon) fail(source, line, "duplicate 'horizon' line");
      if (toks.size() != 2) fail(source, line, "expected 'horizon T'");
      const double T = parse_number<double>(toks[1], source, line);
      if (!(T > 0.0)) fail(source, line, "horizon must be > 0");
      net.horizon = T;
    } else {
      fail(source, line, "unexpected content '" + key + "'");
    }
  }
  if (!have_species) fail(source, line, "missing 'species' header");
  if (net.reactions.empty()) fail(source, line, "no reactions");
  if (!have_fast) fail(source, line, "missing 'fast' line");
  return net;
}

ReactionNetwork load_reaction_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open reaction network file '" + path + "'");
  return parse_reaction_network(in, path);
}

double propensity(const Reaction& r, std::span<const double> x, bool falling_factorial) {
  double a = r.rate;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int o = r.orders[i];
    for (int q = 0; q < o; ++q) a *= falling_factorial ? (x[i] - q) : x[i];
  }
  return a;
}

namespace {

double reaction_cost(const Reaction& r) {
  double c = 1.0;
  for (std::size_t i = 0; i < r.orders.size(); ++i) {
    c += r.orders[i];
    if (r.stoichiometry[i] != 0) c += 1.0;
  }
  return c;
}

} // namespace

SplitSdeProblem make_reaction_problem(const ReactionNetwork& net, const NetworkOptions& opts) {
  net.validate();
  auto shared = std::make_shared<const ReactionNetwork>(net);
  const auto n = static_cast<std::size_t>(net.n_species);
  const int r = net.fast_count;
  const bool ff = opts.falling_factorial;

  auto partial_sum = [shared, ff](int from, int to) {
    return [shared, ff, from, to](double, std::span<const double> x, std::span<double> out) {
      std::fill(out.begin(), out.end(), 0.0);
      for (int j = from; j < to; ++j) {
        const auto& re = shared->reactions[j];
        const double a = propensity(re, x, ff);
        for (std::size_t i = 0; i < out.size(); ++i)
          if (re.stoichiometry[i] != 0) out[i] += re.stoichiometry[i] * a;
      }
    };
  };

  SplitSdeProblem p;
  p.name = "reaction-network";
  p.drift.dimension = n;
  p.drift.fast = partial_sum(0, r);
  p.drift.slow = partial_sum(r, static_cast<int>(net.reactions.size()));
  const std::size_t l = net.reactions.size();
  p.diffusion = DiffusionSpec::make_matrix(
      [shared, ff, n](double, std::span<const double> x, std::span<double> out) {
        for (std::size_t j = 0; j < shared->reactions.size(); ++j) {
          const auto& re = shared->reactions[j];
          const double amp = std::sqrt(std::max(propensity(re, x, ff), 0.0));
          for (std::size_t i = 0; i < n; ++i) out[j * n + i] = re.stoichiometry[i] * amp;
        }
      },
      l);
  p.x0 = net.initial ? *net.initial : Vector(n, 0.0);
  p.horizon = net.horizon ? *net.horizon : 1.0;
  p.weak_functional = [n](std::span<const double> x) { return x[n - 1] * x[n - 1]; };

  double wf = 0.0, ws = 0.0;
  for (int j = 0; j < static_cast<int>(l); ++j)
    (j < r ? wf : ws) += reaction_cost(net.reactions[j]);
  p.weights = {wf, ws, wf + ws};
  return p;
}

SplitSdeProblem load_reaction_network(const std::string& path, const NetworkOptions& opts) {
  return make_reaction_problem(load_reaction_network_file(path), opts);
}

} // namespace mskrock
