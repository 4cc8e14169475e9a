#include "mskrock_cli/config.hpp"

#include "mskrock/types.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mskrock::cli {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"problem",
       {"id", "lambda", "zeta", "mu", "x0", "horizon", "delta", "H", "sigma", "domain_length",
        "source_amplitude", "source_center", "initial_value", "file", "fast",
        "falling_factorial", "y0"}},
      {"method",
       {"name", "eps", "safety", "s", "m", "rho_F", "rho_S", "reestimate_every", "noise_mode",
        "power_tol", "power_max_iter"}},
      {"run",
       {"seed", "threads", "tau", "taus", "paths", "path", "reference", "reference_refinement",
        "reference_method", "snapshot_every"}},
      {"scan", {"s", "m", "eps", "points", "per_axis", "tau", "lambda_max", "zeta_max"}},
      {"speedup", {"sweep", "values", "tau", "paths"}},
      {"certify",
       {"per_axis", "tau", "phi_points", "psi_points", "r_max", "eps", "s_max",
        "force_points"}},
      {"checks",
       {"strong_slope_min", "strong_slope_max", "weak_slope_min", "weak_slope_max",
        "min_speedup"}},
  };
  return keys;
}

std::string trimmed(std::string s) {
  boost::algorithm::trim(s);
  return s;
}

double parse_plain(const std::string& s, const std::string& key) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != last)
    throw InputError("config key '" + key + "': not a number: '" + s + "'");
  return v;
}

} // namespace

double parse_number(const std::string& text, const std::string& key) {
  const std::string s = trimmed(text);
  const auto caret = s.find('^');
  if (caret == std::string::npos) return parse_plain(s, key);
  const double base = parse_plain(trimmed(s.substr(0, caret)), key);
  const double exp = parse_plain(trimmed(s.substr(caret + 1)), key);
  return std::pow(base, exp);
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return from_string(ss.str(), base);
}

RunConfig RunConfig::from_string(const std::string& text, const std::filesystem::path& base_dir) {
  RunConfig c;
  c.base_dir_ = base_dir;
  std::istringstream in(text);
  try {
    pt::read_ini(in, c.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw InputError("config: " + std::string(e.what()));
  }
  return c;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw InputError("config override with empty key");
  tree_.put(pt::ptree::path_type(key, '.'), trimmed(value));
}

bool RunConfig::has(const std::string& key) const {
  return static_cast<bool>(tree_.get_optional<std::string>(pt::ptree::path_type(key, '.')));
}

std::string RunConfig::str(const std::string& key) const {
  const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
  if (!v) throw InputError("config: missing required key '" + key + "'");
  return trimmed(*v);
}

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double RunConfig::num(const std::string& key) const { return parse_number(str(key), key); }

double RunConfig::num(const std::string& key, double fallback) const {
  return has(key) ? num(key) : fallback;
}

std::optional<double> RunConfig::opt_num(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return num(key);
}

long long RunConfig::integer(const std::string& key, long long fallback) const {
  return opt_integer(key).value_or(fallback);
}

std::optional<long long> RunConfig::opt_integer(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  const std::string s = str(key);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InputError("config key '" + key + "': not an integer: '" + s + "'");
  return v;
}

std::uint64_t RunConfig::u64(const std::string& key) const {
  const std::string s = str(key);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InputError("config key '" + key + "': not an unsigned 64-bit integer: '" + s + "'");
  return v;
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = str(key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw InputError("config key '" + key + "': not a boolean: '" + s + "'");
}

std::vector<double> RunConfig::num_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, key));
  if (out.empty()) throw InputError("config key '" + key + "': empty list");
  return out;
}

std::filesystem::path RunConfig::resolve(const std::string& p) const {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base_dir_ / path;
}

std::map<std::string, std::string> RunConfig::flatten() const {
  std::map<std::string, std::string> out;
  for (const auto& [section, child] : tree_) {
    if (child.empty()) {
      out[section] = trimmed(child.data());
      continue;
    }
    for (const auto& [key, leaf] : child) out[section + "." + key] = trimmed(leaf.data());
  }
  return out;
}

void RunConfig::validate() const {
  const auto version = tree_.get_optional<std::string>("version");
  if (!version) throw InputError("config: missing 'version' (expected " +
                                 std::to_string(kConfigVersion) + ")");
  if (trimmed(*version) != std::to_string(kConfigVersion))
    throw InputError("config: unsupported version '" + trimmed(*version) + "'");
  const auto& allowed = allowed_keys();
  for (const auto& [section, child] : tree_) {
    if (section == "version") continue;
    const auto it = allowed.find(section);
    if (it == allowed.end()) throw InputError("config: unknown section or key '" + section + "'");
    for (const auto& [key, leaf] : child) {
      if (!leaf.empty() || !it->second.count(key))
        throw InputError("config: unknown key '" + section + "." + key + "'");
    }
  }
}

} // namespace mskrock::cli
