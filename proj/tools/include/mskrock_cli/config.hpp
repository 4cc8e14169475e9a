#pragma once

#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mskrock::cli {

inline constexpr int kConfigVersion = 1;

/// INI configuration: a top-level `version = 1` followed by sections
/// [problem], [method], [run], [scan], [speedup], [certify] and [checks].
/// Keys are addressed as "section.key".
class RunConfig {
public:
  static RunConfig from_file(const std::filesystem::path& path);
  static RunConfig from_string(const std::string& text,
                               const std::filesystem::path& base_dir = ".");

  /// Overrides or adds "section.key = value".
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  std::optional<double> opt_num(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  std::optional<long long> opt_integer(const std::string& key) const;
  std::uint64_t u64(const std::string& key) const;
  bool flag(const std::string& key, bool fallback) const;
  /// Comma-separated numbers; "2^-3" is accepted for powers of two.
  std::vector<double> num_list(const std::string& key) const;

  /// Resolves a path relative to the directory of the config file.
  std::filesystem::path resolve(const std::string& p) const;

  /// Every key in "section.key=value" form, sorted.
  std::map<std::string, std::string> flatten() const;

  /// Rejects unknown sections/keys and a missing or unsupported version.
  void validate() const;

private:
  boost::property_tree::ptree tree_;
  std::filesystem::path base_dir_ = ".";
};

/// Parses one number, accepting "2^k" forms.
double parse_number(const std::string& text, const std::string& key);

} // namespace mskrock::cli
