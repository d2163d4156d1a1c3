#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "sawmzi/device.hpp"

namespace sawmzi {

/// Malformed or incomplete configuration.  Distinct from domain-invariant
/// violations: the CLI maps ConfigError to exit code 2 and
/// std::invalid_argument to exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key-value configuration file.  One `key = value` (or `key value`)
/// pair per line, '#' starts a comment, blank lines ignored.  Keys outside
/// the known vocabulary and duplicate keys are rejected at parse time.
class Config {
 public:
  static Config load(const std::string& path);
  static Config parse(std::istream& in, const std::string& origin);

  bool has(const std::string& key) const;
  /// Throw ConfigError naming the key when absent or non-numeric.
  double num(const std::string& key) const;
  double num_or(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer_or(const std::string& key, long long fallback) const;
  std::string str(const std::string& key) const;

 private:
  std::string origin_{"<none>"};
  std::map<std::string, std::string> values_;
};

/// Device parameters from the keys v_saw, d, l_phase, l_tunnel, area,
/// temperature, f_saw (SI units); absent keys stay unset.
DeviceParams device_params_from(const Config& cfg);

}  // namespace sawmzi
