#include "sawmzi/config.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sawmzi {

namespace {

// Union of the keys every subcommand understands; typos fail loudly.
constexpr std::array<const char*, 30> kKnownKeys = {
    // device geometry and operating point
    "v_saw", "d", "l_phase", "l_tunnel", "area", "temperature", "f_saw",
    // fringe sweeps
    "theta1", "theta2", "gamma", "v", "tau", "t2", "n_points", "n_samples",
    // coherence-time experiments
    "t2_true", "t2_guess", "n_settings", "input_csv",
    // field sensing
    "e_field", "observed_p1", "working_point", "delta_t",
    // complete-positivity check
    "eta_x", "eta_y", "eta_z",
    // design summary and calibration
    "v_min", "tol", "offset1", "offset2"};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys)
    if (key == k) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

Config Config::parse(std::istream& in, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::string key, value;
    if (const auto eq = line.find('='); eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    } else {
      const auto ws = line.find_first_of(" \t");
      if (ws == std::string::npos) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": key '" + line +
                          "' has no value");
      }
      key = trim(line.substr(0, ws));
      value = trim(line.substr(ws + 1));
    }
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed line");
    if (!known_key(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!cfg.values_.emplace(key, value).second)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

double Config::num(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError(origin_ + ": missing config key '" + key + "'");
  const char* begin = it->second.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ConfigError(origin_ + ": key '" + key + "' is not a number: '" + it->second + "'");
  return value;
}

double Config::num_or(const std::string& key, double fallback) const {
  return has(key) ? num(key) : fallback;
}

long long Config::integer(const std::string& key) const {
  const double value = num(key);
  const auto rounded = static_cast<long long>(value);
  if (static_cast<double>(rounded) != value)
    throw ConfigError(origin_ + ": key '" + key + "' is not an integer");
  return rounded;
}

long long Config::integer_or(const std::string& key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    throw ConfigError(origin_ + ": missing config key '" + key + "'");
  return it->second;
}

DeviceParams device_params_from(const Config& cfg) {
  DeviceParams p;
  p.v_saw = cfg.num_or("v_saw", p.v_saw);
  const struct { std::optional<double> DeviceParams::* field; const char* key; } map[] = {
      {&DeviceParams::d, "d"},       {&DeviceParams::l_phase, "l_phase"},
      {&DeviceParams::l_tunnel, "l_tunnel"}, {&DeviceParams::area, "area"},
      {&DeviceParams::temperature, "temperature"}, {&DeviceParams::f_saw, "f_saw"},
  };
  for (const auto& [field, key] : map)
    if (cfg.has(key)) p.*field = cfg.num(key);
  validate(p);
  return p;
}

}  // namespace sawmzi
