#include "attodress/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <variant>

#include "attodress/errors.hpp"

namespace attodress {

namespace {

using DoubleField = double Config::*;
using IntField = int Config::*;
using BoolField = bool Config::*;

struct Key {
  const char* name;
  std::variant<DoubleField, IntField, BoolField> field;
  std::function<bool(double)> in_range;
  const char* range_text;
};

bool positive(double v) { return v > 0.0; }
bool non_negative(double v) { return v >= 0.0; }
bool any_value(double) { return true; }
bool at_least_one(double v) { return v >= 1.0; }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"grid.dz", &Config::grid_dz, positive, "> 0"},
      {"grid.box", &Config::grid_box, positive, "> 0"},
      {"potential.soft_core_a", &Config::soft_core_a, positive, "> 0"},
      {"basis.n_states", &Config::n_states, at_least_one, ">= 1"},
      {"laser.e_max", &Config::laser_e_max, non_negative, ">= 0"},
      {"laser.omega", &Config::laser_omega, positive, "> 0"},
      {"laser.T", &Config::laser_T, positive, "> 0"},
      {"probe.e_max", &Config::probe_e_max, non_negative, ">= 0"},
      {"probe.omega", &Config::probe_omega, positive, "> 0"},
      {"probe.T", &Config::probe_T, positive, "> 0"},
      {"probe.tau", &Config::probe_tau, any_value, "finite"},
      {"propagation.dt", &Config::dt, positive, "> 0"},
      {"propagation.sample_stride", &Config::sample_stride, at_least_one, ">= 1"},
      {"absorber.enabled", &Config::absorber_enabled, any_value, "true/false"},
      {"absorber.width", &Config::absorber_width, positive, "> 0"},
      {"model.amp_floor", &Config::amp_floor, non_negative, ">= 0"},
      {"scan.tau_min", &Config::tau_min, any_value, "finite"},
      {"scan.tau_max", &Config::tau_max, any_value, "finite"},
      {"scan.tau_step", &Config::tau_step, positive, "> 0"},
      {"scan.workers", &Config::workers, at_least_one, ">= 1"},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("config: key '" + std::string(key) + "' expects a number, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<double> Config::tau_grid() const {
  if (!(tau_step > 0.0) || tau_max < tau_min) {
    throw ConfigError("config: invalid tau grid");
  }
  const auto count = static_cast<std::size_t>(std::floor((tau_max - tau_min) / tau_step + 1e-9)) + 1;
  std::vector<double> taus(count);
  for (std::size_t k = 0; k < count; ++k) taus[k] = tau_min + static_cast<double>(k) * tau_step;
  return taus;
}

void set_config_value(Config& config, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  for (const Key& k : keys()) {
    if (key != k.name) continue;
    if (const auto* b = std::get_if<BoolField>(&k.field)) {
      if (value == "true" || value == "1" || value == "on") {
        config.*(*b) = true;
      } else if (value == "false" || value == "0" || value == "off") {
        config.*(*b) = false;
      } else {
        throw ConfigError("config: key '" + std::string(key) + "' expects true/false, got '" +
                          std::string(value) + "'");
      }
      return;
    }
    const double v = parse_number(key, value);
    if (!k.in_range(v)) {
      throw ConfigError("config: key '" + std::string(key) + "' out of range (" + k.range_text +
                        "), got " + std::string(value));
    }
    if (const auto* d = std::get_if<DoubleField>(&k.field)) {
      config.*(*d) = v;
    } else if (const auto* i = std::get_if<IntField>(&k.field)) {
      if (v != std::floor(v)) {
        throw ConfigError("config: key '" + std::string(key) + "' expects an integer, got " +
                          std::string(value));
      }
      config.*(*i) = static_cast<int>(v);
    }
    return;
  }
  throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

Config parse_config(std::string_view text) {
  Config config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  if (config.tau_max < config.tau_min) {
    throw ConfigError("config: key 'scan.tau_max' must not be below scan.tau_min");
  }
  return config;
}

std::vector<std::pair<std::string, std::string>> config_entries(const Config& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Key& k : keys()) {
    std::string value;
    if (const auto* d = std::get_if<DoubleField>(&k.field)) {
      value = format_number(config.*(*d));
    } else if (const auto* i = std::get_if<IntField>(&k.field)) {
      value = std::to_string(config.*(*i));
    } else if (const auto* b = std::get_if<BoolField>(&k.field)) {
      value = config.*(*b) ? "true" : "false";
    }
    out.emplace_back(k.name, std::move(value));
  }
  return out;
}

std::string to_text(const Config& config) {
  std::ostringstream os;
  for (const auto& [key, value] : config_entries(config)) os << key << " = " << value << '\n';
  return os.str();
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json manifest;
    try {
      manifest = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    if (!manifest.contains("config") || !manifest["config"].is_object()) {
      throw ConfigError("config: manifest '" + path + "' has no config object");
    }
    Config config;
    for (const auto& [key, value] : manifest["config"].items()) {
      set_config_value(config, key, value.get<std::string>());
    }
    return config;
  }
  return parse_config(text);
}

}  // namespace attodress
