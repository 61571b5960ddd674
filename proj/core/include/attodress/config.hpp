#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attodress/pulses.hpp"

namespace attodress {

// Fully resolved run configuration. Defaults reproduce the soft-core model
// atom and pulses of the reference calculations; everything in atomic units.
struct Config {
  double grid_dz = 0.1;
  double grid_box = 819.2;
  double soft_core_a = 0.3;
  int n_states = 5;

  double laser_e_max = 0.02;
  double laser_omega = 0.06;
  double laser_T = 126.78;

  double probe_e_max = 1e-3;
  double probe_omega = 1.34;
  double probe_T = 10.84;
  double probe_tau = 0.0;

  double dt = 0.02;
  int sample_stride = 5;
  bool absorber_enabled = false;
  double absorber_width = 50.0;

  double amp_floor = 1e-3;

  double tau_min = -150.0;
  double tau_max = 150.0;
  double tau_step = 5.0;
  int workers = 1;

  Pulse laser() const { return Pulse(laser_e_max, laser_omega, laser_T, 0.0); }
  Pulse probe() const { return Pulse(probe_e_max, probe_omega, probe_T, probe_tau); }
  std::vector<double> tau_grid() const;
};

// Flat "key = value" text; '#' starts a comment. Unknown keys, non-numeric
// values and out-of-range values throw ConfigError naming the key.
Config parse_config(std::string_view text);

// Applies one override on top of an existing configuration.
void set_config_value(Config& config, std::string_view key, std::string_view value);

// Every key with its value at full precision, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const Config& config);
std::string to_text(const Config& config);

// Reads either a key = value file or a run manifest (JSON with a "config"
// object), so a manifest can be fed back to reproduce a run.
Config load_config_file(const std::string& path);

}  // namespace attodress
