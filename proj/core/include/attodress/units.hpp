#pragma once

#include <string>

namespace attodress {

// Conversion constants used at the reporting boundary. Everything inside the
// library is in atomic units.
inline constexpr double kHartreeInEv = 27.2114;
inline constexpr double kAuTimePerFs = 41.341;
inline constexpr double kVoltPerMeterPerAuField = 5.412e11;

enum class Unit { hartree, electron_volt, au_time, femtosecond, au_field, volt_per_meter };

// Supported pairs: hartree<->eV, a.u. time<->fs, a.u. field<->V/m (and the
// identity). Throws ConfigError for anything else.
double convert_units(double value, Unit from, Unit to);

// "hartree", "ev", "au_time", "fs", "au_field", "v/m".
Unit parse_unit(const std::string& name);

inline double au_to_fs(double t) { return t / kAuTimePerFs; }
inline double hartree_to_ev(double e) { return e * kHartreeInEv; }

}  // namespace attodress
