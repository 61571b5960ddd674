#include "attodress/units.hpp"

#include <algorithm>
#include <cctype>

#include "attodress/errors.hpp"

namespace attodress {

double convert_units(double value, Unit from, Unit to) {
  if (from == to) return value;
  using enum Unit;
  if (from == hartree && to == electron_volt) return value * kHartreeInEv;
  if (from == electron_volt && to == hartree) return value / kHartreeInEv;
  if (from == au_time && to == femtosecond) return value / kAuTimePerFs;
  if (from == femtosecond && to == au_time) return value * kAuTimePerFs;
  if (from == au_field && to == volt_per_meter) return value * kVoltPerMeterPerAuField;
  if (from == volt_per_meter && to == au_field) return value / kVoltPerMeterPerAuField;
  throw ConfigError("convert_units: unsupported unit pair");
}

Unit parse_unit(const std::string& raw) {
  std::string name = raw;
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "hartree") return Unit::hartree;
  if (name == "ev") return Unit::electron_volt;
  if (name == "au_time") return Unit::au_time;
  if (name == "fs") return Unit::femtosecond;
  if (name == "au_field") return Unit::au_field;
  if (name == "v/m") return Unit::volt_per_meter;
  throw ConfigError("unknown unit '" + raw + "'");
}

}  // namespace attodress
