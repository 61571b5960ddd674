#include "attodress/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "attodress/errors.hpp"

namespace attodress {

namespace {

double fwhm_factor() { return 2.0 * std::acos(std::pow(2.0, -0.25)); }

}  // namespace

Pulse::Pulse(double e_max, double omega, double envelope_T, double t_center)
    : e_max_(e_max), omega_(omega), t_env_(envelope_T), t_center_(t_center) {
  if (!std::isfinite(e_max) || !std::isfinite(t_center)) {
    throw ConfigError("pulse: non-finite parameter");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError("pulse: carrier frequency must be positive");
  }
  if (!(envelope_T > 0.0) || !std::isfinite(envelope_T)) {
    throw ConfigError("pulse: envelope parameter T must be positive (empty support)");
  }
}

double Pulse::vector_potential(double t) const {
  const double s = t - t_center_;
  if (std::abs(s) >= 0.5 * std::numbers::pi * t_env_) return 0.0;
  const double c = std::cos(s / t_env_);
  return -a_max() * c * c * std::sin(omega_ * s);
}

double Pulse::electric_field(double t) const {
  const double s = t - t_center_;
  if (std::abs(s) >= 0.5 * std::numbers::pi * t_env_) return 0.0;
  const double x = s / t_env_;
  const double c = std::cos(x);
  // -d/dt [-A cos^2(x) sin(w s)] = A [w cos^2 cos(w s) - (1/T) sin(2x) sin(w s)]
  return a_max() * (omega_ * c * c * std::cos(omega_ * s) -
                    std::sin(2.0 * x) * std::sin(omega_ * s) / t_env_);
}

Support Pulse::support() const {
  const double half = 0.5 * std::numbers::pi * t_env_;
  return {t_center_ - half, t_center_ + half};
}

Pulse Pulse::centered_at(double t_center) const {
  return Pulse(e_max_, omega_, t_env_, t_center);
}

Pulse Pulse::with_e_max(double e_max) const {
  return Pulse(e_max, omega_, t_env_, t_center_);
}

double vector_potential(const Pulse& p, double t) { return p.vector_potential(t); }
double electric_field(const Pulse& p, double t) { return p.electric_field(t); }
Support support(const Pulse& p) { return p.support(); }

double total_field(std::span<const Pulse> pulses, double t) {
  double e = 0.0;
  for (const Pulse& p : pulses) e += p.electric_field(t);
  return e;
}

double fwhm_to_envelope_T(double fwhm) {
  if (!(fwhm > 0.0)) throw ConfigError("fwhm must be positive");
  return fwhm / fwhm_factor();
}

double envelope_T_to_fwhm(double envelope_T) { return envelope_T * fwhm_factor(); }

Support union_support(std::span<const Pulse> pulses) {
  if (pulses.empty()) throw ConfigError("union_support: no pulses");
  Support s{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Pulse& p : pulses) {
    const Support q = p.support();
    s.begin = std::min(s.begin, q.begin);
    s.end = std::max(s.end, q.end);
  }
  return s;
}

}  // namespace attodress
