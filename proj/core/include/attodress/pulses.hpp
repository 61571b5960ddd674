#pragma once

#include <span>
#include <utility>

namespace attodress {

struct Support {
  double begin;
  double end;

  bool contains(double t) const { return t > begin && t < end; }
  double duration() const { return end - begin; }
};

// A pulse defined through its vector potential
//   A(t) = -A_max cos^2((t - t_c)/T) sin(omega (t - t_c)),  |t - t_c| < pi T/2,
// zero elsewhere, with A_max = E_max/omega. The field is E(t) = -A'(t),
// evaluated analytically.
class Pulse {
 public:
  // Throws ConfigError for non-positive omega or T, or non-finite values.
  Pulse(double e_max, double omega, double envelope_T, double t_center = 0.0);

  double e_max() const { return e_max_; }
  double omega() const { return omega_; }
  double envelope_T() const { return t_env_; }
  double t_center() const { return t_center_; }
  double a_max() const { return e_max_ / omega_; }

  double vector_potential(double t) const;
  double electric_field(double t) const;
  Support support() const;

  Pulse centered_at(double t_center) const;
  Pulse with_e_max(double e_max) const;

 private:
  double e_max_;
  double omega_;
  double t_env_;
  double t_center_;
};

double vector_potential(const Pulse& p, double t);
double electric_field(const Pulse& p, double t);
Support support(const Pulse& p);

// Sum of the fields of several pulses.
double total_field(std::span<const Pulse> pulses, double t);

// T = FWHM / (2 arccos(2^(-1/4))), FWHM of the intensity envelope.
double fwhm_to_envelope_T(double fwhm);
double envelope_T_to_fwhm(double envelope_T);

// Smallest interval covering all supports.
Support union_support(std::span<const Pulse> pulses);

}  // namespace attodress
