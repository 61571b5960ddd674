#pragma once

#include <Eigen/Dense>
#include <vector>

#include "attodress/dressed.hpp"
#include "attodress/pulses.hpp"
#include "attodress/spectrum.hpp"

namespace attodress {

inline constexpr double kDefaultAmplitudeFloor = 1e-3;

enum class SumRange {
  restricted,  // n = 0..max(i, f)
  full,        // every dressed state
};

// First-order probe interaction on top of a dressed family with attached
// amplitudes. Caches Z(t) = C^+ Z0 C for repeated evaluation (delay scans).
class ProbeModel {
 public:
  ProbeModel(DressedTrajectory family, const BoundBasis& basis,
             double amp_floor = kDefaultAmplitudeFloor);

  const DressedTrajectory& family() const { return family_; }
  const std::vector<Eigen::MatrixXcd>& dipole() const { return dipole_; }
  double amp_floor() const { return amp_floor_; }

  // alpha_{n i}(t_s) = -i a_n(t_s) * integral E_probe(t') a_i(t')/a_n(t') Z_{n i}(t') dt'
  // by the trapezoid rule on the sampling grid up to sample s (default: the
  // last sample). Throws DepletionSingularityError when |a_n| < amp_floor
  // inside the probe support.
  cplx transition_amplitude(int i, int n, const Pulse& probe) const;
  cplx transition_amplitude(int i, int n, const Pulse& probe, std::size_t sample) const;

  // Running alpha_{n i}(t_s) for every sample.
  std::vector<cplx> transition_amplitude_series(int i, int n, const Pulse& probe) const;

  // p_{f i} = |sum_n alpha_{n i}(t_f) <f|phi_n(t_f)>|^2 with alpha_{ii} = a_i(t_f),
  // at the final sample.
  double final_probability(int i, int f, const Pulse& probe,
                           SumRange range = SumRange::restricted) const;

  // Same sum without the n = i term: the part of <f|psi(t_f)> driven by the probe.
  double induced_probability(int i, int f, const Pulse& probe,
                             SumRange range = SumRange::restricted) const;

 private:
  cplx final_sum(int i, int f, const Pulse& probe, SumRange range, bool with_initial) const;

  void check_indices(int i, int n) const;

  DressedTrajectory family_;
  std::vector<Eigen::MatrixXcd> dipole_;
  double amp_floor_;
};

cplx transition_amplitude(int i, int n, const DressedTrajectory& family, const BoundBasis& basis,
                          const Pulse& probe, double amp_floor = kDefaultAmplitudeFloor);

double final_probability(int i, int f, const DressedTrajectory& family, const BoundBasis& basis,
                         const Pulse& probe, SumRange range = SumRange::restricted,
                         double amp_floor = kDefaultAmplitudeFloor);

struct DipoleResponse {
  std::vector<double> times;
  // sum_{m,n} conj(alpha_m) Z_mn alpha_n over states 0..n_max
  std::vector<double> total;
  // total minus the laser-only term |a_i|^2 Z_ii
  std::vector<double> probe_induced;
  // largest |Im d(t)| seen; zero up to roundoff for Hermitian Z
  double max_imaginary = 0.0;
};

// d(t) with alpha_{ii}(t) = a_i(t) and the running upper limit in the
// transition-amplitude integral. States 0..n_max enter the double sum
// (n_max < 0 selects every dressed state).
DipoleResponse dipole_response(int i, const ProbeModel& model, const Pulse& probe, int n_max = -1);

}  // namespace attodress
