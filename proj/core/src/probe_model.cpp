#include "attodress/probe_model.hpp"

#include <cmath>
#include <string>

#include "attodress/errors.hpp"

namespace attodress {

namespace {

// Sample range [lo, hi] covering the open probe support with one sample of
// margin on each side (the field vanishes there, so the trapezoid over the
// range equals the trapezoid over the whole grid).
std::pair<std::size_t, std::size_t> window(const std::vector<double>& times, const Support& s) {
  std::size_t lo = 0;
  while (lo + 1 < times.size() && times[lo + 1] <= s.begin) ++lo;
  std::size_t hi = times.size() - 1;
  while (hi > 0 && times[hi - 1] >= s.end) --hi;
  return {lo, hi};
}

}  // namespace

ProbeModel::ProbeModel(DressedTrajectory family, const BoundBasis& basis, double amp_floor)
    : family_(std::move(family)), amp_floor_(amp_floor) {
  if (!family_.has_amplitudes()) {
    throw ConfigError("probe model: dressed family has no depletion amplitudes attached");
  }
  if (!(amp_floor >= 0.0)) throw ConfigError("probe model: amplitude floor must be >= 0");
  dipole_ = dressed_dipole(family_, basis);
}

void ProbeModel::check_indices(int i, int n) const {
  const int nd = family_.n_dressed();
  if (i < 0 || n < 0 || i >= nd || n >= nd) {
    throw ConfigError("probe model: state index out of range (have " + std::to_string(nd) +
                      " dressed states)");
  }
  for (int k : {i, n}) {
    if (std::isnan(family_.amplitudes.front()(k).real())) {
      throw ConfigError("probe model: no laser-only run for state " + std::to_string(k));
    }
  }
}

std::vector<cplx> ProbeModel::transition_amplitude_series(int i, int n, const Pulse& probe) const {
  check_indices(i, n);
  if (i == n) throw ConfigError("transition_amplitude: requires n != i");
  const auto& times = family_.times;
  const auto& amps = family_.amplitudes;
  const Support sup = probe.support();
  const auto [lo, hi] = window(times, sup);

  std::vector<cplx> integrand(times.size(), cplx{0.0, 0.0});
  for (std::size_t s = lo; s <= hi; ++s) {
    const double e = probe.electric_field(times[s]);
    if (e == 0.0) continue;
    const cplx an = amps[s](n);
    if (std::abs(an) < amp_floor_) {
      throw DepletionSingularityError(
          "transition_amplitude: |a_" + std::to_string(n) + "| = " +
              std::to_string(std::abs(an)) + " below floor at t = " + std::to_string(times[s]),
          n, times[s]);
    }
    integrand[s] = e * (amps[s](i) / an) * dipole_[s](n, i);
  }

  std::vector<cplx> out(times.size());
  cplx integral{0.0, 0.0};
  out[0] = cplx{0.0, 0.0};
  for (std::size_t s = 1; s < times.size(); ++s) {
    if (s > lo && s <= hi) {
      integral += 0.5 * (times[s] - times[s - 1]) * (integrand[s] + integrand[s - 1]);
    }
    out[s] = cplx{0.0, -1.0} * amps[s](n) * integral;
  }
  return out;
}

cplx ProbeModel::transition_amplitude(int i, int n, const Pulse& probe, std::size_t sample) const {
  if (sample >= family_.size()) throw ConfigError("transition_amplitude: sample out of range");
  return transition_amplitude_series(i, n, probe)[sample];
}

cplx ProbeModel::transition_amplitude(int i, int n, const Pulse& probe) const {
  return transition_amplitude(i, n, probe, family_.size() - 1);
}

double ProbeModel::final_probability(int i, int f, const Pulse& probe, SumRange range) const {
  return std::norm(final_sum(i, f, probe, range, true));
}

double ProbeModel::induced_probability(int i, int f, const Pulse& probe, SumRange range) const {
  return std::norm(final_sum(i, f, probe, range, false));
}

cplx ProbeModel::final_sum(int i, int f, const Pulse& probe, SumRange range,
                           bool with_initial) const {
  const int nb = family_.n_basis();
  if (f < 0 || f >= nb) throw ConfigError("final_probability: final state out of range");
  if (probe.support().end > family_.times.back()) {
    throw ConfigError("final_probability: final time precedes the end of the probe");
  }
  const int n_top = range == SumRange::restricted ? std::max(i, f) : family_.n_dressed() - 1;
  if (n_top >= family_.n_dressed()) {
    throw ConfigError("final_probability: family has too few dressed states for this sum");
  }
  const std::size_t last = family_.size() - 1;
  const Eigen::MatrixXcd& c = family_.coeffs[last];
  cplx total{0.0, 0.0};
  for (int n = 0; n <= n_top; ++n) {
    if (n == i && !with_initial) continue;
    const cplx alpha =
        n == i ? family_.amplitudes[last](i) : transition_amplitude(i, n, probe, last);
    total += alpha * c(f, n);
  }
  return total;
}

cplx transition_amplitude(int i, int n, const DressedTrajectory& family, const BoundBasis& basis,
                          const Pulse& probe, double amp_floor) {
  return ProbeModel(family, basis, amp_floor).transition_amplitude(i, n, probe);
}

double final_probability(int i, int f, const DressedTrajectory& family, const BoundBasis& basis,
                         const Pulse& probe, SumRange range, double amp_floor) {
  return ProbeModel(family, basis, amp_floor).final_probability(i, f, probe, range);
}

DipoleResponse dipole_response(int i, const ProbeModel& model, const Pulse& probe, int n_max) {
  const auto& family = model.family();
  const int top = n_max < 0 ? family.n_dressed() - 1 : n_max;
  if (top >= family.n_dressed() || i > top) {
    throw ConfigError("dipole_response: state range exceeds the dressed family");
  }
  std::vector<std::vector<cplx>> alpha(static_cast<std::size_t>(top + 1));
  for (int n = 0; n <= top; ++n) {
    if (n == i) {
      alpha[n].resize(family.size());
      for (std::size_t s = 0; s < family.size(); ++s) alpha[n][s] = family.amplitudes[s](i);
    } else {
      alpha[n] = model.transition_amplitude_series(i, n, probe);
    }
  }

  DipoleResponse out;
  out.times = family.times;
  out.total.resize(family.size());
  out.probe_induced.resize(family.size());
  for (std::size_t s = 0; s < family.size(); ++s) {
    const Eigen::MatrixXcd& z = model.dipole()[s];
    cplx d{0.0, 0.0};
    for (int m = 0; m <= top; ++m) {
      for (int n = 0; n <= top; ++n) d += std::conj(alpha[m][s]) * z(m, n) * alpha[n][s];
    }
    const cplx laser_only = std::norm(alpha[i][s]) * z(i, i);
    out.total[s] = d.real();
    out.probe_induced[s] = (d - laser_only).real();
    out.max_imaginary = std::max(out.max_imaginary, std::abs(d.imag()));
  }
  return out;
}

}  // namespace attodress
