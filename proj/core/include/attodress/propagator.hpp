#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "attodress/grid.hpp"
#include "attodress/pulses.hpp"
#include "attodress/spectrum.hpp"

namespace attodress {

struct PropagationPlan {
  double dt = 0.02;
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<Pulse> fields;
  int sample_stride = 5;
  bool absorber_enabled = false;
  double absorber_width = 0.0;

  // Number of time steps; throws ConfigError unless (t_end - t_start)/dt is
  // an integer to 1e-9.
  std::size_t steps() const;
  double time_at_step(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }
  // Steps at which a snapshot is emitted: every sample_stride steps plus the
  // final step.
  std::vector<std::size_t> sample_steps() const;
  std::vector<double> sample_times() const;
  void validate() const;

  // Window spanning the union of the pulse supports padded by `padding` on
  // both sides; the end is pushed outward so the step count is a multiple
  // of sample_stride.
  static PropagationPlan covering(std::vector<Pulse> fields, double dt, int sample_stride,
                                  double padding = 1.0);
  // Same construction but over an explicit window.
  static PropagationPlan over(double t_start, double t_end_min, std::vector<Pulse> fields,
                              double dt, int sample_stride);
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Wavefunction> states;
};

// One Crank-Nicolson step of i dpsi/dt = (H0 + F z) psi with a precomputed
// field value F. dt may be negative (backward step, exact inverse of the
// forward one for the same F).
class CrankNicolson {
 public:
  explicit CrankNicolson(const Potential& pot);

  void step(std::span<cplx> psi, double dt, double field);
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  std::vector<double> h0_diag_;
  double h0_off_;
  std::vector<double> z_;
  std::vector<cplx> c_prime_;
  std::vector<cplx> r_prime_;
};

// cos^(1/8) mask falling from 1 to 0 over `width` at each edge.
class Absorber {
 public:
  Absorber(const Grid& grid, double width);
  void apply(std::span<cplx> psi) const;
  std::span<const double> mask() const { return mask_; }

 private:
  std::vector<double> mask_;
};

using SampleObserver = std::function<void(double t, const Wavefunction& psi)>;

// Crank-Nicolson propagation with the field evaluated at t + dt/2. The
// observer sees the state at every sample instant, including both endpoints.
// Throws StabilityError on NaN or, with the absorber off, on norm drift
// above 1e-6. Returns the final state.
Wavefunction propagate(const Wavefunction& psi0, const Potential& pot,
                       const PropagationPlan& plan, const SampleObserver& observer);

// Same, storing every sampled snapshot. Memory grows with
// n_points * samples; use a large stride for long runs.
Trajectory propagate(const Wavefunction& psi0, const Potential& pot,
                     const PropagationPlan& plan);

// Bound-subspace record of a run: <m|psi(t)> for every basis state m and
// the full norm, at every sample instant.
struct ProjectedRun {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> overlaps;
  std::vector<double> norms;

  std::size_t size() const { return times.size(); }
};

ProjectedRun propagate_projected(const Wavefunction& psi0, const Potential& pot,
                                 const PropagationPlan& plan, const BoundBasis& basis);
ProjectedRun project_trajectory(const Trajectory& trajectory, const BoundBasis& basis);

// 1 - sum_n |<n|psi>|^2 over the basis, clamped to [0, 1].
double ionization_probability(const Wavefunction& psi, const BoundBasis& basis);
double ionization_probability(const Eigen::VectorXcd& overlaps);

// Requires plan.absorber_enabled; width above a quarter box is rejected.
Wavefunction apply_absorber(const Wavefunction& psi, const PropagationPlan& plan);

}  // namespace attodress
