#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "attodress/propagator.hpp"
#include "attodress/pulses.hpp"
#include "attodress/spectrum.hpp"

namespace attodress {

// The four dressed-bound-state families.
//   u: unperturbed field-free states
//   a: adiabatic (instantaneous eigenstates of H0 + E_L z in the bound subspace)
//   d: dynamically dressed (TDSE solved inside the bound subspace)
//   p: projected dynamical (full TDSE projected on the bound subspace, then
//      Gram-Schmidt orthonormalized in ascending order)
enum class Family { unperturbed, adiabatic, dynamic, projected };

inline constexpr Family kAllFamilies[] = {Family::unperturbed, Family::adiabatic,
                                          Family::dynamic, Family::projected};

char family_tag(Family f);
// Accepts "u", "a", "d", "p"; throws ConfigError otherwise.
Family parse_family(const std::string& tag);

// Time series of dressed states expanded in the field-free bound basis.
// coeffs[s] is N_b x N_d; column n holds <m|phi_n(t_s)>. amplitudes[s](n) is
// a_n(t_s) = <phi_n(t_s)|U_L(t_s, t_0)|n> once attached.
struct DressedTrajectory {
  Family family = Family::unperturbed;
  std::vector<double> times;
  std::vector<Eigen::MatrixXcd> coeffs;
  std::vector<Eigen::VectorXcd> amplitudes;
  std::vector<Eigen::VectorXd> energies;  // adiabatic family only

  std::size_t size() const { return times.size(); }
  int n_dressed() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().cols()); }
  int n_basis() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().rows()); }
  bool has_amplitudes() const { return amplitudes.size() == times.size() && !times.empty(); }
};

DressedTrajectory unperturbed_family(const BoundBasis& basis, std::span<const double> times);

// Diagonalizes diag(eps) + E_L(t) Z0 at every instant. States are followed
// by maximum overlap with the previous instant and sign-fixed to a positive
// overlap; the first instant is ordered by energy. Throws ContinuityError
// when the two best overlaps are within 1e-6 of each other.
DressedTrajectory adiabatic_family(const BoundBasis& basis, const Pulse& laser,
                                   std::span<const double> times);

enum class DynamicIntegrator {
  magnus4,  // fourth-order commutator Magnus step, exactly unitary
  rk4,      // classical Runge-Kutta, unitary only to O(dt^6) per step
};

// Integrates i dC/dt = (diag(eps) + E_L(t) Z0) C from C(t_0) = 1 at step dt.
// Each sampling interval must be an integer multiple of dt. Throws
// StabilityError if ||C^+ C - 1|| exceeds 1e-8.
DressedTrajectory dynamic_family(const BoundBasis& basis, const Pulse& laser,
                                 std::span<const double> times, double dt,
                                 DynamicIntegrator integrator = DynamicIntegrator::magnus4);

// Gram-Schmidt of the projected laser-only runs: runs[n] must start from
// |n>. Uses the first n_dressed runs (all of them when n_dressed < 0).
// Throws DegeneracyError if a column norm falls below 1e-6 before
// normalization.
DressedTrajectory projected_family(std::span<const ProjectedRun> runs, const BoundBasis& basis,
                                   int n_dressed = -1);

// Convenience: runs the laser-only propagations itself.
DressedTrajectory projected_family(const BoundBasis& basis, const Pulse& laser,
                                   const Potential& pot, const PropagationPlan& plan);

// Laser-only runs from |0>, ..., |n_runs-1>, executed on up to `workers`
// threads. The result order does not depend on scheduling.
std::vector<ProjectedRun> laser_only_runs(const BoundBasis& basis, const Potential& pot,
                                          const PropagationPlan& plan, int n_runs,
                                          int workers = 1);

// a_n(t) = <phi_n(t)|psi_L^(n)(t)> for n < min(n_dressed, runs.size()).
// Entries without a run are NaN. Throws ConfigError on a sampling mismatch.
std::vector<Eigen::VectorXcd> depletion_amplitudes(const DressedTrajectory& family,
                                                   std::span<const ProjectedRun> runs);

// Computes and stores the amplitudes in family.amplitudes.
void attach_amplitudes(DressedTrajectory& family, std::span<const ProjectedRun> runs);

// Z(t) = C(t)^+ Z0 C(t).
std::vector<Eigen::MatrixXcd> dressed_dipole(const DressedTrajectory& family,
                                             const BoundBasis& basis);

// max over samples of max |(C^+ C - 1)_mn|.
double orthonormality_error(const DressedTrajectory& family);

// Checks the no-transition assumption on a stored family: propagates
// |phi_n(t1)> with the full TDSE to t2 and returns
// |<phi_n(t2)|U_L(t2,t1)|phi_n(t1)> - a_n(t2)/a_n(t1)|.
// sample1 < sample2 index into family.times; amplitudes must be attached.
double propagator_consistency(const DressedTrajectory& family, const BoundBasis& basis,
                              const Potential& pot, const Pulse& laser, double dt, int n,
                              std::size_t sample1, std::size_t sample2);

}  // namespace attodress
