#include "attodress/dressed.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "attodress/errors.hpp"
#include "parallel.hpp"

namespace attodress {

namespace {

constexpr double kOverlapAmbiguity = 1e-6;
constexpr double kDynamicDriftLimit = 1e-8;
constexpr double kDegenerateColumnNorm = 1e-6;
constexpr double kTimeMatch = 1e-9;

Eigen::MatrixXd subspace_hamiltonian(const BoundBasis& basis, double field) {
  Eigen::MatrixXd h = field * basis.dipole();
  for (int n = 0; n < basis.size(); ++n) h(n, n) += basis.energy(n);
  return h;
}

double max_identity_deviation(const Eigen::MatrixXcd& c) {
  const Eigen::MatrixXcd g = c.adjoint() * c;
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

void require_matching_times(std::span<const double> a, std::span<const double> b,
                            const char* where) {
  if (a.size() != b.size()) {
    throw ConfigError(std::string(where) + ": sampling mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + " samples)");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kTimeMatch * std::max(1.0, std::abs(a[i]))) {
      throw ConfigError(std::string(where) + ": sampling mismatch at sample " +
                        std::to_string(i));
    }
  }
}

class SubspaceStepper {
 public:
  SubspaceStepper(const BoundBasis& basis, const Pulse& laser, DynamicIntegrator integrator)
      : diag_(Eigen::Map<const Eigen::VectorXd>(basis.energies().data(), basis.size())),
        z_(basis.dipole().cast<cplx>()),
        laser_(laser),
        integrator_(integrator) {}

  void step(Eigen::MatrixXcd& u, double t, double h) const {
    if (integrator_ == DynamicIntegrator::magnus4) {
      magnus4(u, t, h);
    } else {
      rk4(u, t, h);
    }
  }

 private:
  Eigen::MatrixXcd hamiltonian(double t) const {
    Eigen::MatrixXcd m = laser_.electric_field(t) * z_;
    m.diagonal() += diag_.cast<cplx>();
    return m;
  }

  void magnus4(Eigen::MatrixXcd& u, double t, double h) const {
    const double c = std::sqrt(3.0) / 6.0;
    const Eigen::MatrixXcd h1 = hamiltonian(t + (0.5 - c) * h);
    const Eigen::MatrixXcd h2 = hamiltonian(t + (0.5 + c) * h);
    // Omega = -i K with K Hermitian.
    const Eigen::MatrixXcd commutator = h2 * h1 - h1 * h2;
    Eigen::MatrixXcd k = 0.5 * h * (h1 + h2) -
                         cplx{0.0, std::sqrt(3.0) / 12.0 * h * h} * commutator;
    k = 0.5 * (k + k.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index j = 0; j < lambda.size(); ++j) phases(j) = std::polar(1.0, -lambda(j));
    const Eigen::MatrixXcd& v = es.eigenvectors();
    u = (v * phases.asDiagonal() * v.adjoint() * u).eval();
  }

  void rk4(Eigen::MatrixXcd& u, double t, double h) const {
    const cplx mi{0.0, -1.0};
    const Eigen::MatrixXcd ha = hamiltonian(t);
    const Eigen::MatrixXcd hb = hamiltonian(t + 0.5 * h);
    const Eigen::MatrixXcd hc = hamiltonian(t + h);
    const Eigen::MatrixXcd k1 = mi * ha * u;
    const Eigen::MatrixXcd k2 = mi * hb * (u + 0.5 * h * k1);
    const Eigen::MatrixXcd k3 = mi * hb * (u + 0.5 * h * k2);
    const Eigen::MatrixXcd k4 = mi * hc * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Eigen::VectorXd diag_;
  Eigen::MatrixXcd z_;
  Pulse laser_;
  DynamicIntegrator integrator_;
};

}  // namespace

char family_tag(Family f) {
  switch (f) {
    case Family::unperturbed: return 'u';
    case Family::adiabatic: return 'a';
    case Family::dynamic: return 'd';
    case Family::projected: return 'p';
  }
  return '?';
}

Family parse_family(const std::string& tag) {
  if (tag == "u") return Family::unperturbed;
  if (tag == "a") return Family::adiabatic;
  if (tag == "d") return Family::dynamic;
  if (tag == "p") return Family::projected;
  throw ConfigError("unknown dressed-state family '" + tag + "' (expected u, a, d or p)");
}

DressedTrajectory unperturbed_family(const BoundBasis& basis, std::span<const double> times) {
  DressedTrajectory out;
  out.family = Family::unperturbed;
  out.times.assign(times.begin(), times.end());
  out.coeffs.assign(times.size(), Eigen::MatrixXcd::Identity(basis.size(), basis.size()));
  return out;
}

DressedTrajectory adiabatic_family(const BoundBasis& basis, const Pulse& laser,
                                   std::span<const double> times) {
  const int n = basis.size();
  DressedTrajectory out;
  out.family = Family::adiabatic;
  out.times.assign(times.begin(), times.end());
  out.coeffs.reserve(times.size());
  out.energies.reserve(times.size());

  Eigen::MatrixXd previous;
  for (std::size_t s = 0; s < times.size(); ++s) {
    const double t = times[s];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        subspace_hamiltonian(basis, laser.electric_field(t)));
    const Eigen::MatrixXd& v = es.eigenvectors();
    const Eigen::VectorXd& lambda = es.eigenvalues();

    Eigen::MatrixXd current(n, n);
    Eigen::VectorXd energies(n);
    if (s == 0) {
      for (int k = 0; k < n; ++k) {
        Eigen::Index imax = 0;
        v.col(k).cwiseAbs().maxCoeff(&imax);
        current.col(k) = v(imax, k) < 0.0 ? Eigen::VectorXd(-v.col(k)) : Eigen::VectorXd(v.col(k));
        energies(k) = lambda(k);
      }
    } else {
      const Eigen::MatrixXd overlap = previous.transpose() * v;  // (prev n, new k)
      std::vector<bool> taken(n, false);
      for (int m = 0; m < n; ++m) {
        int best = -1;
        double best_abs = -1.0, second_abs = -1.0;
        for (int k = 0; k < n; ++k) {
          const double a = std::abs(overlap(m, k));
          if (a > best_abs) {
            second_abs = best_abs;
            best_abs = a;
            best = k;
          } else if (a > second_abs) {
            second_abs = a;
          }
        }
        if (best_abs - second_abs < kOverlapAmbiguity || taken[best]) {
          throw ContinuityError("adiabatic_family: ambiguous overlap match for state " +
                                std::to_string(m) + " at t = " + std::to_string(t) +
                                " (best " + std::to_string(best_abs) + ", runner-up " +
                                std::to_string(second_abs) + ")");
        }
        taken[best] = true;
        const double sign = overlap(m, best) < 0.0 ? -1.0 : 1.0;
        current.col(m) = sign * v.col(best);
        energies(m) = lambda(best);
      }
    }
    out.coeffs.push_back(current.cast<cplx>());
    out.energies.push_back(energies);
    previous = std::move(current);
  }
  return out;
}

DressedTrajectory dynamic_family(const BoundBasis& basis, const Pulse& laser,
                                 std::span<const double> times, double dt,
                                 DynamicIntegrator integrator) {
  if (!(dt > 0.0)) throw ConfigError("dynamic_family: dt must be positive");
  const int n = basis.size();
  DressedTrajectory out;
  out.family = Family::dynamic;
  out.times.assign(times.begin(), times.end());
  out.coeffs.reserve(times.size());

  SubspaceStepper stepper(basis, laser, integrator);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t s = 0; s < times.size(); ++s) {
    if (s > 0) {
      const double interval = times[s] - times[s - 1];
      const double ratio = interval / dt;
      const double m = std::round(ratio);
      if (m < 1.0 || std::abs(ratio - m) > 1e-6) {
        throw ConfigError("dynamic_family: dt does not divide the sampling interval");
      }
      const double h = interval / m;
      for (int j = 0; j < static_cast<int>(m); ++j) {
        stepper.step(u, times[s - 1] + j * h, h);
      }
      const double drift = max_identity_deviation(u);
      if (!(drift <= kDynamicDriftLimit)) {
        throw StabilityError("dynamic_family: orthonormality drift " + std::to_string(drift) +
                             " at t = " + std::to_string(times[s]));
      }
    }
    out.coeffs.push_back(u);
  }
  return out;
}

DressedTrajectory projected_family(std::span<const ProjectedRun> runs, const BoundBasis& basis,
                                   int n_dressed) {
  if (runs.empty()) throw ConfigError("projected_family: no laser-only runs");
  const int nd = n_dressed < 0 ? static_cast<int>(runs.size()) : n_dressed;
  if (nd < 1 || nd > static_cast<int>(runs.size()) || nd > basis.size()) {
    throw ConfigError("projected_family: need one run per dressed state");
  }
  for (int k = 1; k < nd; ++k) {
    require_matching_times(runs[0].times, runs[k].times, "projected_family");
  }
  const int nb = basis.size();
  DressedTrajectory out;
  out.family = Family::projected;
  out.times = runs[0].times;
  out.coeffs.reserve(out.times.size());

  for (std::size_t s = 0; s < out.times.size(); ++s) {
    Eigen::MatrixXcd c(nb, nd);
    for (int k = 0; k < nd; ++k) {
      Eigen::VectorXcd v = runs[k].overlaps[s];
      if (v.size() != nb) throw ConfigError("projected_family: run/basis size mismatch");
      // Two modified Gram-Schmidt passes; the second only removes roundoff.
      for (int pass = 0; pass < 2; ++pass) {
        for (int l = 0; l < k; ++l) v -= c.col(l).dot(v) * c.col(l);
      }
      const double norm = v.norm();
      if (!(norm >= kDegenerateColumnNorm)) {
        throw DegeneracyError("projected_family: dressed state " + std::to_string(k) +
                              " is fully depleted at t = " + std::to_string(out.times[s]) +
                              " (column norm " + std::to_string(norm) + ")");
      }
      c.col(k) = v / norm;
    }
    out.coeffs.push_back(std::move(c));
  }
  return out;
}

std::vector<ProjectedRun> laser_only_runs(const BoundBasis& basis, const Potential& pot,
                                          const PropagationPlan& plan, int n_runs, int workers) {
  if (n_runs < 1 || n_runs > basis.size()) {
    throw ConfigError("laser_only_runs: run count must be within the basis size");
  }
  std::vector<ProjectedRun> runs(static_cast<std::size_t>(n_runs));
  detail::parallel_for(runs.size(), workers, [&](std::size_t n) {
    runs[n] = propagate_projected(basis.state(static_cast<int>(n)), pot, plan, basis);
  });
  return runs;
}

DressedTrajectory projected_family(const BoundBasis& basis, const Pulse& laser,
                                   const Potential& pot, const PropagationPlan& plan) {
  PropagationPlan laser_plan = plan;
  laser_plan.fields = {laser};
  const auto runs = laser_only_runs(basis, pot, laser_plan, basis.size());
  DressedTrajectory out = projected_family(runs, basis);
  attach_amplitudes(out, runs);
  return out;
}

std::vector<Eigen::VectorXcd> depletion_amplitudes(const DressedTrajectory& family,
                                                   std::span<const ProjectedRun> runs) {
  const int nd = family.n_dressed();
  const int n_avail = std::min<int>(nd, static_cast<int>(runs.size()));
  for (int k = 0; k < n_avail; ++k) {
    require_matching_times(family.times, runs[k].times, "depletion_amplitudes");
  }
  std::vector<Eigen::VectorXcd> out(family.size());
  const cplx nan{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  for (std::size_t s = 0; s < family.size(); ++s) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Constant(nd, nan);
    for (int k = 0; k < n_avail; ++k) a(k) = family.coeffs[s].col(k).dot(runs[k].overlaps[s]);
    out[s] = std::move(a);
  }
  return out;
}

void attach_amplitudes(DressedTrajectory& family, std::span<const ProjectedRun> runs) {
  family.amplitudes = depletion_amplitudes(family, runs);
}

std::vector<Eigen::MatrixXcd> dressed_dipole(const DressedTrajectory& family,
                                             const BoundBasis& basis) {
  const Eigen::MatrixXcd z0 = basis.dipole().cast<cplx>();
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(family.size());
  for (const auto& c : family.coeffs) out.push_back(c.adjoint() * z0 * c);
  return out;
}

double orthonormality_error(const DressedTrajectory& family) {
  double worst = 0.0;
  for (const auto& c : family.coeffs) worst = std::max(worst, max_identity_deviation(c));
  return worst;
}

double propagator_consistency(const DressedTrajectory& family, const BoundBasis& basis,
                              const Potential& pot, const Pulse& laser, double dt, int n,
                              std::size_t sample1, std::size_t sample2) {
  if (!family.has_amplitudes()) {
    throw ConfigError("propagator_consistency: amplitudes not attached");
  }
  if (!(sample1 < sample2) || sample2 >= family.size()) {
    throw ConfigError("propagator_consistency: invalid sample pair");
  }
  PropagationPlan plan;
  plan.dt = dt;
  plan.t_start = family.times[sample1];
  plan.t_end = family.times[sample2];
  plan.fields = {laser};
  plan.sample_stride = static_cast<int>(plan.steps());

  Wavefunction phi = basis.compose(family.coeffs[sample1].col(n));
  phi.normalize();
  const Wavefunction evolved = propagate(phi, pot, plan, SampleObserver{});
  const cplx matrix_element = family.coeffs[sample2].col(n).dot(basis.project(evolved));
  const cplx ratio = family.amplitudes[sample2](n) / family.amplitudes[sample1](n);
  return std::abs(matrix_element - ratio);
}

}  // namespace attodress
