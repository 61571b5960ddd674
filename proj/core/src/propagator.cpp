#include "attodress/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "attodress/errors.hpp"

namespace attodress {

namespace {

constexpr double kNormDriftLimit = 1e-6;
constexpr double kInitialNormTolerance = 1e-6;

}  // namespace

std::size_t PropagationPlan::steps() const {
  if (!(dt > 0.0)) throw ConfigError("propagation: dt must be positive");
  if (!(t_end > t_start)) throw ConfigError("propagation: t_end must exceed t_start");
  const double ratio = (t_end - t_start) / dt;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio) || n < 1.0) {
    throw ConfigError("propagation: (t_end - t_start)/dt is not an integer");
  }
  return static_cast<std::size_t>(n);
}

std::vector<std::size_t> PropagationPlan::sample_steps() const {
  const std::size_t n = steps();
  if (sample_stride < 1) throw ConfigError("propagation: sample_stride must be >= 1");
  const auto stride = static_cast<std::size_t>(sample_stride);
  std::vector<std::size_t> out;
  out.reserve(n / stride + 2);
  for (std::size_t k = 0; k <= n; k += stride) out.push_back(k);
  if (out.back() != n) out.push_back(n);
  return out;
}

std::vector<double> PropagationPlan::sample_times() const {
  std::vector<double> ts;
  for (std::size_t k : sample_steps()) ts.push_back(time_at_step(k));
  return ts;
}

void PropagationPlan::validate() const {
  (void)steps();
  if (sample_stride < 1) throw ConfigError("propagation: sample_stride must be >= 1");
  if (absorber_enabled && !(absorber_width > 0.0)) {
    throw ConfigError("propagation: absorber width must be positive");
  }
}

PropagationPlan PropagationPlan::over(double t_start, double t_end_min,
                                      std::vector<Pulse> fields, double dt,
                                      int sample_stride) {
  if (!(dt > 0.0)) throw ConfigError("propagation: dt must be positive");
  if (sample_stride < 1) throw ConfigError("propagation: sample_stride must be >= 1");
  if (!(t_end_min > t_start)) throw ConfigError("propagation: empty window");
  const double raw = (t_end_min - t_start) / dt;
  auto n = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  const auto stride = static_cast<std::size_t>(sample_stride);
  n = ((n + stride - 1) / stride) * stride;
  PropagationPlan plan;
  plan.dt = dt;
  plan.t_start = t_start;
  plan.t_end = t_start + static_cast<double>(n) * dt;
  plan.fields = std::move(fields);
  plan.sample_stride = sample_stride;
  return plan;
}

PropagationPlan PropagationPlan::covering(std::vector<Pulse> fields, double dt,
                                          int sample_stride, double padding) {
  const Support s = union_support(fields);
  return over(s.begin - padding, s.end + padding, std::move(fields), dt, sample_stride);
}

CrankNicolson::CrankNicolson(const Potential& pot)
    : grid_(pot.grid()),
      h0_diag_(h0_tridiagonal(pot).diagonal),
      h0_off_(h0_tridiagonal(pot).off_diagonal),
      z_(pot.grid().coordinates()),
      c_prime_(pot.grid().n_points),
      r_prime_(pot.grid().n_points) {}

void CrankNicolson::step(std::span<cplx> psi, double dt, double field) {
  // (1 + i dt/2 H) psi' = (1 - i dt/2 H) psi, H tridiagonal with constant
  // off-diagonal; Thomas sweep with the right-hand side formed on the fly.
  const std::size_t n = psi.size();
  const double half = 0.5 * dt;
  const double hb = half * h0_off_;  // implicit off-diagonal is i*hb
  const double* d = h0_diag_.data();
  const double* z = z_.data();
  cplx* cp = c_prime_.data();
  cplx* rp = r_prime_.data();

  // 1/(x + iy) without the library's scaled division
  auto inverse = [](double x, double y) {
    const double s = 1.0 / (x * x + y * y);
    return cplx{x * s, -y * s};
  };
  // psi_k - i half (h_k psi_k + off (psi_{k-1} + psi_{k+1}))
  auto rhs = [&](std::size_t k, cplx neighbours) {
    const cplx hpsi = (d[k] + field * z[k]) * psi[k] + h0_off_ * neighbours;
    return cplx{psi[k].real() + half * hpsi.imag(), psi[k].imag() - half * hpsi.real()};
  };

  {
    const cplx inv = inverse(1.0, half * (d[0] + field * z[0]));
    cp[0] = cplx{0.0, hb} * inv;
    rp[0] = rhs(0, n > 1 ? psi[1] : cplx{}) * inv;
  }
  for (std::size_t k = 1; k < n; ++k) {
    const cplx next = k + 1 < n ? psi[k + 1] : cplx{};
    // a_k - b c'_{k-1} with b = i hb
    const cplx bc{-hb * cp[k - 1].imag(), hb * cp[k - 1].real()};
    const cplx inv = inverse(1.0 - bc.real(), half * (d[k] + field * z[k]) - bc.imag());
    cp[k] = cplx{0.0, hb} * inv;
    const cplx br{-hb * rp[k - 1].imag(), hb * rp[k - 1].real()};
    rp[k] = (rhs(k, psi[k - 1] + next) - br) * inv;
  }
  psi[n - 1] = rp[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    psi[k] = rp[k] - cp[k] * psi[k + 1];
  }
}

Absorber::Absorber(const Grid& grid, double width) : mask_(grid.n_points, 1.0) {
  if (!(width > 0.0)) throw ConfigError("absorber: width must be positive");
  if (width > 0.25 * grid.box_length()) {
    throw ConfigError("absorber: width exceeds a quarter of the box");
  }
  const double z_lo = grid.z_min;
  const double z_hi = grid.z_max();
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    const double z = grid.z(k);
    const double depth = std::min(z - z_lo, z_hi - z);
    if (depth < width) {
      const double x = 1.0 - depth / width;  // 0 at the inner edge, 1 at the wall
      mask_[k] = std::pow(std::cos(0.5 * std::numbers::pi * x), 0.125);
    }
  }
}

void Absorber::apply(std::span<cplx> psi) const {
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] *= mask_[k];
}

Wavefunction propagate(const Wavefunction& psi0, const Potential& pot,
                       const PropagationPlan& plan, const SampleObserver& observer) {
  require_same_grid(psi0.grid(), pot.grid(), "propagate");
  plan.validate();
  const double norm0 = psi0.norm_squared();
  if (std::abs(norm0 - 1.0) > kInitialNormTolerance) {
    throw ConfigError("propagate: initial state is not normalized (norm^2 = " +
                      std::to_string(norm0) + ")");
  }

  std::optional<Absorber> absorber;
  if (plan.absorber_enabled) absorber.emplace(pot.grid(), plan.absorber_width);

  CrankNicolson cn(pot);
  Wavefunction psi = psi0;
  const std::size_t n_steps = plan.steps();
  const auto stride = static_cast<std::size_t>(plan.sample_stride);

  auto check = [&](std::size_t k) {
    const double n2 = psi.norm_squared();
    if (!std::isfinite(n2)) {
      throw StabilityError("propagate: non-finite wavefunction at t = " +
                           std::to_string(plan.time_at_step(k)));
    }
    if (!absorber && std::abs(n2 - norm0) > kNormDriftLimit) {
      throw StabilityError("propagate: norm drift " + std::to_string(n2 - norm0) +
                           " at t = " + std::to_string(plan.time_at_step(k)));
    }
  };

  if (observer) observer(plan.time_at_step(0), psi);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double t_mid = plan.t_start + (static_cast<double>(k) + 0.5) * plan.dt;
    cn.step(psi.amplitudes(), plan.dt, total_field(plan.fields, t_mid));
    if (absorber) absorber->apply(psi.amplitudes());
    const std::size_t done = k + 1;
    if (done % stride == 0 || done == n_steps) {
      check(done);
      if (observer) observer(plan.time_at_step(done), psi);
    }
  }
  return psi;
}

Trajectory propagate(const Wavefunction& psi0, const Potential& pot,
                     const PropagationPlan& plan) {
  Trajectory traj;
  propagate(psi0, pot, plan, [&](double t, const Wavefunction& psi) {
    traj.times.push_back(t);
    traj.states.push_back(psi);
  });
  return traj;
}

ProjectedRun propagate_projected(const Wavefunction& psi0, const Potential& pot,
                                 const PropagationPlan& plan, const BoundBasis& basis) {
  ProjectedRun run;
  const std::size_t expected = plan.sample_steps().size();
  run.times.reserve(expected);
  run.overlaps.reserve(expected);
  run.norms.reserve(expected);
  propagate(psi0, pot, plan, [&](double t, const Wavefunction& psi) {
    run.times.push_back(t);
    run.overlaps.push_back(basis.project(psi));
    run.norms.push_back(psi.norm_squared());
  });
  return run;
}

ProjectedRun project_trajectory(const Trajectory& trajectory, const BoundBasis& basis) {
  ProjectedRun run;
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    run.times.push_back(trajectory.times[i]);
    run.overlaps.push_back(basis.project(trajectory.states[i]));
    run.norms.push_back(trajectory.states[i].norm_squared());
  }
  return run;
}

double ionization_probability(const Eigen::VectorXcd& overlaps) {
  return std::clamp(1.0 - overlaps.squaredNorm(), 0.0, 1.0);
}

double ionization_probability(const Wavefunction& psi, const BoundBasis& basis) {
  return ionization_probability(basis.project(psi));
}

Wavefunction apply_absorber(const Wavefunction& psi, const PropagationPlan& plan) {
  if (!plan.absorber_enabled) throw ConfigError("apply_absorber: absorber is disabled");
  Absorber absorber(psi.grid(), plan.absorber_width);
  Wavefunction out = psi;
  absorber.apply(out.amplitudes());
  return out;
}

}  // namespace attodress
