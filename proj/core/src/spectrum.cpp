#include "attodress/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "attodress/errors.hpp"

namespace attodress {

namespace {

void fix_sign(std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  // Far tails sit at roundoff level with arbitrary sign.
  const double threshold = 1e-6 * m;
  for (double x : v) {
    if (std::abs(x) > threshold) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace

SymmetricTridiagonal as_symmetric_tridiagonal(const TridiagonalH0& h) {
  SymmetricTridiagonal t;
  t.diagonal = h.diagonal;
  t.off_diagonal.assign(h.diagonal.empty() ? 0 : h.diagonal.size() - 1, h.off_diagonal);
  return t;
}

BoundBasis::BoundBasis(Grid grid, std::vector<double> energies,
                       std::vector<std::vector<double>> states)
    : grid_(grid), energies_(std::move(energies)), states_(std::move(states)) {
  if (energies_.size() != states_.size()) {
    throw ConfigError("bound basis: energy/state count mismatch");
  }
  const int n = size();
  const auto zs = grid_.coordinates();
  dipole_.resize(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = m; k < n; ++k) {
      double s = 0.0;
      const auto& a = states_[m];
      const auto& b = states_[k];
      for (std::size_t j = 0; j < zs.size(); ++j) s += a[j] * zs[j] * b[j];
      dipole_(m, k) = dipole_(k, m) = s * grid_.dz;
    }
  }
}

Wavefunction BoundBasis::state(int n) const {
  return Wavefunction::from_real(grid_, states_.at(n));
}

Eigen::VectorXcd BoundBasis::project(const Wavefunction& psi) const {
  require_same_grid(grid_, psi.grid(), "BoundBasis::project");
  const int n = size();
  Eigen::VectorXcd out(n);
  const auto amps = psi.amplitudes();
  for (int m = 0; m < n; ++m) {
    const auto& v = states_[m];
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < amps.size(); ++k) {
      re += v[k] * amps[k].real();
      im += v[k] * amps[k].imag();
    }
    out(m) = cplx{re, im} * grid_.dz;
  }
  return out;
}

Wavefunction BoundBasis::compose(const Eigen::VectorXcd& coefficients) const {
  Wavefunction psi(grid_);
  for (int m = 0; m < size() && m < coefficients.size(); ++m) {
    const auto& v = states_[m];
    const cplx c = coefficients(m);
    for (std::size_t k = 0; k < v.size(); ++k) psi[k] += c * v[k];
  }
  return psi;
}

BoundBasis bound_states(const Potential& pot, int n_states) {
  if (n_states < 1) throw ConfigError("bound_states: n_states must be >= 1");
  const SymmetricTridiagonal t = as_symmetric_tridiagonal(h0_tridiagonal(pot));
  const std::size_t negative = sturm_count(t, 0.0);
  if (negative < static_cast<std::size_t>(n_states)) {
    throw SpectrumError("bound_states: only " + std::to_string(negative) +
                        " negative eigenvalues, " + std::to_string(n_states) +
                        " requested");
  }

  const double norm = 1.0 / std::sqrt(pot.grid().dz);
  std::vector<double> energies;
  std::vector<std::vector<double>> unit_vectors;
  for (int k = 0; k < n_states; ++k) {
    const double lambda = bisect_eigenvalue(t, static_cast<std::size_t>(k));
    auto v = inverse_iteration(t, lambda, unit_vectors,
                               kInverseIterationSeed + static_cast<std::uint64_t>(k));
    fix_sign(v);
    energies.push_back(lambda);
    unit_vectors.push_back(std::move(v));
  }
  for (auto& v : unit_vectors) {
    for (double& x : v) x *= norm;
  }
  return BoundBasis(pot.grid(), std::move(energies), std::move(unit_vectors));
}

Eigen::MatrixXd dipole_matrix(const BoundBasis& basis) {
  const int n = basis.size();
  std::vector<Wavefunction> states;
  states.reserve(n);
  for (int m = 0; m < n; ++m) states.push_back(basis.state(m));
  Eigen::MatrixXd z(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) z(m, k) = dipole_expectation(states[m], states[k]).real();
  }
  return z;
}

}  // namespace attodress
