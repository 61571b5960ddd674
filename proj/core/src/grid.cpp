#include "attodress/grid.hpp"

#include <cmath>
#include <string>

#include "attodress/errors.hpp"

namespace attodress {

std::vector<double> Grid::coordinates() const {
  std::vector<double> zs(n_points);
  for (std::size_t k = 0; k < n_points; ++k) zs[k] = z(k);
  return zs;
}

Grid build_grid(double dz, double box_length) {
  if (!(dz > 0.0) || !std::isfinite(dz)) {
    throw ConfigError("grid: dz must be positive, got " + std::to_string(dz));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ConfigError("grid: box length must be positive, got " +
                      std::to_string(box_length));
  }
  const double ratio = box_length / dz;
  const double count = std::round(ratio);
  if (std::abs(ratio - count) > 1e-9 || count < 1.0) {
    throw ConfigError("grid: box length " + std::to_string(box_length) +
                      " is not an integer multiple of dz " +
                      std::to_string(dz));
  }
  Grid g;
  g.dz = dz;
  g.n_points = static_cast<std::size_t>(count);
  g.z_min = -0.5 * static_cast<double>(g.n_points - 1) * dz;
  return g;
}

Potential::Potential(Grid grid, double soft_core_a)
    : grid_(grid), a_(soft_core_a), values_(grid.n_points) {
  if (!(soft_core_a > 0.0)) {
    throw ConfigError("potential: soft-core parameter must be positive");
  }
  const double a2 = soft_core_a * soft_core_a;
  for (std::size_t k = 0; k < grid_.n_points; ++k) {
    const double z = grid_.z(k);
    values_[k] = -1.0 / std::sqrt(z * z + a2);
  }
}

Potential soft_core_potential(const Grid& grid, double a) {
  return Potential(grid, a);
}

Wavefunction::Wavefunction(Grid grid)
    : grid_(grid), amplitudes_(grid.n_points, cplx{0.0, 0.0}) {}

Wavefunction::Wavefunction(Grid grid, std::vector<cplx> amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != grid_.n_points) {
    throw ConfigError("wavefunction: amplitude count does not match grid");
  }
}

Wavefunction Wavefunction::from_real(Grid grid, std::span<const double> values) {
  std::vector<cplx> amps(values.begin(), values.end());
  return Wavefunction(grid, std::move(amps));
}

double Wavefunction::norm_squared() const {
  double s = 0.0;
  for (const cplx& c : amplitudes_) s += std::norm(c);
  return s * grid_.dz;
}

void Wavefunction::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw StabilityError("wavefunction: cannot normalize zero state");
  *this *= cplx{1.0 / std::sqrt(n2), 0.0};
}

Wavefunction& Wavefunction::operator+=(const Wavefunction& other) {
  require_same_grid(grid_, other.grid_, "wavefunction +=");
  for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
    amplitudes_[k] += other.amplitudes_[k];
  }
  return *this;
}

Wavefunction& Wavefunction::operator*=(cplx factor) {
  for (cplx& c : amplitudes_) c *= factor;
  return *this;
}

Wavefunction operator+(Wavefunction a, const Wavefunction& b) {
  a += b;
  return a;
}

Wavefunction operator*(cplx factor, Wavefunction psi) {
  psi *= factor;
  return psi;
}

TridiagonalH0 h0_tridiagonal(const Potential& pot) {
  const Grid& g = pot.grid();
  const double kinetic = 1.0 / (g.dz * g.dz);
  TridiagonalH0 h;
  h.diagonal.resize(g.n_points);
  for (std::size_t k = 0; k < g.n_points; ++k) h.diagonal[k] = kinetic + pot[k];
  h.off_diagonal = -0.5 * kinetic;
  return h;
}

Wavefunction apply_h0(const Potential& pot, const Wavefunction& psi) {
  require_same_grid(pot.grid(), psi.grid(), "apply_h0");
  const Grid& g = pot.grid();
  const std::size_t n = g.n_points;
  const double kinetic = 1.0 / (g.dz * g.dz);
  const double off = -0.5 * kinetic;
  Wavefunction out(g);
  for (std::size_t k = 0; k < n; ++k) {
    cplx v = (kinetic + pot[k]) * psi[k];
    if (k > 0) v += off * psi[k - 1];
    if (k + 1 < n) v += off * psi[k + 1];
    out[k] = v;
  }
  return out;
}

cplx inner_product(const Wavefunction& a, const Wavefunction& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s * a.grid().dz;
}

cplx dipole_expectation(const Wavefunction& a, const Wavefunction& b) {
  require_same_grid(a.grid(), b.grid(), "dipole_expectation");
  const Grid& g = a.grid();
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * g.z(k) * b[k];
  return s * g.dz;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    throw ConfigError(std::string(where) + ": grid mismatch");
  }
}

}  // namespace attodress
