#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace attodress {

using cplx = std::complex<double>;

// Uniform mesh z_k = z_min + k*dz, k = 0..n_points-1, symmetric about z = 0.
// For even n_points no node sits at the origin: the two central nodes are
// at -dz/2 and +dz/2.
struct Grid {
  double dz = 0.0;
  std::size_t n_points = 0;
  double z_min = 0.0;

  double z(std::size_t k) const { return z_min + static_cast<double>(k) * dz; }
  double z_max() const { return z(n_points - 1); }
  double box_length() const { return static_cast<double>(n_points) * dz; }
  std::vector<double> coordinates() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

// Throws ConfigError if dz <= 0 or box_length/dz is not an integer to 1e-9.
Grid build_grid(double dz, double box_length);

// Soft-core Coulomb potential V(z) = -1/sqrt(z^2 + a^2) sampled on a grid.
class Potential {
 public:
  Potential(Grid grid, double soft_core_a);

  const Grid& grid() const { return grid_; }
  double soft_core_a() const { return a_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

 private:
  Grid grid_;
  double a_;
  std::vector<double> values_;
};

Potential soft_core_potential(const Grid& grid, double a);

class Wavefunction {
 public:
  explicit Wavefunction(Grid grid);
  Wavefunction(Grid grid, std::vector<cplx> amplitudes);

  // Real vector (e.g. an eigenvector) lifted to complex amplitudes.
  static Wavefunction from_real(Grid grid, std::span<const double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  std::span<cplx> amplitudes() { return amplitudes_; }
  cplx& operator[](std::size_t k) { return amplitudes_[k]; }
  const cplx& operator[](std::size_t k) const { return amplitudes_[k]; }

  // sum |psi_k|^2 dz
  double norm_squared() const;
  void normalize();

  Wavefunction& operator+=(const Wavefunction& other);
  Wavefunction& operator*=(cplx factor);

 private:
  Grid grid_;
  std::vector<cplx> amplitudes_;
};

Wavefunction operator+(Wavefunction a, const Wavefunction& b);
Wavefunction operator*(cplx factor, Wavefunction psi);

// Field-free Hamiltonian H0 = -1/2 d^2/dz^2 + V as a real symmetric
// tridiagonal matrix (3-point stencil, Dirichlet walls).
struct TridiagonalH0 {
  std::vector<double> diagonal;
  double off_diagonal = 0.0;
};

TridiagonalH0 h0_tridiagonal(const Potential& pot);

// (-1/2 d^2/dz^2 + V) psi, psi taken as zero outside the box.
Wavefunction apply_h0(const Potential& pot, const Wavefunction& psi);

// sum conj(a_k) b_k dz
cplx inner_product(const Wavefunction& a, const Wavefunction& b);

// sum conj(a_k) z_k b_k dz
cplx dipole_expectation(const Wavefunction& a, const Wavefunction& b);

// Throws ConfigError when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace attodress
