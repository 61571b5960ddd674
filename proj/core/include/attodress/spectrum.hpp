#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "attodress/grid.hpp"
#include "attodress/tridiagonal.hpp"

namespace attodress {

inline constexpr std::uint64_t kInverseIterationSeed = 0x5EED;

// The lowest field-free bound eigenpairs of the discrete H0 and their
// dipole matrix. Eigenvectors are real, normalized with the dz weight, and
// sign-fixed so that the first significant component (scanning from z_min)
// is positive.
class BoundBasis {
 public:
  BoundBasis(Grid grid, std::vector<double> energies,
             std::vector<std::vector<double>> states);

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(energies_.size()); }
  const std::vector<double>& energies() const { return energies_; }
  double energy(int n) const { return energies_.at(n); }
  const std::vector<double>& state_values(int n) const { return states_.at(n); }
  Wavefunction state(int n) const;

  // Z0_mn = <m|z|n>.
  const Eigen::MatrixXd& dipole() const { return dipole_; }

  // Vector of <m|psi> for all basis states m.
  Eigen::VectorXcd project(const Wavefunction& psi) const;

  // sum_m c_m |m>
  Wavefunction compose(const Eigen::VectorXcd& coefficients) const;

 private:
  Grid grid_;
  std::vector<double> energies_;
  std::vector<std::vector<double>> states_;
  Eigen::MatrixXd dipole_;
};

// Sturm-bisection eigenvalues plus inverse-iteration eigenvectors of the
// tridiagonal H0. Throws SpectrumError if fewer than n_states eigenvalues
// are negative.
BoundBasis bound_states(const Potential& pot, int n_states);

// Z0 built from dipole_expectation on the stored eigenvectors.
Eigen::MatrixXd dipole_matrix(const BoundBasis& basis);

SymmetricTridiagonal as_symmetric_tridiagonal(const TridiagonalH0& h);

}  // namespace attodress
