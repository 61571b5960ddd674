#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace attodress {

// Real symmetric tridiagonal matrix: diagonal d (n) and off-diagonal e (n-1).
struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const { return diagonal.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
};

// Number of eigenvalues strictly below x (Sturm sequence sign count).
std::size_t sturm_count(const SymmetricTridiagonal& t, double x);

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t);

// k-th smallest eigenvalue (k = 0 is the lowest), bisection to machine
// precision.
double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t k);

// Eigenvector for a converged eigenvalue by inverse iteration with a
// partially pivoted tridiagonal LU. The iterate is kept orthogonal to every
// vector in `previous`. Returns a unit vector in the Euclidean norm; the sign
// is left as produced.
std::vector<double> inverse_iteration(const SymmetricTridiagonal& t,
                                      double eigenvalue,
                                      std::span<const std::vector<double>> previous,
                                      std::uint64_t seed,
                                      int sweeps = 4);

}  // namespace attodress
