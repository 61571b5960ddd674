#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "fixtures.hpp"

using namespace attodress;

namespace {

Eigen::MatrixXd dense_h0(const Potential& v) {
  const TridiagonalH0 h = h0_tridiagonal(v);
  const auto n = static_cast<Eigen::Index>(h.diagonal.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m(k, k) = h.diagonal[static_cast<std::size_t>(k)];
    if (k + 1 < n) m(k, k + 1) = m(k + 1, k) = h.off_diagonal;
  }
  return m;
}

}  // namespace

TEST(Tridiagonal, SturmCountOnKnownMatrix) {
  // tridiag(-1, 2, -1), eigenvalues 2 - 2 cos(k pi / (n + 1))
  SymmetricTridiagonal t{std::vector<double>(6, 2.0), std::vector<double>(5, -1.0)};
  for (std::size_t k = 0; k < 6; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(static_cast<double>(k + 1) * M_PI / 7.0);
    EXPECT_NEAR(bisect_eigenvalue(t, k), exact, 1e-13);
    EXPECT_EQ(sturm_count(t, exact + 1e-9), k + 1);
  }
  const auto [lo, hi] = gershgorin_bounds(t);
  EXPECT_LE(lo, 0.0);
  EXPECT_GE(hi, 4.0);
}

TEST(Tridiagonal, InverseIterationResidual) {
  SymmetricTridiagonal t{{1.0, 3.0, -2.0, 0.5, 4.0}, {0.7, -0.2, 1.1, 0.4}};
  std::vector<std::vector<double>> prev;
  for (std::size_t k = 0; k < 5; ++k) {
    const double lam = bisect_eigenvalue(t, k);
    auto v = inverse_iteration(t, lam, prev, 0x5EED + k);
    const auto tv = t.multiply(v);
    double res = 0.0;
    for (std::size_t i = 0; i < 5; ++i) res = std::max(res, std::abs(tv[i] - lam * v[i]));
    EXPECT_LT(res, 1e-12);
    for (const auto& p : prev) {
      double dot = 0.0;
      for (std::size_t i = 0; i < 5; ++i) dot += p[i] * v[i];
      EXPECT_NEAR(dot, 0.0, 1e-12);
    }
    prev.push_back(std::move(v));
  }
}

TEST(Spectrum, MatchesDenseEigensolver) {
  const Grid g = build_grid(0.1, 102.4);
  const Potential v(g, 0.3);
  const BoundBasis basis = bound_states(v, 5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_h0(v));
  for (int n = 0; n < 5; ++n) {
    EXPECT_NEAR(basis.energy(n), es.eigenvalues()(n), 1e-10);
    Eigen::VectorXd dense = es.eigenvectors().col(n) / std::sqrt(g.dz);
    Eigen::VectorXd ours = Eigen::Map<const Eigen::VectorXd>(basis.state_values(n).data(),
                                                             static_cast<Eigen::Index>(g.n_points));
    const double overlap = std::abs(dense.dot(ours)) * g.dz;
    EXPECT_NEAR(overlap, 1.0, 1e-9);
  }
}

TEST(Spectrum, OrthonormalAndSignFixed) {
  const BoundBasis& basis = fixtures::small_system().basis;
  for (int m = 0; m < basis.size(); ++m) {
    const auto& sm = basis.state_values(m);
    double peak = 0.0;
    for (double x : sm) peak = std::max(peak, std::abs(x));
    for (double x : sm) {
      if (std::abs(x) > 1e-6 * peak) {
        EXPECT_GT(x, 0.0) << "state " << m;
        break;
      }
    }
    for (int n = 0; n < basis.size(); ++n) {
      const double ip = inner_product(basis.state(m), basis.state(n)).real();
      EXPECT_NEAR(ip, m == n ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Spectrum, DipoleParitySelection) {
  const Eigen::MatrixXd& z = fixtures::small_system().basis.dipole();
  for (int m = 0; m < 5; ++m) {
    for (int n = 0; n < 5; ++n) {
      if ((m + n) % 2 == 0) EXPECT_NEAR(z(m, n), 0.0, 1e-10);
      EXPECT_NEAR(z(m, n), z(n, m), 1e-13);
    }
  }
  EXPECT_GT(std::abs(z(1, 0)), 0.4);
}

TEST(Spectrum, ProjectComposeRoundTrip) {
  const BoundBasis& basis = fixtures::small_system().basis;
  Eigen::VectorXcd c(5);
  c << cplx{0.3, 0.1}, cplx{-0.2, 0.5}, 0.1, cplx{0.0, -0.4}, 0.05;
  const Eigen::VectorXcd back = basis.project(basis.compose(c));
  EXPECT_LT((back - c).norm(), 1e-12);
}

TEST(Spectrum, TooManyStatesThrows) {
  const Grid g = build_grid(0.1, 20.0);
  EXPECT_THROW(bound_states(Potential(g, 0.3), 40), SpectrumError);
}
