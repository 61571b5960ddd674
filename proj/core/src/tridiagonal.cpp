#include "attodress/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "attodress/errors.hpp"

namespace attodress {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gaussian elimination with partial pivoting on a tridiagonal matrix,
// same layout as LAPACK's gttrf: the U factor gains a second superdiagonal.
class PivotedTridiagonalLU {
 public:
  PivotedTridiagonalLU(const SymmetricTridiagonal& t, double shift)
      : n_(t.size()),
        dl_(t.off_diagonal),
        d_(t.diagonal),
        du_(t.off_diagonal),
        du2_(n_ > 2 ? n_ - 2 : 0, 0.0),
        swapped_(n_ > 1 ? n_ - 1 : 0, false) {
    double scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      d_[i] -= shift;
      scale = std::max(scale, std::abs(d_[i]));
    }
    for (double e : t.off_diagonal) scale = std::max(scale, std::abs(e));
    const double tiny = kEps * std::max(scale, 1.0);

    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n_) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    if (n_ > 0 && d_[n_ - 1] == 0.0) d_[n_ - 1] = tiny;
  }

  void solve_in_place(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    if (n_ == 0) return;
    b[n_ - 1] /= d_[n_ - 1];
    if (n_ < 2) return;
    b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
    for (std::size_t i = n_ - 2; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::size_t n_;
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void scale_to_unit(std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) throw StabilityError("inverse iteration: iterate collapsed to zero");
  for (double& v : x) v /= m;
  const double n = std::sqrt(dot(x, x));
  for (double& v : x) v /= n;
}

}  // namespace

std::vector<double> SymmetricTridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diagonal[i] * x[i];
    if (i > 0) v += off_diagonal[i - 1] * x[i - 1];
    if (i + 1 < n) v += off_diagonal[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
  const std::size_t n = t.size();
  if (n == 0) return 0;
  double emax = 0.0;
  for (double e : t.off_diagonal) emax = std::max(emax, std::abs(e));
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax * emax);

  std::size_t count = 0;
  double q = t.diagonal[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = t.off_diagonal[i - 1];
    q = t.diagonal[i] - x - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < n) r += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - r);
    hi = std::max(hi, t.diagonal[i] + r);
  }
  return {lo, hi};
}

double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t k) {
  if (k >= t.size()) throw SpectrumError("bisection: eigenvalue index out of range");
  auto [lo, hi] = gershgorin_bounds(t);
  const double width = std::max(std::abs(lo), std::abs(hi));
  lo -= 2.0 * kEps * width + std::numeric_limits<double>::min();
  hi += 2.0 * kEps * width + std::numeric_limits<double>::min();

  // Invariant: count(lo) <= k < count(hi).
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(const SymmetricTridiagonal& t,
                                      double eigenvalue,
                                      std::span<const std::vector<double>> previous,
                                      std::uint64_t seed,
                                      int sweeps) {
  const std::size_t n = t.size();
  PivotedTridiagonalLU lu(t, eigenvalue);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = uniform(rng);

  auto orthogonalize = [&](std::vector<double>& v) {
    for (const auto& p : previous) {
      const double c = dot(p, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * p[i];
    }
  };

  orthogonalize(x);
  scale_to_unit(x);
  for (int s = 0; s < sweeps; ++s) {
    lu.solve_in_place(x);
    orthogonalize(x);
    scale_to_unit(x);
  }
  return x;
}

}  // namespace attodress
