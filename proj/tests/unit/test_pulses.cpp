#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

using namespace attodress;

TEST(Pulse, PeakFieldAndVectorPotential) {
  const Pulse p(0.02, 0.06, 126.78);
  EXPECT_NEAR(p.a_max(), 0.02 / 0.06, 1e-15);
  EXPECT_NEAR(p.electric_field(0.0), 0.02, 1e-15);
  EXPECT_NEAR(p.vector_potential(0.0), 0.0, 1e-15);
}

TEST(Pulse, FieldIsMinusDerivativeOfVectorPotential) {
  const Pulse p(0.03, 0.06, 126.78, 12.5);
  const double h = 1e-4;
  for (double t = -180.0; t <= 200.0; t += 7.3) {
    if (!p.support().contains(t)) continue;
    const double fd = -(p.vector_potential(t + h) - p.vector_potential(t - h)) / (2 * h);
    EXPECT_NEAR(p.electric_field(t), fd, 1e-9) << "t = " << t;
  }
}

TEST(Pulse, VanishesOutsideSupport) {
  const Pulse p(1e-3, 1.34, 10.84, 40.0);
  const Support s = p.support();
  EXPECT_NEAR(s.begin, 40.0 - std::numbers::pi * 10.84 / 2, 1e-12);
  EXPECT_NEAR(s.end, 40.0 + std::numbers::pi * 10.84 / 2, 1e-12);
  EXPECT_EQ(p.electric_field(s.end + 1e-3), 0.0);
  EXPECT_EQ(p.electric_field(s.begin - 5.0), 0.0);
  EXPECT_EQ(p.vector_potential(s.begin - 5.0), 0.0);
  EXPECT_NEAR(p.electric_field(s.end - 1e-9), 0.0, 1e-12);
}

TEST(Pulse, ZeroFieldArea) {
  const Pulse p(0.02, 0.06, 126.78);
  const Support s = p.support();
  const int n = 200000;
  const double h = s.duration() / n;
  double area = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    area += w * p.electric_field(s.begin + k * h) * h;
  }
  EXPECT_NEAR(area, 0.0, 1e-10);
}

TEST(Pulse, FwhmConversion) {
  EXPECT_NEAR(fwhm_to_envelope_T(144.9), 126.78, 0.1);
  EXPECT_NEAR(fwhm_to_envelope_T(12.39), 10.84, 0.01);
  EXPECT_NEAR(fwhm_to_envelope_T(2 * 33.0), 2 * fwhm_to_envelope_T(33.0), 1e-12);
  EXPECT_NEAR(envelope_T_to_fwhm(fwhm_to_envelope_T(77.0)), 77.0, 1e-12);
}

TEST(Pulse, IntensityFwhmOfEnvelope) {
  // cos^4(s/T) falls to 1/2 at s = T arccos(2^-1/4)
  const double T = 126.78;
  const double half = 0.5 * envelope_T_to_fwhm(T);
  EXPECT_NEAR(std::pow(std::cos(half / T), 4), 0.5, 1e-12);
}

TEST(Pulse, InvalidParametersThrow) {
  EXPECT_THROW(Pulse(0.02, 0.0, 100.0), ConfigError);
  EXPECT_THROW(Pulse(0.02, 0.06, -1.0), ConfigError);
  EXPECT_THROW(Pulse(NAN, 0.06, 1.0), ConfigError);
}

TEST(Pulse, TotalFieldAddsAndUnionCovers) {
  const std::vector<Pulse> ps = {Pulse(0.02, 0.06, 126.78), Pulse(1e-3, 1.34, 10.84, 30.0)};
  EXPECT_DOUBLE_EQ(total_field(ps, 29.0), ps[0].electric_field(29.0) + ps[1].electric_field(29.0));
  const Support u = union_support(ps);
  EXPECT_DOUBLE_EQ(u.begin, ps[0].support().begin);
  EXPECT_DOUBLE_EQ(u.end, ps[0].support().end);
}

TEST(Pulse, ZeroAmplitudeIsSilent) {
  const Pulse p(0.0, 0.06, 126.78);
  EXPECT_EQ(p.electric_field(3.0), 0.0);
  EXPECT_EQ(p.with_e_max(0.01).e_max(), 0.01);
  EXPECT_EQ(p.centered_at(5.0).t_center(), 5.0);
}
