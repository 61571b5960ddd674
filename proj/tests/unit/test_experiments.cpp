#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace attodress;
using attodress::fixtures::small_system;

namespace {

ScanConfig short_scan(double e_max) {
  ScanConfig sc;
  sc.laser = Pulse(e_max, 0.06, 40.0);
  sc.taus = {-20.0, 0.0, 20.0};
  return sc;
}

}  // namespace

TEST(Scan, WindowCoversLaserAndProbes) {
  ScanConfig sc = short_scan(0.02);
  sc.taus = {-100.0, 100.0};
  const auto [t0, t1] = scan_window(sc);
  EXPECT_LE(t0, -100.0 - sc.probe.support().duration() / 2 - 1.0 + 1e-12);
  EXPECT_GE(t1, 100.0 + sc.probe.support().duration() / 2 + 1.0 - 1e-12);
}

TEST(Scan, LaserOffRatiosAreOne) {
  const ScanResult r = run_scan(small_system(), short_scan(0.0));
  ASSERT_EQ(r.points.size(), 3u);
  EXPECT_GT(r.p_nolaser, 0.0);
  for (const ScanPoint& pt : r.points) {
    ASSERT_TRUE(pt.ratio_tdse);
    EXPECT_NEAR(*pt.ratio_tdse, 1.0, 1e-6);
    for (Family f : kAllFamilies) {
      ASSERT_TRUE(pt.ratio_model.at(f)) << family_tag(f);
      EXPECT_NEAR(*pt.ratio_model.at(f), 1.0, 0.02) << family_tag(f);
    }
    EXPECT_TRUE(pt.flags.empty());
  }
}

TEST(Scan, DepletionIsRecordedNotFatal) {
  ScanConfig sc = short_scan(0.02);
  sc.amp_floor = 2.0;
  sc.tdse_reference = false;
  sc.families = {Family::unperturbed, Family::projected};
  const ScanResult r = run_scan(small_system(), sc);
  for (const ScanPoint& pt : r.points) {
    EXPECT_FALSE(pt.ratio_model.at(Family::projected));
    EXPECT_FALSE(pt.ratio_tdse);
    EXPECT_NE(pt.flags.find("depleted_p"), std::string::npos);
  }
  EXPECT_FALSE(r.mean_abs_error(Family::projected));
}

TEST(Scan, TableSchema) {
  ScanConfig sc = short_scan(0.02);
  sc.taus = {0.0};
  sc.tdse_reference = false;
  const Table t = scan_table(run_scan(small_system(), sc));
  const std::vector<std::string> header = {"tau_au",  "tau_fs",  "ratio_u",    "ratio_a",
                                           "ratio_d", "ratio_p", "ratio_tdse", "flags"};
  EXPECT_EQ(t.header, header);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][6], "");
}

TEST(Scan, ParallelMatchesSerial) {
  ScanConfig sc = short_scan(0.02);
  sc.tdse_reference = false;
  sc.families = {Family::adiabatic, Family::dynamic};
  const ScanResult a = run_scan(small_system(), sc);
  sc.workers = 3;
  const ScanResult b = run_scan(small_system(), sc);
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    for (Family f : sc.families) {
      EXPECT_EQ(*a.points[k].p_model.at(f), *b.points[k].p_model.at(f));
    }
  }
}

TEST(Dressing, FamiliesShareSampling) {
  DressingOptions opts;
  const Pulse las(0.02, 0.06, 40.0);
  const LaserDressing d = dress(small_system(), las, -65.0, 65.0, opts);
  ASSERT_EQ(d.runs.size(), 2u);
  for (Family f : kAllFamilies) {
    const DressedTrajectory& fam = d.family(f);
    EXPECT_EQ(fam.times, d.runs[0].times);
    EXPECT_TRUE(fam.has_amplitudes());
    EXPECT_LT(orthonormality_error(fam), 1e-10);
  }
  const Figure1Data f1 = figure1_data(d);
  EXPECT_EQ(f1.times.size(), d.runs[0].times.size());
  EXPECT_EQ(f1.pop1_tdse.back(), std::norm(d.runs[1].overlaps.back()(1)));
}
