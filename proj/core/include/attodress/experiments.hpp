#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attodress/config.hpp"
#include "attodress/dressed.hpp"
#include "attodress/grid.hpp"
#include "attodress/probe_model.hpp"
#include "attodress/propagator.hpp"
#include "attodress/report.hpp"
#include "attodress/spectrum.hpp"

namespace attodress {

// Grid, potential and field-free bound basis shared by every run.
struct System {
  Potential potential;
  BoundBasis basis;

  static System from_config(const Config& config);
  const Grid& grid() const { return potential.grid(); }
};

struct DressingOptions {
  double dt = 0.02;
  int sample_stride = 5;
  int n_runs = 2;  // laser-only runs from |0>..|n_runs-1>
  std::vector<Family> families = {std::begin(kAllFamilies), std::end(kAllFamilies)};
  int workers = 1;
  bool absorber_enabled = false;
  double absorber_width = 50.0;
};

// Laser-only dressing over a fixed window: the full runs and the requested
// families with their amplitudes attached. Shared read-only across delays.
struct LaserDressing {
  Pulse laser;
  PropagationPlan plan;
  std::vector<ProjectedRun> runs;
  std::map<Family, DressedTrajectory> families;

  const DressedTrajectory& family(Family f) const;
};

LaserDressing dress(const System& system, const Pulse& laser, double t_start, double t_end_min,
                    const DressingOptions& options);

struct ScanConfig {
  int initial = 1;
  int final = 0;
  std::vector<double> taus;
  Pulse laser{0.02, 0.06, 126.78, 0.0};
  Pulse probe{1e-3, 1.34, 10.84, 0.0};  // center is replaced by each tau
  std::vector<Family> families = {std::begin(kAllFamilies), std::end(kAllFamilies)};
  bool tdse_reference = true;
  int workers = 1;
  double dt = 0.02;
  int sample_stride = 5;
  double amp_floor = kDefaultAmplitudeFloor;
  bool absorber_enabled = false;
  double absorber_width = 50.0;

  static ScanConfig from_config(const Config& config, int initial, int final);
};

struct ScanPoint {
  double tau = 0.0;
  std::map<Family, std::optional<double>> p_model;
  std::map<Family, std::optional<double>> ratio_model;
  std::optional<double> p_tdse;
  std::optional<double> ratio_tdse;
  std::string flags;
};

struct ScanResult {
  int initial = 0;
  int final = 0;
  double t_final = 0.0;
  double p_nolaser = 0.0;
  std::vector<Family> families;
  std::vector<ScanPoint> points;

  // mean over tau of |ratio_model - ratio_tdse|, skipping absent values
  std::optional<double> mean_abs_error(Family f) const;
};

// Model probabilities for every delay and family, the two-pulse TDSE
// reference (optional) and the probe-only TDSE normalizer. Model failures
// from depletion are recorded per point and the scan continues.
ScanResult run_scan(const System& system, const ScanConfig& config);
// Same, reusing an existing laser-only dressing that covers every delay.
ScanResult run_scan(const System& system, const ScanConfig& config, const LaserDressing& dressing);

// Window covering the laser and every probe position, padded by 1 a.u.
std::pair<double, double> scan_window(const ScanConfig& config);

Table scan_table(const ScanResult& result);

struct Figure1Data {
  std::vector<double> times;
  std::vector<double> abs_field;
  std::map<Family, std::vector<double>> a1_abs2;
  std::vector<double> pop1_tdse;
};

Figure1Data figure1_data(const System& system, const Config& config);
Figure1Data figure1_data(const LaserDressing& dressing);

struct Figure4Data {
  std::vector<double> e_values;
  std::vector<double> times;
  std::vector<std::vector<double>> z10_abs2;  // one series per e_value
  std::vector<double> abs_field;              // for the strongest field
  double laser_end = 0.0;
};

// |Z10(t)|^2 for projected dynamical states; the window extends `tail`
// atomic units past the laser to expose post-pulse quantum beats.
Figure4Data figure4_data(const System& system, const Config& config,
                         std::vector<double> e_values = {0.02, 0.03, 0.04}, double tail = 200.0);

// Writes figN.csv and figN.svg (fig2/fig3 also write the scan CSV columns)
// into out_dir and returns the written paths.
std::vector<std::string> reproduce_figure(const System& system, const Config& config, int which,
                                          const std::string& out_dir);

}  // namespace attodress
