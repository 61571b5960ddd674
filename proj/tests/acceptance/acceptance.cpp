// Acceptance suite: one PASS/FAIL line per criterion on the full 8192-point
// grid. Exit status is the number of failed criteria.
#include <attodress/attodress.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

using namespace attodress;

namespace {

// Tolerances and limits.
constexpr double kEps0 = -1.75, kEps0Tol = 0.005;
constexpr double kEps1 = -0.408, kEps1Tol = 0.005;
constexpr double kEps3 = -0.113, kEps3Tol = 0.003;
constexpr double kEps4 = -0.077, kEps4Tol = 0.003;
constexpr double kSpectrumSeconds = 10.0;
constexpr double kLossLo = 0.002, kLossHi = 0.0045;
constexpr double kPropagationSeconds = 60.0;
constexpr double kUnperturbedMinBelow = 0.95;
constexpr double kMinimumToZeroTol = 0.15;
constexpr double kProjectedRiseTol = 0.002;
constexpr double kUOverPFactor = 2.0;
constexpr double kFullScanSeconds = 7200.0;
constexpr double kModelScanSeconds = 300.0;
constexpr double kBeatPeriod = 21.0, kBeatTol = 2.0;
constexpr double kProbeOnlyTol = 0.02;
constexpr double kProbeHalvingTol = 0.01;
constexpr double kOrthoTol = 1e-10;
constexpr double kNormDriftTol = 1e-10;
constexpr double kDtHalvingTol = 1e-5;
constexpr double kPhaseTol = 1e-12;
constexpr double kQuadraticTol = 1e-10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;
std::vector<int> failed_ids;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) {
    ++failures;
    failed_ids.push_back(id);
  }
}

// --known-failures 2,3 keeps those criteria out of the exit status.
std::vector<int> parse_known(int argc, char** argv) {
  std::vector<int> ids;
  for (int k = 1; k + 1 < argc; ++k) {
    if (std::string(argv[k]) != "--known-failures") continue;
    std::string list = argv[k + 1];
    std::size_t pos = 0;
    while (pos < list.size()) {
      const std::size_t comma = list.find(',', pos);
      ids.push_back(std::stoi(list.substr(pos, comma - pos)));
      pos = comma == std::string::npos ? list.size() : comma + 1;
    }
  }
  return ids;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

DressingOptions options(const Config& cfg, int n_runs) {
  DressingOptions o;
  o.dt = cfg.dt;
  o.sample_stride = cfg.sample_stride;
  o.n_runs = n_runs;
  o.workers = cfg.workers;
  return o;
}

LaserDressing laser_window_dressing(const System& sys, const Config& cfg, double e_max) {
  const Pulse laser = cfg.laser().with_e_max(e_max);
  const Support s = laser.support();
  return dress(sys, laser, s.begin - 1.0, s.end + 1.0, options(cfg, 2));
}

double max_norm_drift(const std::vector<ProjectedRun>& runs) {
  double worst = 0.0;
  for (const auto& r : runs)
    for (double n : r.norms) worst = std::max(worst, std::abs(n - 1.0));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<int> known = parse_known(argc, argv);
  const Config cfg;
  std::printf("attodress %s acceptance suite\n", code_version().c_str());

  // 1. spectrum
  const auto t_spec = Clock::now();
  const System sys = System::from_config(cfg);
  const double spec_s = seconds_since(t_spec);
  {
    const auto& b = sys.basis;
    const bool ok = std::abs(b.energy(0) - kEps0) <= kEps0Tol &&
                    std::abs(b.energy(1) - kEps1) <= kEps1Tol &&
                    std::abs(b.energy(3) - kEps3) <= kEps3Tol &&
                    std::abs(b.energy(4) - kEps4) <= kEps4Tol && spec_s < kSpectrumSeconds;
    char d[256];
    std::snprintf(d, sizeof d, "eps0=%.6f eps1=%.6f eps3=%.6f eps4=%.6f (%.2f s)", b.energy(0),
                  b.energy(1), b.energy(3), b.energy(4), spec_s);
    report(1, ok, d);
  }

  // 2. bound-space loss from |1> at e_max = 0.02
  guarded(2, [&] {
    const PropagationPlan plan = PropagationPlan::covering({cfg.laser()}, cfg.dt, cfg.sample_stride);
    const auto t0 = Clock::now();
    const ProjectedRun run = propagate_projected(sys.basis.state(1), sys.potential, plan, sys.basis);
    const double secs = seconds_since(t0);
    const double loss = ionization_probability(run.overlaps.back());
    char d[256];
    std::snprintf(d, sizeof d, "loss=%.6f in [%.4f, %.4f], 1-|<1|psi>|^2=%.6f (%.1f s)", loss,
                  kLossLo, kLossHi, 1.0 - std::norm(run.overlaps.back()(1)), secs);
    report(2, loss >= kLossLo && loss <= kLossHi && secs < kPropagationSeconds, d);
  });

  // 3 and part of 8 share the e_max = 0.02 dressing
  std::optional<LaserDressing> d02;
  guarded(3, [&] {
    d02 = laser_window_dressing(sys, cfg, 0.02);
    const Figure1Data f = figure1_data(*d02);
    const auto& u = f.a1_abs2.at(Family::unperturbed);
    const auto& a = f.a1_abs2.at(Family::adiabatic);
    const auto& p = f.a1_abs2.at(Family::projected);
    const double min_u = *std::min_element(u.begin(), u.end());

    // zero crossings of E_L bounding the central three half-cycles
    std::vector<double> zeros;
    const Pulse laser = d02->laser;
    for (std::size_t k = 1; k < f.times.size(); ++k) {
      const double e0 = laser.electric_field(f.times[k - 1]);
      const double e1 = laser.electric_field(f.times[k]);
      if (e0 * e1 < 0.0) {
        zeros.push_back(f.times[k - 1] - e0 * (f.times[k] - f.times[k - 1]) / (e1 - e0));
      }
    }
    std::sort(zeros.begin(), zeros.end(),
              [](double x, double y) { return std::abs(x) < std::abs(y); });
    zeros.resize(std::min<std::size_t>(zeros.size(), 4));
    std::vector<double> minima;
    for (std::size_t k = 1; k + 1 < a.size(); ++k) {
      if (a[k] < a[k - 1] && a[k] <= a[k + 1]) minima.push_back(f.times[k]);
    }
    double worst_offset = 0.0;
    for (double z : zeros) {
      double best = 1e300;
      for (double m : minima) best = std::min(best, std::abs(m - z));
      worst_offset = std::max(worst_offset, best);
    }

    double rise = 0.0, running_min = 1.0;
    for (double x : p) {
      running_min = std::min(running_min, x);
      rise = std::max(rise, x - running_min);
    }
    const bool ok = min_u < kUnperturbedMinBelow && zeros.size() == 4 &&
                    worst_offset <= kMinimumToZeroTol && rise < kProjectedRiseTol;
    char d[256];
    std::snprintf(d, sizeof d,
                  "min|a1u|^2=%.5f; adiabatic minimum to field zero <= %.3f a.u. (tol %.2f); "
                  "projected max rise %.5f (tol %.3f)",
                  min_u, worst_offset, kMinimumToZeroTol, rise, kProjectedRiseTol);
    report(3, ok, d);
  });

  // 4. final mismatch at e_max = 0.04, p below d
  std::optional<LaserDressing> d04;
  guarded(4, [&] {
    d04 = laser_window_dressing(sys, cfg, 0.04);
    const Figure1Data f = figure1_data(*d04);
    const double tdse = f.pop1_tdse.back();
    const double mp = std::abs(f.a1_abs2.at(Family::projected).back() - tdse);
    const double md = std::abs(f.a1_abs2.at(Family::dynamic).back() - tdse);
    char d[160];
    std::snprintf(d, sizeof d, "mismatch p=%.5f d=%.5f", mp, md);
    report(4, mp < md, d);
  });

  // 5. delay scans at e_max = 0.02 against the two-pulse TDSE
  guarded(5, [&] {
    bool ok = true;
    std::string detail;
    for (auto [i, f] : {std::pair{1, 0}, std::pair{0, 1}}) {
      ScanConfig sc = ScanConfig::from_config(cfg, i, f);
      sc.tdse_reference = false;
      const auto tm = Clock::now();
      run_scan(sys, sc);
      const double model_s = seconds_since(tm);

      sc.tdse_reference = true;
      const auto tf = Clock::now();
      const ScanResult r = run_scan(sys, sc);
      const double full_s = seconds_since(tf);

      double err[4];
      int k = 0;
      for (Family fam : kAllFamilies) {
        const auto e = r.mean_abs_error(fam);
        err[k++] = e ? *e : INFINITY;
      }
      const double ep = err[3];
      const bool p_best = ep < err[0] && ep < err[1] && ep < err[2];
      const bool u_factor = !(i == 0 && f == 1) || err[0] >= kUOverPFactor * ep;
      ok = ok && p_best && u_factor && r.points.size() == 61 && full_s < kFullScanSeconds &&
           model_s < kModelScanSeconds;
      char d[256];
      std::snprintf(d, sizeof d,
                    "%d->%d MAE u=%.5f a=%.5f d=%.5f p=%.5f (model %.0f s, full %.0f s); ", i, f,
                    err[0], err[1], err[2], ep, model_s, full_s);
      detail += d;
    }
    report(5, ok, detail);
  });

  // 6. Z10 crest ordering and post-pulse beat period
  guarded(6, [&] {
    const Figure4Data f = figure4_data(sys, cfg);
    std::vector<double> crest;
    for (const auto& z : f.z10_abs2) {
      double best = 1e300, value = NAN;
      for (std::size_t k = 0; k < f.times.size(); ++k) {
        if (std::abs(f.times[k]) < best) {
          best = std::abs(f.times[k]);
          value = z[k];
        }
      }
      crest.push_back(value);
    }
    const bool decreasing = crest.size() == 3 && crest[0] > crest[1] && crest[1] > crest[2];
    const auto& z = f.z10_abs2.back();
    std::vector<double> peaks;
    for (std::size_t k = 1; k + 1 < z.size(); ++k) {
      if (f.times[k] > f.laser_end && z[k] > z[k - 1] && z[k] >= z[k + 1]) {
        peaks.push_back(f.times[k]);
      }
    }
    const double period = peaks.size() >= 2 ? (peaks.back() - peaks.front()) /
                                                  static_cast<double>(peaks.size() - 1)
                                            : NAN;
    char d[256];
    std::snprintf(d, sizeof d, "crest |Z10|^2 = %.5f > %.5f > %.5f; beat period %.2f a.u.",
                  crest[0], crest[1], crest[2], period);
    report(6, decreasing && std::abs(period - kBeatPeriod) <= kBeatTol, d);
  });

  // 7. laser off: model against probe-only TDSE, and first-order regime
  guarded(7, [&] {
    const Pulse probe = cfg.probe();
    const Support s = probe.support();
    const LaserDressing off =
        dress(sys, cfg.laser().with_e_max(0.0), s.begin - 1.0, s.end + 1.0, options(cfg, 2));
    auto ratio = [&](int i, int f, double e) {
      const Pulse pr = probe.with_e_max(e);
      const PropagationPlan plan = PropagationPlan::over(off.plan.t_start, off.plan.t_end, {pr},
                                                         cfg.dt, cfg.sample_stride);
      const ProjectedRun run =
          propagate_projected(sys.basis.state(i), sys.potential, plan, sys.basis);
      const ProbeModel m(off.family(Family::projected), sys.basis, cfg.amp_floor);
      return m.final_probability(i, f, pr) / std::norm(run.overlaps.back()(f));
    };
    bool ok = true;
    std::string detail;
    for (auto [i, f] : {std::pair{0, 1}, std::pair{1, 0}}) {
      const double r1 = ratio(i, f, probe.e_max());
      const double r2 = ratio(i, f, 0.5 * probe.e_max());
      ok = ok && std::abs(r1 - 1.0) < kProbeOnlyTol && std::abs(r2 / r1 - 1.0) < kProbeHalvingTol;
      char d[160];
      std::snprintf(d, sizeof d, "p%d%d model/tdse=%.5f, halved=%.5f; ", f, i, r1, r2);
      detail += d;
    }
    report(7, ok, detail);
  });

  // 8. property suites
  guarded(8, [&] {
    if (!d02) d02 = laser_window_dressing(sys, cfg, 0.02);
    if (!d04) d04 = laser_window_dressing(sys, cfg, 0.04);
    double ortho = 0.0;
    for (const LaserDressing* d : {&*d02, &*d04}) {
      for (const auto& [fam, traj] : d->families) ortho = std::max(ortho, orthonormality_error(traj));
    }
    const double drift = std::max(max_norm_drift(d02->runs), max_norm_drift(d04->runs));

    PropagationPlan half = d04->plan;
    half.dt = 0.5 * d04->plan.dt;
    half.sample_stride = 2 * d04->plan.sample_stride;
    const ProjectedRun fine =
        propagate_projected(sys.basis.state(1), sys.potential, half, sys.basis);
    const double dt_change =
        (fine.overlaps.back().cwiseAbs2() - d04->runs[1].overlaps.back().cwiseAbs2())
            .cwiseAbs()
            .maxCoeff();

    DressedTrajectory rotated = d02->family(Family::projected);
    for (auto& c : rotated.coeffs) {
      c.col(0) *= std::exp(cplx{0.0, 1.3});
      c.col(1) *= std::exp(cplx{0.0, -0.4});
    }
    attach_amplitudes(rotated, d02->runs);
    const ProbeModel base(d02->family(Family::projected), sys.basis, cfg.amp_floor);
    const ProbeModel turned(rotated, sys.basis, cfg.amp_floor);
    const Pulse probe = cfg.probe();
    double phase_dev = 0.0, quad_dev = 0.0;
    for (auto [i, f] : {std::pair{1, 0}, std::pair{0, 1}}) {
      const double p0 = base.final_probability(i, f, probe);
      phase_dev = std::max(phase_dev, std::abs(turned.final_probability(i, f, probe) - p0));
      const double q1 = base.induced_probability(i, f, probe);
      const double q2 = base.induced_probability(i, f, probe.with_e_max(2.0 * probe.e_max()));
      quad_dev = std::max(quad_dev, std::abs(q2 / (4.0 * q1) - 1.0));
    }
    const bool ok = ortho < kOrthoTol && drift < kNormDriftTol && dt_change < kDtHalvingTol &&
                    phase_dev < kPhaseTol && quad_dev < kQuadraticTol;
    char d[256];
    std::snprintf(d, sizeof d,
                  "orthonormality %.2e, norm drift %.2e, dt-halving %.2e, phase %.2e, "
                  "quadratic %.2e",
                  ortho, drift, dt_change, phase_dev, quad_dev);
    report(8, ok, d);
  });

  int unexpected = 0;
  for (int id : failed_ids) {
    if (std::find(known.begin(), known.end(), id) == known.end()) ++unexpected;
  }
  std::printf("%d criterion(s) failed, %d not listed as known\n", failures, unexpected);
  return unexpected;
}
