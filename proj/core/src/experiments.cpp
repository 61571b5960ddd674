#include "attodress/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include "attodress/errors.hpp"
#include "attodress/units.hpp"
#include "parallel.hpp"

namespace attodress {

namespace {

constexpr double kWindowPadding = 1.0;

void warn_if_unabsorbed(const Pulse& laser, bool absorber_enabled) {
  if (laser.e_max() > 0.04 && !absorber_enabled) {
    std::clog << "warning: laser e_max = " << laser.e_max()
              << " with the absorber off; reflections from the box edge may reach the core\n";
  }
}

std::string family_column(const char* prefix, Family f) {
  return std::string(prefix) + family_tag(f);
}

PropagationPlan with_absorber(PropagationPlan plan, bool enabled, double width) {
  plan.absorber_enabled = enabled;
  plan.absorber_width = width;
  return plan;
}

}  // namespace

System System::from_config(const Config& config) {
  const Grid grid = build_grid(config.grid_dz, config.grid_box);
  Potential pot = soft_core_potential(grid, config.soft_core_a);
  BoundBasis basis = bound_states(pot, config.n_states);
  return System{std::move(pot), std::move(basis)};
}

const DressedTrajectory& LaserDressing::family(Family f) const {
  const auto it = families.find(f);
  if (it == families.end()) {
    throw ConfigError(std::string("dressing: family '") + family_tag(f) + "' was not computed");
  }
  return it->second;
}

LaserDressing dress(const System& system, const Pulse& laser, double t_start, double t_end_min,
                    const DressingOptions& options) {
  warn_if_unabsorbed(laser, options.absorber_enabled);
  LaserDressing out{laser, {}, {}, {}};
  out.plan = with_absorber(
      PropagationPlan::over(t_start, t_end_min, {laser}, options.dt, options.sample_stride),
      options.absorber_enabled, options.absorber_width);
  const BoundBasis& basis = system.basis;
  const int n_runs = std::clamp(options.n_runs, 1, basis.size());
  out.runs = laser_only_runs(basis, system.potential, out.plan, n_runs, options.workers);
  const std::vector<double>& times = out.runs.front().times;

  for (Family f : options.families) {
    DressedTrajectory fam;
    switch (f) {
      case Family::unperturbed: fam = unperturbed_family(basis, times); break;
      case Family::adiabatic: fam = adiabatic_family(basis, laser, times); break;
      case Family::dynamic: fam = dynamic_family(basis, laser, times, options.dt); break;
      case Family::projected: fam = projected_family(out.runs, basis, n_runs); break;
    }
    attach_amplitudes(fam, out.runs);
    out.families.emplace(f, std::move(fam));
  }
  return out;
}

ScanConfig ScanConfig::from_config(const Config& config, int initial, int final) {
  ScanConfig sc;
  sc.initial = initial;
  sc.final = final;
  sc.taus = config.tau_grid();
  sc.laser = config.laser();
  sc.probe = config.probe();
  sc.workers = config.workers;
  sc.dt = config.dt;
  sc.sample_stride = config.sample_stride;
  sc.amp_floor = config.amp_floor;
  sc.absorber_enabled = config.absorber_enabled;
  sc.absorber_width = config.absorber_width;
  return sc;
}

std::pair<double, double> scan_window(const ScanConfig& config) {
  Support s = config.laser.support();
  for (double tau : config.taus) {
    const Support p = config.probe.centered_at(tau).support();
    s.begin = std::min(s.begin, p.begin);
    s.end = std::max(s.end, p.end);
  }
  return {s.begin - kWindowPadding, s.end + kWindowPadding};
}

std::optional<double> ScanResult::mean_abs_error(Family f) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& p : points) {
    const auto it = p.ratio_model.find(f);
    if (it == p.ratio_model.end() || !it->second || !p.ratio_tdse) continue;
    sum += std::abs(*it->second - *p.ratio_tdse);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

ScanResult run_scan(const System& system, const ScanConfig& config) {
  const auto [t0, t1] = scan_window(config);
  DressingOptions opts;
  opts.dt = config.dt;
  opts.sample_stride = config.sample_stride;
  opts.n_runs = std::max(config.initial, config.final) + 1;
  opts.families = config.families;
  opts.workers = config.workers;
  opts.absorber_enabled = config.absorber_enabled;
  opts.absorber_width = config.absorber_width;
  const LaserDressing dressing = dress(system, config.laser, t0, t1, opts);
  return run_scan(system, config, dressing);
}

ScanResult run_scan(const System& system, const ScanConfig& config, const LaserDressing& dressing) {
  const int nb = system.basis.size();
  if (config.initial < 0 || config.initial >= nb || config.final < 0 || config.final >= nb) {
    throw ConfigError("scan: state index out of range");
  }
  if (config.taus.empty()) throw ConfigError("scan: empty tau grid");
  for (std::size_t k = 1; k < config.taus.size(); ++k) {
    if (!(config.taus[k] > config.taus[k - 1])) {
      throw ConfigError("scan: tau grid must be strictly increasing");
    }
  }
  const PropagationPlan& window = dressing.plan;
  const auto [need0, need1] = scan_window(config);
  if (window.t_start > need0 + 1e-9 || window.t_end < need1 - 1e-9) {
    throw ConfigError("scan: laser dressing window does not cover every probe position");
  }

  ScanResult result;
  result.initial = config.initial;
  result.final = config.final;
  result.t_final = window.t_end;
  result.families = config.families;

  std::map<Family, ProbeModel> models;
  for (Family f : config.families) {
    models.emplace(f, ProbeModel(dressing.family(f), system.basis, config.amp_floor));
  }

  auto two_pulse_plan = [&](std::vector<Pulse> fields) {
    PropagationPlan p = window;
    p.fields = std::move(fields);
    return p;
  };
  const Wavefunction initial = system.basis.state(config.initial);
  auto final_population = [&](const PropagationPlan& plan) {
    const Wavefunction psi = propagate(initial, system.potential, plan, SampleObserver{});
    return std::norm(system.basis.project(psi)(config.final));
  };

  // Probe-only normalizer; tau-independent, so the probe sits mid-window.
  const double t_mid = 0.5 * (window.t_start + window.t_end);
  result.p_nolaser = final_population(two_pulse_plan({config.probe.centered_at(t_mid)}));
  if (!(result.p_nolaser > 0.0)) throw StabilityError("scan: probe-only transition probability is zero");

  result.points.resize(config.taus.size());
  detail::parallel_for(config.taus.size(), config.workers, [&](std::size_t k) {
    ScanPoint& pt = result.points[k];
    pt.tau = config.taus[k];
    const Pulse probe = config.probe.centered_at(pt.tau);
    for (Family f : config.families) {
      try {
        const double p = models.at(f).final_probability(config.initial, config.final, probe);
        pt.p_model[f] = p;
        pt.ratio_model[f] = p / result.p_nolaser;
      } catch (const DepletionSingularityError& e) {
        pt.p_model[f] = std::nullopt;
        pt.ratio_model[f] = std::nullopt;
        if (!pt.flags.empty()) pt.flags += ';';
        pt.flags += std::string("depleted_") + family_tag(f);
      }
    }
    if (config.tdse_reference) {
      pt.p_tdse = final_population(two_pulse_plan({config.laser, probe}));
      pt.ratio_tdse = *pt.p_tdse / result.p_nolaser;
    }
  });
  return result;
}

Table scan_table(const ScanResult& result) {
  Table t;
  t.header = {"tau_au", "tau_fs"};
  for (Family f : kAllFamilies) t.header.push_back(family_column("ratio_", f));
  t.header.push_back("ratio_tdse");
  t.header.push_back("flags");
  for (const auto& p : result.points) {
    std::vector<std::string> row = {format_double(p.tau), format_double(au_to_fs(p.tau))};
    for (Family f : kAllFamilies) {
      const auto it = p.ratio_model.find(f);
      row.push_back(it == p.ratio_model.end() ? std::string{} : format_optional(it->second));
    }
    row.push_back(format_optional(p.ratio_tdse));
    row.push_back(p.flags);
    t.add_row(std::move(row));
  }
  return t;
}

Figure1Data figure1_data(const LaserDressing& dressing) {
  Figure1Data out;
  const auto& runs = dressing.runs;
  if (runs.size() < 2) throw ConfigError("figure 1: needs laser-only runs from |0> and |1>");
  out.times = runs[1].times;
  for (double t : out.times) out.abs_field.push_back(std::abs(dressing.laser.electric_field(t)));
  for (const auto& [f, fam] : dressing.families) {
    std::vector<double> series;
    series.reserve(fam.size());
    for (const auto& a : fam.amplitudes) series.push_back(std::norm(a(1)));
    out.a1_abs2.emplace(f, std::move(series));
  }
  for (const auto& ov : runs[1].overlaps) out.pop1_tdse.push_back(std::norm(ov(1)));
  return out;
}

Figure1Data figure1_data(const System& system, const Config& config) {
  const Pulse laser = config.laser();
  const Support s = laser.support();
  DressingOptions opts;
  opts.dt = config.dt;
  opts.sample_stride = config.sample_stride;
  opts.n_runs = 2;
  opts.workers = config.workers;
  opts.absorber_enabled = config.absorber_enabled;
  opts.absorber_width = config.absorber_width;
  const LaserDressing d =
      dress(system, laser, s.begin - kWindowPadding, s.end + kWindowPadding, opts);
  return figure1_data(d);
}

Figure4Data figure4_data(const System& system, const Config& config, std::vector<double> e_values,
                         double tail) {
  Figure4Data out;
  out.e_values = std::move(e_values);
  const Pulse base = config.laser();
  out.laser_end = base.support().end;
  const Support s = base.support();
  DressingOptions opts;
  opts.dt = config.dt;
  opts.sample_stride = config.sample_stride;
  opts.n_runs = 2;
  opts.families = {Family::projected};
  opts.workers = config.workers;
  opts.absorber_enabled = config.absorber_enabled;
  opts.absorber_width = config.absorber_width;
  for (double e : out.e_values) {
    const Pulse laser = base.with_e_max(e);
    const LaserDressing d =
        dress(system, laser, s.begin - kWindowPadding, s.end + kWindowPadding + tail, opts);
    const auto z = dressed_dipole(d.family(Family::projected), system.basis);
    std::vector<double> series;
    series.reserve(z.size());
    for (const auto& m : z) series.push_back(std::norm(m(1, 0)));
    out.z10_abs2.push_back(std::move(series));
    if (out.times.empty()) out.times = d.runs.front().times;
  }
  const double e_top = out.e_values.empty() ? 0.0 : *std::max_element(out.e_values.begin(), out.e_values.end());
  const Pulse strongest = base.with_e_max(e_top);
  for (double t : out.times) out.abs_field.push_back(std::abs(strongest.electric_field(t)));
  return out;
}

std::vector<std::string> reproduce_figure(const System& system, const Config& config, int which,
                                          const std::string& out_dir) {
  ensure_directory(out_dir);
  const auto path = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  std::vector<std::string> written;
  const std::string tag = "fig" + std::to_string(which);

  if (which == 1) {
    const Figure1Data d = figure1_data(system, config);
    Table t;
    t.header = {"t_au", "t_fs"};
    for (Family f : kAllFamilies) t.header.push_back(family_column("abs2_a1_", f));
    t.header.push_back("pop1_tdse");
    t.header.push_back("abs_field");
    std::vector<PlotSeries> series;
    for (std::size_t s = 0; s < d.times.size(); ++s) {
      std::vector<double> row = {d.times[s], au_to_fs(d.times[s])};
      for (Family f : kAllFamilies) row.push_back(d.a1_abs2.at(f)[s]);
      row.push_back(d.pop1_tdse[s]);
      row.push_back(d.abs_field[s]);
      t.add_numeric_row(row);
    }
    std::vector<double> t_fs;
    for (double t0 : d.times) t_fs.push_back(au_to_fs(t0));
    for (Family f : kAllFamilies) {
      series.push_back({std::string("|a1|^2 (") + family_tag(f) + ")", t_fs, d.a1_abs2.at(f)});
    }
    series.push_back({"|<1|psi_L>|^2", t_fs, d.pop1_tdse});
    write_csv(path(tag + ".csv"), t);
    write_svg_plot(path(tag + ".svg"), "Population of dressed state 1", "t (fs)", "|a1(t)|^2",
                   series);
  } else if (which == 2 || which == 3) {
    const int i = which == 2 ? 1 : 0;
    const int f = which == 2 ? 0 : 1;
    const ScanResult r = run_scan(system, ScanConfig::from_config(config, i, f));
    write_csv(path(tag + ".csv"), scan_table(r));
    std::vector<double> tau_fs;
    for (const auto& p : r.points) tau_fs.push_back(au_to_fs(p.tau));
    std::vector<PlotSeries> series;
    for (Family fam : r.families) {
      std::vector<double> y;
      for (const auto& p : r.points) y.push_back(p.ratio_model.at(fam).value_or(std::nan("")));
      series.push_back({std::string("p") + std::to_string(f) + std::to_string(i) + " (" +
                            family_tag(fam) + ")",
                        tau_fs, y});
    }
    std::vector<double> y;
    for (const auto& p : r.points) y.push_back(p.ratio_tdse.value_or(std::nan("")));
    series.push_back({"TDSE", tau_fs, y});
    write_svg_plot(path(tag + ".svg"),
                   "Normalized transition probability " + std::to_string(i) + " -> " +
                       std::to_string(f),
                   "tau_probe (fs)", "p / p(no laser)", series);
  } else if (which == 4) {
    const Figure4Data d = figure4_data(system, config);
    Table t;
    t.header = {"t_au", "t_fs"};
    for (double e : d.e_values) t.header.push_back("z10_abs2_e" + format_double(e));
    t.header.push_back("abs_field");
    for (std::size_t s = 0; s < d.times.size(); ++s) {
      std::vector<double> row = {d.times[s], au_to_fs(d.times[s])};
      for (const auto& z : d.z10_abs2) row.push_back(z[s]);
      row.push_back(d.abs_field[s]);
      t.add_numeric_row(row);
    }
    write_csv(path(tag + ".csv"), t);
    std::vector<double> t_fs;
    for (double t0 : d.times) t_fs.push_back(au_to_fs(t0));
    std::vector<PlotSeries> series;
    for (std::size_t k = 0; k < d.e_values.size(); ++k) {
      series.push_back({"E_max = " + format_double(d.e_values[k]), t_fs, d.z10_abs2[k]});
    }
    write_svg_plot(path(tag + ".svg"), "Dressed dipole |Z10(t)|^2 (projected states)", "t (fs)",
                   "|Z10|^2 (a.u.)", series);
  } else {
    throw ConfigError("reproduce: figure must be 1, 2, 3 or 4");
  }
  written.push_back(path(tag + ".csv"));
  written.push_back(path(tag + ".svg"));
  return written;
}

}  // namespace attodress
