#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "attodress/attodress.hpp"

namespace fs = std::filesystem;
using namespace attodress;

namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  int workers = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "key = value file or a run manifest");
  cmd->add_option("--set", c.overrides, "override, key=value (repeatable)");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--workers", c.workers, "worker threads");
}

Config resolve(const Common& c) {
  Config cfg = c.config_path.empty() ? Config{} : load_config_file(c.config_path);
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.workers > 0) cfg.workers = c.workers;
  return cfg;
}

void set_if(Config& cfg, const char* key, const std::optional<double>& v) {
  if (v) set_config_value(cfg, key, format_double(*v));
}

std::string in_dir(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

class Stages {
 public:
  void mark(std::string name) {
    const auto now = Clock::now();
    stages_.push_back({std::move(name), std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }
  void finish(const std::string& dir, const Config& cfg, const std::string& command) const {
    write_manifest(dir, cfg, command, std::chrono::duration<double>(Clock::now() - start_).count(),
                   stages_);
  }

 private:
  Clock::time_point start_ = Clock::now();
  Clock::time_point last_ = start_;
  std::vector<StageTiming> stages_;
};

std::vector<Family> parse_families(const std::string& list) {
  std::vector<Family> out;
  std::stringstream ss(list);
  std::string tag;
  while (std::getline(ss, tag, ',')) {
    if (!tag.empty()) out.push_back(parse_family(tag));
  }
  if (out.empty()) throw ConfigError("--families is empty");
  return out;
}

void check_state(const Config& cfg, int n, const char* what) {
  if (n < 0 || n >= cfg.n_states) {
    throw ConfigError(std::string(what) + " must lie in [0, " + std::to_string(cfg.n_states - 1) +
                      "]");
  }
}

// Laser-only dressing of one family over the laser window, optionally
// widened to hold a probe.
LaserDressing dress_for(const System& sys, const Config& cfg, Family family, int n_runs,
                        const Pulse* probe) {
  const Pulse laser = cfg.laser();
  Support s = laser.support();
  if (probe) {
    const Support p = probe->support();
    s.begin = std::min(s.begin, p.begin);
    s.end = std::max(s.end, p.end);
  }
  DressingOptions opts;
  opts.dt = cfg.dt;
  opts.sample_stride = cfg.sample_stride;
  opts.n_runs = n_runs;
  opts.families = {family};
  opts.workers = cfg.workers;
  opts.absorber_enabled = cfg.absorber_enabled;
  opts.absorber_width = cfg.absorber_width;
  return dress(sys, laser, s.begin - 1.0, s.end + 1.0, opts);
}

int cmd_bound(const Common& c) {
  Stages st;
  const Config cfg = resolve(c);
  const System sys = System::from_config(cfg);
  st.mark("spectrum");
  ensure_directory(c.out_dir);
  Table t;
  t.header = {"n", "energy_au", "energy_ev"};
  std::printf("%3s %22s %22s\n", "n", "energy (hartree)", "energy (eV)");
  for (int n = 0; n < sys.basis.size(); ++n) {
    const double e = sys.basis.energy(n);
    std::printf("%3d %22.15f %22.15f\n", n, e, hartree_to_ev(e));
    t.add_row({std::to_string(n), format_double(e), format_double(hartree_to_ev(e))});
  }
  write_csv(in_dir(c.out_dir, "bound_states.csv"), t);
  st.finish(c.out_dir, cfg, "bound");
  return 0;
}

struct PropagateArgs {
  int initial = 0;
  std::string fields = "laser";
  std::optional<double> e_max, dt, tau;
  std::optional<int> stride;
};

int cmd_propagate(const Common& c, const PropagateArgs& a) {
  Stages st;
  Config cfg = resolve(c);
  set_if(cfg, "laser.e_max", a.e_max);
  set_if(cfg, "propagation.dt", a.dt);
  set_if(cfg, "probe.tau", a.tau);
  if (a.stride) set_config_value(cfg, "propagation.sample_stride", std::to_string(*a.stride));
  check_state(cfg, a.initial, "--initial");
  std::vector<Pulse> fields;
  if (a.fields == "laser" || a.fields == "both") fields.push_back(cfg.laser());
  if (a.fields == "probe" || a.fields == "both") fields.push_back(cfg.probe());
  if (fields.empty()) throw ConfigError("--fields must be laser, probe or both");

  const System sys = System::from_config(cfg);
  st.mark("spectrum");
  PropagationPlan plan = PropagationPlan::covering(fields, cfg.dt, cfg.sample_stride);
  plan.absorber_enabled = cfg.absorber_enabled;
  plan.absorber_width = cfg.absorber_width;
  const ProjectedRun run =
      propagate_projected(sys.basis.state(a.initial), sys.potential, plan, sys.basis);
  st.mark("propagate");

  ensure_directory(c.out_dir);
  Table t;
  t.header = {"t_au", "t_fs"};
  for (int n = 0; n < sys.basis.size(); ++n) t.header.push_back("pop_" + std::to_string(n));
  t.header.push_back("ionized");
  t.header.push_back("norm");
  for (std::size_t s = 0; s < run.size(); ++s) {
    std::vector<double> row = {run.times[s], au_to_fs(run.times[s])};
    for (int n = 0; n < sys.basis.size(); ++n) row.push_back(std::norm(run.overlaps[s](n)));
    row.push_back(ionization_probability(run.overlaps[s]));
    row.push_back(run.norms[s]);
    t.add_numeric_row(row);
  }
  write_csv(in_dir(c.out_dir, "populations.csv"), t);
  std::printf("final bound-space loss: %.10g\n", ionization_probability(run.overlaps.back()));
  st.finish(c.out_dir, cfg, "propagate");
  return 0;
}

struct DressedArgs {
  std::string family = "p";
  std::optional<double> e_max;
  int initial = 1;
};

int cmd_dressed(const Common& c, const DressedArgs& a) {
  Stages st;
  Config cfg = resolve(c);
  set_if(cfg, "laser.e_max", a.e_max);
  check_state(cfg, a.initial, "--initial");
  const Family family = parse_family(a.family);
  const System sys = System::from_config(cfg);
  st.mark("spectrum");
  const LaserDressing d = dress_for(sys, cfg, family, cfg.n_states, nullptr);
  st.mark("dressing");
  const DressedTrajectory& fam = d.family(family);
  const auto z = dressed_dipole(fam, sys.basis);

  ensure_directory(c.out_dir);
  Table amps;
  amps.header = {"t_au", "t_fs"};
  for (int n = 0; n < fam.n_dressed(); ++n) amps.header.push_back("abs2_a" + std::to_string(n));
  amps.header.push_back("pop_tdse");
  Table z10;
  z10.header = {"t_au", "t_fs", "re", "im", "abs2"};
  for (std::size_t s = 0; s < fam.size(); ++s) {
    const double t = fam.times[s];
    std::vector<double> row = {t, au_to_fs(t)};
    for (int n = 0; n < fam.n_dressed(); ++n) row.push_back(std::norm(fam.amplitudes[s](n)));
    row.push_back(std::norm(d.runs[static_cast<std::size_t>(a.initial)].overlaps[s](a.initial)));
    amps.add_numeric_row(row);
    if (fam.n_dressed() > 1) {
      const cplx v = z[s](1, 0);
      z10.add_numeric_row({t, au_to_fs(t), v.real(), v.imag(), std::norm(v)});
    }
  }
  write_csv(in_dir(c.out_dir, "amplitudes.csv"), amps);
  write_csv(in_dir(c.out_dir, "z10.csv"), z10);
  std::printf("orthonormality error: %.3g\n", orthonormality_error(fam));
  st.finish(c.out_dir, cfg, "dressed --family " + a.family);
  return 0;
}

struct TransitionArgs {
  std::string family = "p";
  int i = 1, f = 0;
  std::optional<double> e_max, tau, probe_e_max;
  bool full = false;
};

int cmd_transition(const Common& c, const TransitionArgs& a) {
  Stages st;
  Config cfg = resolve(c);
  set_if(cfg, "laser.e_max", a.e_max);
  set_if(cfg, "probe.tau", a.tau);
  set_if(cfg, "probe.e_max", a.probe_e_max);
  check_state(cfg, a.i, "--i");
  check_state(cfg, a.f, "--f");
  const Family family = parse_family(a.family);
  const System sys = System::from_config(cfg);
  const Pulse probe = cfg.probe();
  const int n_runs = a.full ? cfg.n_states : std::max(a.i, a.f) + 1;
  const LaserDressing d = dress_for(sys, cfg, family, n_runs, &probe);
  st.mark("dressing");
  const ProbeModel model(d.family(family), sys.basis, cfg.amp_floor);
  const SumRange range = a.full ? SumRange::full : SumRange::restricted;
  const double p = model.final_probability(a.i, a.f, probe, range);
  st.mark("model");

  nlohmann::ordered_json j;
  j["family"] = a.family;
  j["i"] = a.i;
  j["f"] = a.f;
  j["tau_au"] = probe.t_center();
  j["sum"] = a.full ? "full" : "restricted";
  j["p_fi"] = p;
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  const int n_top = a.full ? model.family().n_dressed() - 1 : std::max(a.i, a.f);
  for (int n = 0; n <= n_top; ++n) {
    const cplx alpha = n == a.i ? model.family().amplitudes.back()(n)
                                : model.transition_amplitude(a.i, n, probe);
    comps.push_back({{"n", n}, {"re", alpha.real()}, {"im", alpha.imag()}});
  }
  j["alpha"] = comps;
  std::cout << j.dump(2) << '\n';
  if (c.out_dir != ".") {
    ensure_directory(c.out_dir);
    st.finish(c.out_dir, cfg, "transition");
  }
  return 0;
}

struct DipoleArgs {
  std::string family = "p";
  int i = 0;
  int n_max = 1;
  std::optional<double> e_max, tau;
};

int cmd_dipole(const Common& c, const DipoleArgs& a) {
  Stages st;
  Config cfg = resolve(c);
  set_if(cfg, "laser.e_max", a.e_max);
  set_if(cfg, "probe.tau", a.tau);
  check_state(cfg, a.i, "--i");
  check_state(cfg, a.n_max, "--n-max");
  const Family family = parse_family(a.family);
  const System sys = System::from_config(cfg);
  const Pulse probe = cfg.probe();
  const LaserDressing d = dress_for(sys, cfg, family, std::max(a.i, a.n_max) + 1, &probe);
  st.mark("dressing");
  const ProbeModel model(d.family(family), sys.basis, cfg.amp_floor);
  const DipoleResponse r = dipole_response(a.i, model, probe, a.n_max);
  st.mark("model");
  ensure_directory(c.out_dir);
  Table t;
  t.header = {"t_au", "t_fs", "d", "d_probe_induced"};
  for (std::size_t s = 0; s < r.times.size(); ++s) {
    t.add_numeric_row({r.times[s], au_to_fs(r.times[s]), r.total[s], r.probe_induced[s]});
  }
  write_csv(in_dir(c.out_dir, "dipole.csv"), t);
  st.finish(c.out_dir, cfg, "dipole-response");
  return 0;
}

struct ScanArgs {
  int i = 1, f = 0;
  std::optional<double> e_max, tau_min, tau_max, tau_step;
  std::string families = "u,a,d,p";
  bool no_tdse = false;
};

int cmd_scan(const Common& c, const ScanArgs& a) {
  Stages st;
  Config cfg = resolve(c);
  set_if(cfg, "laser.e_max", a.e_max);
  set_if(cfg, "scan.tau_min", a.tau_min);
  set_if(cfg, "scan.tau_max", a.tau_max);
  set_if(cfg, "scan.tau_step", a.tau_step);
  check_state(cfg, a.i, "--i");
  check_state(cfg, a.f, "--f");
  const System sys = System::from_config(cfg);
  ScanConfig sc = ScanConfig::from_config(cfg, a.i, a.f);
  sc.families = parse_families(a.families);
  sc.tdse_reference = !a.no_tdse;
  const ScanResult r = run_scan(sys, sc);
  st.mark("scan");
  ensure_directory(c.out_dir);
  write_csv(in_dir(c.out_dir, "scan.csv"), scan_table(r));
  for (Family fam : r.families) {
    if (const auto e = r.mean_abs_error(fam)) {
      std::printf("mean |ratio_%c - ratio_tdse| = %.6g\n", family_tag(fam), *e);
    }
  }
  st.finish(c.out_dir, cfg, "scan");
  return 0;
}

struct ReproduceArgs {
  std::string which;
  std::optional<double> e_max;
};

int cmd_reproduce(const Common& c, const ReproduceArgs& a) {
  Stages st;
  Config cfg = resolve(c);
  set_if(cfg, "laser.e_max", a.e_max);
  int which = 0;
  if (a.which == "fig1") which = 1;
  if (a.which == "fig2") which = 2;
  if (a.which == "fig3") which = 3;
  if (a.which == "fig4") which = 4;
  if (!which) throw ConfigError("reproduce expects fig1, fig2, fig3 or fig4");
  const System sys = System::from_config(cfg);
  for (const std::string& p : reproduce_figure(sys, cfg, which, c.out_dir)) {
    std::printf("wrote %s\n", p.c_str());
  }
  st.mark(a.which);
  st.finish(c.out_dir, cfg, "reproduce " + a.which);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dressed bound states for attosecond pump-probe dynamics"};
  app.set_version_flag("--version", code_version());
  app.require_subcommand(1);

  Common common;
  auto* bound = app.add_subcommand("bound", "field-free bound spectrum");
  add_common(bound, common);

  PropagateArgs pa;
  auto* prop = app.add_subcommand("propagate", "full TDSE run with bound populations");
  add_common(prop, common);
  prop->add_option("--initial", pa.initial, "initial bound state");
  prop->add_option("--fields", pa.fields, "laser, probe or both")
      ->check(CLI::IsMember({"laser", "probe", "both"}));
  prop->add_option("--e-max", pa.e_max, "laser peak field");
  prop->add_option("--tau", pa.tau, "probe center");
  prop->add_option("--dt", pa.dt, "time step");
  prop->add_option("--stride", pa.stride, "sampling stride in steps");

  DressedArgs da;
  auto* dressed = app.add_subcommand("dressed", "dressed-state amplitudes and Z10");
  add_common(dressed, common);
  dressed->add_option("--family", da.family, "u, a, d or p");
  dressed->add_option("--e-max", da.e_max, "laser peak field");
  dressed->add_option("--initial", da.initial, "state whose TDSE population is reported");

  TransitionArgs ta;
  auto* trans = app.add_subcommand("transition", "model transition probability as JSON");
  add_common(trans, common);
  trans->add_option("--family", ta.family, "u, a, d or p");
  trans->add_option("--i", ta.i, "initial state");
  trans->add_option("--f", ta.f, "final state");
  trans->add_option("--e-max", ta.e_max, "laser peak field");
  trans->add_option("--tau", ta.tau, "probe delay");
  trans->add_option("--probe-e-max", ta.probe_e_max, "probe peak field");
  trans->add_flag("--full", ta.full, "sum over every dressed state");

  DipoleArgs dpa;
  auto* dip = app.add_subcommand("dipole-response", "model dipole d(t)");
  add_common(dip, common);
  dip->add_option("--family", dpa.family, "u, a, d or p");
  dip->add_option("--i", dpa.i, "initial state");
  dip->add_option("--n-max", dpa.n_max, "highest dressed state in the sum");
  dip->add_option("--e-max", dpa.e_max, "laser peak field");
  dip->add_option("--tau", dpa.tau, "probe delay");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "delay scan of normalized transition probabilities");
  add_common(scan, common);
  scan->add_option("--i", sa.i, "initial state");
  scan->add_option("--f", sa.f, "final state");
  scan->add_option("--e-max", sa.e_max, "laser peak field");
  scan->add_option("--tau-min", sa.tau_min);
  scan->add_option("--tau-max", sa.tau_max);
  scan->add_option("--tau-step", sa.tau_step);
  scan->add_option("--families", sa.families, "comma separated subset of u,a,d,p");
  scan->add_flag("--no-tdse-ref", sa.no_tdse, "skip the two-pulse TDSE reference");

  ReproduceArgs ra;
  auto* repro = app.add_subcommand("reproduce", "figure datasets and SVG plots");
  add_common(repro, common);
  repro->add_option("which", ra.which, "fig1, fig2, fig3 or fig4")->required();
  repro->add_option("--e-max", ra.e_max, "laser peak field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*bound) return cmd_bound(common);
    if (*prop) return cmd_propagate(common, pa);
    if (*dressed) return cmd_dressed(common, da);
    if (*trans) return cmd_transition(common, ta);
    if (*dip) return cmd_dipole(common, dpa);
    if (*scan) return cmd_scan(common, sa);
    if (*repro) return cmd_reproduce(common, ra);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DepletionSingularityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
