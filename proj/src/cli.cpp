#include "nonrecip/cli.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nonrecip/config_io.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/pendulum.hpp"
#include "nonrecip/scattering.hpp"
#include "nonrecip/steady_state.hpp"
#include "nonrecip/sweep.hpp"

namespace nonrecip::cli {

namespace {

using io::ConfigError;
using io::json;
using io::OutputFormat;
using io::RunConfig;

constexpr double kPi = std::numbers::pi;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Options shared by every leaf command.
struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  std::optional<int> points;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "Run configuration (JSON)");
  cmd->add_option("--out", o.out_path, "Output file (default: standard output)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_grid(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--omega-min", o.omega_min, "Grid start");
  cmd->add_option("--omega-max", o.omega_max, "Grid stop");
  cmd->add_option("--points", o.points, "Grid points");
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return io::run_config_from_text(buf.str());
}

OutputFormat resolve_format(const CommonOptions& o, const RunConfig& c, OutputFormat fallback) {
  if (!o.format.empty()) return io::output_format_from_string(o.format);
  return c.output.format.value_or(fallback);
}

/// Writes `text` to --out, the config's output path, or `out`.
void emit(const std::string& text, const CommonOptions& o, const RunConfig& c, std::ostream& out) {
  const std::string path = !o.out_path.empty() ? o.out_path : c.output.path.value_or("");
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create output directory '" + target.parent_path().string() + "'");
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw IoError("failed writing output file '" + path + "'");
}

/// Applies --omega-min/--omega-max/--points over a default grid.
SweepSpec resolve_grid(SweepSpec s, const CommonOptions& o) {
  if (o.omega_min) s.start = *o.omega_min;
  if (o.omega_max) s.stop = *o.omega_max;
  if (o.points) s.points = *o.points;
  try {
    return validate(s);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

// --- pendulum sweep -------------------------------------------------------

struct PendulumOptions {
  CommonOptions common;
  std::string figure;
};

PendulumParams figure3_preset(const std::string& panel) {
  PendulumParams p;
  p.gamma1 = p.gamma2 = p.g = p.f1 = p.f2 = 1.0;
  if (panel == "a") {
    p.phi1 = 0;
    p.phi2 = 0;
  } else if (panel == "c") {
    p.phi1 = kPi / 2;
    p.phi2 = 0;
  } else if (panel == "e") {
    p.phi1 = 0;
    p.phi2 = kPi / 2;
  } else if (panel == "g") {
    p.phi1 = kPi;
    p.phi2 = 0;
  }
  return p;
}

int pendulum_sweep(const PendulumOptions& opt, std::ostream& out) {
  RunConfig c = load_config(opt.common.config_path);
  if (!opt.figure.empty()) {
    c.pendulum = figure3_preset(opt.figure);
    c.coupling_form = CouplingForm::symmetric;
  }
  if (!c.pendulum) throw ConfigError("missing key 'pendulum' (or use --figure3)");
  SweepSpec spec{SweepVariable::pendulum_detuning, -5.0, 5.0, 1001};
  if (c.sweep && opt.figure.empty()) {
    if (c.sweep->variable != SweepVariable::pendulum_detuning) {
      throw ConfigError("key 'sweep.variable' must be 'pendulum_detuning' for pendulum sweep");
    }
    spec = *c.sweep;
  }
  spec = resolve_grid(spec, opt.common);

  const auto deltas = grid(spec);
  std::vector<PendulumSpectrumRow> rows(deltas.size());
  const PendulumParams p = *c.pendulum;
  const CouplingForm form = c.coupling_form;
  parallel_for(deltas.size(), sweep_thread_count(), [&](std::size_t k) {
    rows[k] = pendulum_spectrum<double>(p, std::span(&deltas[k], 1), form).front();
  });

  std::ostringstream text;
  if (resolve_format(opt.common, c, OutputFormat::csv) == OutputFormat::csv) {
    io::write_pendulum_csv(text, rows);
  } else {
    text << io::pendulum_rows_to_json(rows).dump(2) << '\n';
  }
  emit(text.str(), opt.common, c, out);
  return kOk;
}

// --- scatter sweep --------------------------------------------------------

struct ScatterOptions {
  CommonOptions common;
  std::string figure;
  bool from_drives = false;
  std::optional<double> theta;
};

double figure5_theta(const std::string& panel) {
  if (panel == "a") return 0;
  if (panel == "b") return kPi / 2;
  if (panel == "c") return kPi;
  return 3 * kPi / 2;
}

EffectiveParams effective_from_config(const RunConfig& c, bool from_drives) {
  if (from_drives) {
    if (!c.drives) throw ConfigError("missing key 'drives' (required by --from-drives)");
    return solve_steady_state(*c.drives, c.mode, c.solver).effective;
  }
  if (!c.effective) throw ConfigError("missing key 'effective'");
  return *c.effective;
}

int scatter_sweep(const ScatterOptions& opt, std::ostream& out) {
  RunConfig c = load_config(opt.common.config_path);
  EffectiveParams eff;
  SweepSpec spec{SweepVariable::probe_omega, 5.0, 15.0, 2001};
  if (!opt.figure.empty()) {
    eff = symmetric_effective(10.0, 0.5, 1.0, figure5_theta(opt.figure));
  } else {
    eff = effective_from_config(c, opt.from_drives);
    if (c.sweep) spec = *c.sweep;
  }
  if (opt.theta) eff = with_coupling_phase(eff, *opt.theta);
  if (spec.variable == SweepVariable::pendulum_detuning) {
    throw ConfigError("key 'sweep.variable' cannot be 'pendulum_detuning' for scatter sweep");
  }
  spec = resolve_grid(spec, opt.common);

  const auto values = grid(spec);
  const unsigned threads = sweep_thread_count();
  std::vector<TransmissionRow> rows;
  std::optional<std::pair<std::string, std::vector<double>>> leading;
  if (spec.variable == SweepVariable::probe_omega) {
    rows = transmission_sweep<double>(eff, values, threads);
  } else {
    if (!c.probe_omega) throw ConfigError("missing key 'probe_omega' for this sweep variable");
    const double omega = *c.probe_omega;
    rows.resize(values.size());
    parallel_for(values.size(), threads, [&](std::size_t k) {
      const EffectiveParams point = spec.variable == SweepVariable::detuning_common
                                        ? with_common_detuning(eff, values[k])
                                        : with_coupling_phase(eff, values[k]);
      const auto r = scattering_at(point, omega);
      rows[k] = {omega, r.t, r.stable};
    });
    leading.emplace(std::string(to_string(spec.variable)), values);
  }

  std::ostringstream text;
  if (resolve_format(opt.common, c, OutputFormat::csv) == OutputFormat::csv) {
    io::write_transmission_csv(text, rows, leading);
  } else {
    text << io::transmission_rows_to_json(rows, leading).dump(2) << '\n';
  }
  emit(text.str(), opt.common, c, out);

  for (const auto& row : rows) {
    if (!row.stable) return kUnstable;
  }
  return kOk;
}

// --- steady-state ---------------------------------------------------------

struct SteadyOptions {
  CommonOptions common;
  bool check_eq26 = false;
};

int steady_state(const SteadyOptions& opt, std::ostream& out) {
  RunConfig c = load_config(opt.common.config_path);
  if (!c.drives) throw ConfigError("missing key 'drives'");
  if (resolve_format(opt.common, c, OutputFormat::json) != OutputFormat::json) {
    throw ConfigError("steady-state only writes json");
  }
  const SteadyState ss = solve_steady_state(*c.drives, c.mode, c.solver);
  json result = io::to_json(ss);
  if (opt.check_eq26) result["eq26"] = io::to_json(check_large_detuning_phase(ss, *c.drives));
  emit(result.dump(2) + "\n", opt.common, c, out);
  return kOk;
}

// --- isolation find -------------------------------------------------------

struct IsolationOptions {
  CommonOptions common;
  std::string figure;
  bool from_drives = false;
  std::optional<double> theta;
  std::optional<double> refine_tol;
};

int isolation_find(const IsolationOptions& opt, std::ostream& out) {
  RunConfig c = load_config(opt.common.config_path);
  EffectiveParams eff;
  io::IsolationSettings settings = c.isolation;
  if (!opt.figure.empty()) {
    const double delta = opt.figure == "a" ? 8.0 : opt.figure == "b" ? 10.0 : 12.0;
    eff = symmetric_effective(delta, 0.5, 1.0, kPi / 2);
    settings.omega_min = delta - 5.0;
    settings.omega_max = delta + 5.0;
  } else {
    eff = effective_from_config(c, opt.from_drives);
  }
  if (opt.theta) eff = with_coupling_phase(eff, *opt.theta);
  if (opt.common.omega_min) settings.omega_min = opt.common.omega_min;
  if (opt.common.omega_max) settings.omega_max = opt.common.omega_max;
  if (opt.common.points) settings.points = *opt.common.points;
  if (opt.refine_tol) settings.refine_tol = *opt.refine_tol;
  if (!settings.omega_min || !settings.omega_max) {
    throw ConfigError("missing key 'isolation.omega_min'/'isolation.omega_max' (or --omega-min/--omega-max)");
  }
  if (resolve_format(opt.common, c, OutputFormat::json) != OutputFormat::json) {
    throw ConfigError("isolation find only writes json");
  }
  const auto r = find_isolation(eff, *settings.omega_min, *settings.omega_max, settings.points,
                                settings.refine_tol, sweep_thread_count());
  emit(io::to_json(r).dump(2) + "\n", opt.common, c, out);
  return kOk;
}

template <typename Fn>
int guarded(const Fn& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const NoExtremumError& e) {
    err << "error: " << e.what() << '\n';
    return kNoExtremum;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anti-resonance and optomechanical non-reciprocity simulator", "nonrecip"};
  app.require_subcommand(1);

  PendulumOptions pend;
  auto* pendulum = app.add_subcommand("pendulum", "Driven coupled pendulums");
  pendulum->require_subcommand(1);
  auto* pendulum_sweep_cmd = pendulum->add_subcommand("sweep", "Amplitude/phase spectrum vs detuning");
  add_common(pendulum_sweep_cmd, pend.common);
  add_grid(pendulum_sweep_cmd, pend.common);
  pendulum_sweep_cmd->add_option("--figure3", pend.figure, "Phase preset")
      ->check(CLI::IsMember({"a", "c", "e", "g"}));

  ScatterOptions scat;
  auto* scatter = app.add_subcommand("scatter", "Optomechanical scattering");
  scatter->require_subcommand(1);
  auto* scatter_sweep_cmd = scatter->add_subcommand("sweep", "Transmission table");
  add_common(scatter_sweep_cmd, scat.common);
  add_grid(scatter_sweep_cmd, scat.common);
  scatter_sweep_cmd->add_option("--figure5", scat.figure, "Coupling-phase preset")
      ->check(CLI::IsMember({"a", "b", "c", "d"}));
  scatter_sweep_cmd->add_flag("--from-drives", scat.from_drives,
                              "Derive effective parameters from the drive record");
  scatter_sweep_cmd->add_option("--theta", scat.theta, "Override coupling phase difference (rad)");

  SteadyOptions steady;
  auto* steady_cmd = app.add_subcommand("steady-state", "Mean-field steady state");
  add_common(steady_cmd, steady.common);
  steady_cmd->add_flag("--check-eq26", steady.check_eq26, "Report the large-detuning phase relation");

  IsolationOptions iso;
  auto* isolation = app.add_subcommand("isolation", "Isolation frequency");
  isolation->require_subcommand(1);
  auto* isolation_find_cmd = isolation->add_subcommand("find", "Locate maximum isolation");
  add_common(isolation_find_cmd, iso.common);
  add_grid(isolation_find_cmd, iso.common);
  isolation_find_cmd->add_option("--figure6", iso.figure, "Detuning preset")
      ->check(CLI::IsMember({"a", "b", "c"}));
  isolation_find_cmd->add_flag("--from-drives", iso.from_drives,
                               "Derive effective parameters from the drive record");
  isolation_find_cmd->add_option("--theta", iso.theta, "Override coupling phase difference (rad)");
  isolation_find_cmd->add_option("--refine-tol", iso.refine_tol, "Golden-section frequency tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  if (pendulum_sweep_cmd->parsed()) return guarded([&] { return pendulum_sweep(pend, out); }, err);
  if (scatter_sweep_cmd->parsed()) return guarded([&] { return scatter_sweep(scat, out); }, err);
  if (steady_cmd->parsed()) return guarded([&] { return steady_state(steady, out); }, err);
  if (isolation_find_cmd->parsed()) return guarded([&] { return isolation_find(iso, out); }, err);
  return kConfigError;
}

}  // namespace nonrecip::cli
