#include "eitlab/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "eitlab/analysis.hpp"
#include "eitlab/dynamics.hpp"
#include "eitlab/presets.hpp"

namespace eitlab {

namespace {

const std::vector<std::string> kCommands = {"sweep", "windows", "vg",
                                            "evolve", "ramp", "preset-list"};

std::vector<ProvenanceEntry> provenance(std::string_view command,
                                        const RunConfig& cfg) {
  return {{"tool", std::string(kToolName) + " " + std::string(kToolVersion)},
          {"command", std::string(command)},
          {"preset", cfg.preset.value_or("none")},
          {"config", emit_config(cfg), true}};
}

std::vector<std::string> response_columns(SweepAxis axis) {
  std::vector<std::string> cols;
  if (axis != SweepAxis::probe_detuning) cols.emplace_back(axis_column(axis));
  for (const char* c : {"delta_p", "chi1", "chi2", "chi1_norm", "chi2_norm", "n1",
                        "n2", "vg_exact", "vg_eit", "eit_valid"})
    cols.emplace_back(c);
  return cols;
}

OutputTable sweep_table(const RunConfig& cfg, unsigned threads) {
  OutputTable t;
  t.columns = response_columns(cfg.grid.axis);
  for (const auto& row : sweep_response(cfg.medium, cfg.control, cfg.grid,
                                        cfg.delta_p, threads)) {
    const auto& r = row.response;
    std::vector<Cell> cells;
    if (cfg.grid.axis != SweepAxis::probe_detuning) cells.emplace_back(row.axis_value);
    for (double v : {r.delta_p, r.chi.real(), r.chi.imag(), r.chi_norm.real(),
                     r.chi_norm.imag(), r.n.real(), r.n.imag()})
      cells.emplace_back(v);
    cells.push_back(velocity_cell(r.vg_exact));
    cells.push_back(velocity_cell(r.vg_eit));
    cells.emplace_back(r.eit_valid);
    t.add_row(std::move(cells));
  }
  return t;
}

OutputTable windows_table(const RunConfig& cfg, unsigned threads) {
  if (cfg.grid.axis != SweepAxis::probe_detuning)
    throw ConfigError({"grid.axis: the windows command needs a probe_detuning grid"});
  if (cfg.grid.count < 100)
    throw ConfigError({"grid.count: the windows command needs at least 100 points"});
  const auto table = sweep_response(cfg.medium, cfg.control, cfg.grid, cfg.delta_p, threads);
  const auto windows = find_windows(cfg.medium, cfg.control, table, cfg.threshold_fraction);
  const double scale = susceptibility_scale(cfg.medium);
  OutputTable t;
  t.columns = {"center", "left_edge", "right_edge", "width",
               "min_chi2", "min_chi2_norm", "slope_chi1_at_center"};
  for (const auto& w : windows)
    t.add_row({w.center, w.left_edge, w.right_edge, w.width, w.min_chi2,
               w.min_chi2 / scale, w.slope_chi1_at_center});
  return t;
}

OutputTable vg_table(const RunConfig& cfg, unsigned threads) {
  OutputTable t;
  t.columns = {std::string(axis_column(cfg.grid.axis)), "vg_eit", "vg_exact", "eit_valid"};
  for (const auto& r : vg_curve(cfg.medium, cfg.control, cfg.grid, cfg.delta_p, threads))
    t.add_row({r.axis_value, velocity_cell(r.vg_eit), velocity_cell(r.vg_exact), r.eit_valid});
  return t;
}

OutputTable evolve_table(const RunConfig& cfg, std::vector<ProvenanceEntry>& extra) {
  require_valid(cfg.medium);
  require_valid(cfg.control);
  const auto& ev = cfg.evolve;
  EvolveOptions opts;
  opts.t_end = ev.t_end.value_or(convergence_horizon(cfg.medium, cfg.control, cfg.delta_p));
  opts.tol = ev.tol;
  opts.output_interval = opts.t_end / static_cast<double>(ev.samples);
  const MeanFieldState start{ev.initial_a, ev.initial_c1, ev.initial_c2, ev.drive, 0.0};
  const auto traj = evolve(start, cfg.medium, cfg.control, cfg.delta_p, opts);

  extra.push_back({"t_end", format_number(opts.t_end)});
  extra.push_back({"steps_accepted", std::to_string(traj.steps_accepted)});
  extra.push_back({"steps_rejected", std::to_string(traj.steps_rejected)});
  extra.push_back({"max_error_estimate", format_number(traj.max_error_estimate)});

  OutputTable t;
  t.columns = {"t", "A_re", "A_im", "C1_re", "C1_im", "C2_re", "C2_im"};
  for (const auto& s : traj.samples)
    t.add_row({s.time, s.mean_a_op.real(), s.mean_a_op.imag(), s.mean_c1.real(),
               s.mean_c1.imag(), s.mean_c2.real(), s.mean_c2.imag()});
  return t;
}

OutputTable ramp_table(const RunConfig& cfg) {
  OutputTable t;
  t.columns = {"t", "omega_1", "omega_2", "vg_eit"};
  for (const auto& r : storage_ramp(cfg.medium, cfg.ramp.schedule, cfg.delta_p,
                                    cfg.ramp.samples))
    t.add_row({r.time, r.omega_1, r.omega_2, velocity_cell(r.vg_eit)});
  return t;
}

OutputTable preset_table() {
  OutputTable t;
  t.columns = {"name", "command", "axis", "description"};
  for (const auto& p : presets())
    t.add_row({p.name, p.command, std::string(to_string(p.grid.axis)), p.description});
  return t;
}

void report(std::ostream& err, const std::vector<std::string>& issues) {
  for (const auto& i : issues) err << "error: " << i << '\n';
}

}  // namespace

OutputTable build_table(std::string_view command, const RunConfig& cfg,
                        unsigned threads) {
  std::vector<ProvenanceEntry> extra;
  OutputTable t;
  if (command == "sweep")
    t = sweep_table(cfg, threads);
  else if (command == "windows")
    t = windows_table(cfg, threads);
  else if (command == "vg")
    t = vg_table(cfg, threads);
  else if (command == "evolve")
    t = evolve_table(cfg, extra);
  else if (command == "ramp")
    t = ramp_table(cfg);
  else if (command == "preset-list")
    t = preset_table();
  else
    throw ConfigError({"command: unknown command '" + std::string(command) + "'"});
  t.provenance = provenance(command, cfg);
  t.provenance.insert(t.provenance.end(), extra.begin(), extra.end());
  return t;
}

int run(std::string_view command, const RunConfig& cfg, unsigned threads,
        std::ostream& out, std::ostream& err) {
  OutputTable table;
  try {
    table = build_table(command, cfg, threads);
  } catch (const ConfigError& e) {
    report(err, e.issues());
    return kExitValidation;
  } catch (const ValidationError& e) {
    report(err, e.issues());
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::ostringstream buf;
  if (cfg.output.format == OutputFormat::json)
    write_json(buf, table);
  else
    write_csv(buf, table);

  if (cfg.output.path.empty()) {
    out << buf.str();
    return kExitOk;
  }
  std::ofstream file(cfg.output.path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << buf.str()) || !file.flush()) {
    err << "error: cannot write output file '" << cfg.output.path << "'\n";
    return kExitValidation;
  }
  return kExitOk;
}

std::optional<unsigned> parse_thread_count(std::string_view text) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || value == 0) return std::nullopt;
  return value;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Probe dispersion in an ensemble of \"3+1\"-level atoms", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1, 1);

  std::string config_path, preset_name, out_path, format_name;
  for (const auto& name : kCommands) {
    auto* sub = app.add_subcommand(name);
    auto* cfg_opt = sub->add_option("--config", config_path, "JSON run configuration");
    auto* preset_opt = sub->add_option("--preset", preset_name, "named figure preset");
    cfg_opt->excludes(preset_opt);
    sub->add_option("--out", out_path, "output file (default: standard output)");
    sub->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  unsigned threads = default_threads();
  if (const char* env = std::getenv("EITLAB_THREADS"); env && *env) {
    const auto parsed = parse_thread_count(env);
    if (!parsed) {
      err << "error: EITLAB_THREADS must be a positive integer (got '" << env << "')\n";
      return kExitValidation;
    }
    threads = *parsed;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) {
        err << "error: cannot read config file '" << config_path << "'\n";
        return kExitValidation;
      }
      std::ostringstream text;
      text << in.rdbuf();
      cfg = parse_config(text.str());
    } else if (!preset_name.empty()) {
      cfg = config_from_preset(preset_name);
    }
  } catch (const ConfigError& e) {
    report(err, e.issues());
    return kExitValidation;
  }
  if (!out_path.empty()) cfg.output.path = out_path;
  if (!format_name.empty()) cfg.output.format = *parse_format(format_name);

  return run(command, cfg, threads, out, err);
}

}  // namespace eitlab
