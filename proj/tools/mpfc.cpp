// Command-line front end: run, sweep, compare, plot, scenario-export.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpfc/config.hpp"
#include "mpfc/harness.hpp"
#include "mpfc/io.hpp"
#include "mpfc/plot.hpp"

namespace fs = std::filesystem;
using namespace mpfc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path output_root(const std::string& dir) {
  fs::path p(dir);
  if (p.is_relative()) {
    if (const char* root = std::getenv("MPFC_OUTPUT_ROOT"); root && *root) p = fs::path(root) / p;
  }
  return p;
}

RunConfig load_config(const std::string& path) {
  return path.empty() ? default_config() : parse_config_file(path);
}

nlohmann::json manifest(const RunConfig& c, const std::vector<std::uint64_t>& seeds, const std::string& command) {
  nlohmann::json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["config_hash"] = config_hash(c);
  m["scenario"] = c.experiment.scenario.name;
  m["architecture"] = to_string(c.experiment.control.architecture);
  m["master_seed"] = c.experiment.master_seed;
  m["n_sim"] = c.experiment.n_sim;
  m["seeds"] = seeds;
  m["single_run_ci"] = seeds.size() == 1;
  return m;
}

// Writes the series, aggregates, solve log and trajectories of one experiment.
void write_experiment(const fs::path& out, const RunConfig& c, const ExperimentResult& r) {
  fs::create_directories(out / "runs");
  for (std::size_t n = 0; n < r.runs.size(); ++n) {
    const std::string stem = "run_" + std::to_string(n);
    write_file_atomic(out / "runs" / (stem + "_j.csv"), series_csv(r.runs[n].j_series));
    write_file_atomic(out / "runs" / (stem + "_trajectory.csv"), trajectory_csv(r.runs[n].trajectory));
    write_file_atomic(out / "runs" / (stem + "_solves.jsonl"),
                      solve_log_jsonl(r.runs[n].solves, c.experiment.control.architecture));
  }
  write_file_atomic(out / "aggregate_j.csv", aggregate_csv(r.summary.j));
  write_file_atomic(out / "aggregate_t_opt.csv", aggregate_csv(r.summary.t_opt));
  nlohmann::json m = manifest(c, r.seeds, "run");
  m["mean_j"] = r.summary.mean_j;
  m["mean_j_ci_half"] = r.summary.mean_j_half;
  m["mean_t_opt"] = r.summary.mean_t_opt;
  write_file_atomic(out / "manifest.json", m.dump(2) + "\n");
  write_file_atomic(out / "config.txt", serialize_config(c));
}

HookFactory hooks_for(const RunConfig& c, const fs::path& out) {
  const bool frames = c.emit_fire_frames;
  return [frames, out](int run, std::uint64_t) {
    RunHooks h;
    h.record_trajectory = true;
    if (frames) {
      const fs::path dir = out / "fire" / ("run_" + std::to_string(run));
      fs::create_directories(dir);
      h.on_fire_frame = [dir](long k, const FireGrid& fire) {
        write_file_atomic(dir / ("frame_" + std::to_string(k) + ".csv"), fire_frame_csv(fire));
      };
    }
    return h;
  };
}

int cmd_run(const RunConfig& c) {
  const fs::path out = output_root(c.output_dir);
  fs::create_directories(out);
  const ExperimentResult r = run_experiment(c.experiment, hooks_for(c, out));
  write_experiment(out, c, r);
  std::cout << "mean J " << format_double(r.summary.mean_j) << " +- " << format_double(r.summary.mean_j_half)
            << " over " << r.summary.runs << " run(s); output in " << out.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& c, const std::string& parameter, const std::vector<std::string>& values) {
  SweepParameter p;
  try {
    p = parse_sweep_parameter(parameter);
    for (const auto& v : values) apply_sweep_value(c.experiment, p, v).control.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--parameter", 0, e.what());
  }
  const fs::path out = output_root(c.output_dir);
  fs::create_directories(out);
  const SweepResult r = sweep(p, values, c.experiment);
  write_file_atomic(out / ("sweep_" + parameter + ".csv"), sweep_csv(r));
  nlohmann::json m = manifest(c, seed_sequence(c.experiment.n_sim, c.experiment.master_seed), "sweep");
  m["parameter"] = parameter;
  m["values"] = values;
  m["fit"] = {{"slope", r.fit.slope}, {"intercept", r.fit.intercept}, {"degenerate", r.fit.degenerate}};
  write_file_atomic(out / ("sweep_" + parameter + "_manifest.json"), m.dump(2) + "\n");
  std::cout << sweep_csv(r);
  return kExitOk;
}

int cmd_compare(RunConfig c, const std::vector<std::string>& names) {
  std::vector<Architecture> archs;
  try {
    for (const auto& n : names) archs.push_back(parse_architecture(n));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--architectures", 0, e.what());
  }
  const fs::path out = output_root(c.output_dir);
  fs::create_directories(out);
  std::map<Architecture, ExperimentResult> results;
  for (Architecture a : archs) {
    RunConfig ca = c;
    ca.experiment.control.architecture = a;
    const fs::path dir = out / to_string(a);
    results[a] = run_experiment(ca.experiment, hooks_for(ca, dir));
    write_experiment(dir, ca, results[a]);
  }
  std::string table = "architecture,mean_j,ci_half,percent_vs_flc,mean_t_opt\n";
  const auto base = results.find(Architecture::PretunedFlc);
  for (Architecture a : archs) {
    const Aggregate& s = results[a].summary;
    std::string pct = "";
    if (base != results.end()) {
      if (auto d = percent_difference(s.mean_j, base->second.summary.mean_j)) pct = format_double(*d);
    }
    table += to_string(a) + "," + format_double(s.mean_j) + "," + format_double(s.mean_j_half) + "," + pct + "," +
             format_double(s.mean_t_opt) + "\n";
  }
  write_file_atomic(out / "comparison.csv", table);
  std::cout << table;
  return kExitOk;
}

int cmd_plot(const std::vector<std::string>& series, const std::string& sweep_path, const std::string& arch,
             const std::string& output, const std::string& title) {
  PlotOptions o;
  o.title = title;
  std::string svg;
  if (!sweep_path.empty()) {
    const SweepTable t = parse_sweep_csv(read_file(sweep_path));
    o.x_label = "parameter";
    o.y_label = "mean J";
    svg = render_sweep_plot(t, parse_architecture(arch), o);
  } else {
    if (series.empty()) throw UsageError("plot needs at least one ARCH=CSV series or --sweep");
    std::vector<PlotSeries> ps;
    for (const auto& s : series) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("series must be ARCH=CSV, got '" + s + "'");
      PlotSeries p;
      p.label = s.substr(0, eq);
      p.architecture = parse_architecture(p.label);
      p.data = parse_aggregate_csv(read_file(s.substr(eq + 1)));
      ps.push_back(std::move(p));
    }
    svg = render_line_plot(ps, o);
  }
  const fs::path out = output_root(output);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_file_atomic(out, svg);
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

int cmd_export(const RunConfig& c, long run_index) {
  const auto seeds = seed_sequence(static_cast<int>(std::max<long>(run_index + 1, 1)), c.experiment.master_seed);
  const std::uint64_t seed = seeds[static_cast<std::size_t>(run_index)];
  const Scenario s = build_scenario(c.experiment.scenario, seed);
  const fs::path out = output_root(c.output_dir) / "scenario";
  fs::create_directories(out);
  const CoarseningSpec cs{c.experiment.scenario.coarsening};
  write_file_atomic(out / "structure.csv", matrix_to_csv(s.env.structure));
  write_file_atomic(out / "debris.csv", matrix_to_csv(s.env.debris));
  write_file_atomic(out / "occupancy.csv", matrix_to_csv(s.env.occupancy));
  write_file_atomic(out / "victim_probability.csv", matrix_to_csv(s.env.victim_prob));
  write_file_atomic(out / "victims.csv", matrix_to_csv(s.env.perceived_victims));
  write_file_atomic(out / "wind_speed.csv", matrix_to_csv(s.env.wind_speed));
  write_file_atomic(out / "wind_dir.csv", matrix_to_csv(s.env.wind_dir));
  write_file_atomic(out / "fire.csv", fire_frame_csv(s.fire));
  write_file_atomic(out / "coarse_victim_estimate.csv",
                    matrix_to_csv(coarsen(estimated_victims(s.env, c.experiment.scenario.env), cs, Pooling::Mean)));
  std::string robots = "r,i,j\n";
  for (const auto& r : s.robots) {
    robots += std::to_string(r.id) + "," + std::to_string(r.position.i) + "," + std::to_string(r.position.j) + "\n";
  }
  write_file_atomic(out / "robots.csv", robots);
  nlohmann::json m = manifest(c, {seed}, "scenario-export");
  write_file_atomic(out / "manifest.json", m.dump(2) + "\n");
  std::cout << "exported " << c.experiment.scenario.name << " (seed " << seed << ") to " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search-and-rescue robot simulator with predictive fuzzy control"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::string output_dir;
  int n_sim = 0;
  int jobs = -1;
  std::string seed;
  std::string architecture;
  bool fire_frames = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "Config file (key: value lines); defaults when omitted");
    sub->add_option("-o,--output", output_dir, "Output directory (relative paths honour MPFC_OUTPUT_ROOT)");
    sub->add_option("-n,--n-sim", n_sim, "Number of seeded runs (overrides run.n_sim)");
    sub->add_option("-j,--jobs", jobs, "Parallel runs; 0 means one per seed (overrides run.jobs)");
    sub->add_option("-s,--seed", seed, "Master seed (overrides run.master_seed)");
    sub->add_option("-a,--architecture", architecture, "Architecture (overrides control.architecture)");
  };

  auto* run = app.add_subcommand("run", "Run seeded simulations and write series, aggregates and logs");
  common(run);
  run->add_flag("--emit-fire-frames", fire_frames, "Write one fire-state CSV per global step");

  auto* sw = app.add_subcommand("sweep", "Sensitivity sweep over one parameter");
  common(sw);
  std::string parameter;
  std::vector<std::string> values;
  sw->add_option("-p,--parameter", parameter,
                 "robots, env_size, t_ctrl, horizon, r_local, prediction_mode or architecture")
      ->required();
  sw->add_option("-v,--values", values, "Values to sweep")->required()->delimiter(',');

  auto* cmp = app.add_subcommand("compare", "Run several architectures on shared seeds");
  common(cmp);
  std::vector<std::string> archs{"pretuned-flc", "centralised-mpfc", "decentralised-mpfc", "centralised-mpc",
                                 "decentralised-mpc"};
  cmp->add_option("--architectures", archs, "Architectures to compare")->delimiter(',');

  auto* plot = app.add_subcommand("plot", "Render aggregate or sweep CSVs as SVG");
  std::vector<std::string> series;
  std::string sweep_path, plot_arch = "centralised-mpfc", plot_out = "plot.svg", title;
  plot->add_option("series", series, "ARCH=aggregate.csv entries");
  plot->add_option("--sweep", sweep_path, "Sweep CSV to plot with error bars and trend line");
  plot->add_option("--sweep-architecture", plot_arch, "Architecture colouring for --sweep");
  plot->add_option("-o,--output", plot_out, "SVG path");
  plot->add_option("--title", title, "Plot title");

  auto* exp = app.add_subcommand("scenario-export", "Write the initial matrices of a scenario as CSV");
  common(exp);
  long run_index = 0;
  exp->add_option("--run", run_index, "Index into the seed sequence")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (plot->parsed()) return cmd_plot(series, sweep_path, plot_arch, plot_out, title);

    RunConfig c = load_config(config_path);
    try {
      if (!output_dir.empty()) c.output_dir = output_dir;
      if (n_sim > 0) c.experiment.n_sim = n_sim;
      if (jobs >= 0) c.experiment.jobs = jobs;
      if (!seed.empty()) c.experiment.master_seed = std::stoull(seed);
      if (!architecture.empty()) c.experiment.control.architecture = parse_architecture(architecture);
      if (fire_frames) c.emit_fire_frames = true;
      c.experiment.control.validate();
    } catch (const std::exception& e) {
      throw ConfigError("command line", 0, e.what());
    }

    if (run->parsed()) return cmd_run(c);
    if (sw->parsed()) return cmd_sweep(c, parameter, values);
    if (cmp->parsed()) return cmd_compare(c, archs);
    if (exp->parsed()) return cmd_export(c, run_index);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
