// Acceptance checks, one line per criterion. Exit status is non-zero when any
// criterion fails. Pass --quick to shrink the scenario-scale criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mpfc/fire.hpp"
#include "mpfc/fuzzy.hpp"
#include "mpfc/harness.hpp"
#include "mpfc/optim.hpp"
#include "mpfc/predictive.hpp"
#include "mpfc/rng.hpp"
#include "mpfc/scenarios.hpp"

using namespace mpfc;

namespace {

bool g_quick = false;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

Experiment experiment(const std::string& scenario, Architecture a, int robots = -1) {
  Experiment e;
  e.scenario = preset(scenario);
  if (robots > 0) e.scenario.robots = robots;
  e.control.architecture = a;
  e.n_sim = g_quick ? 2 : 5;
  e.master_seed = 1;
  e.jobs = 1;  // solve times are compared, so runs must not share the machine
  if (g_quick) e.control.sim_time = 1500;
  return e;
}

Aggregate run(const std::string& scenario, Architecture a, int robots = -1) {
  return run_experiment(experiment(scenario, a, robots)).summary;
}

double pct(double x, double base) { return 100.0 * (x - base) / base; }

Outcome criterion1() {
  const Aggregate flc = run("small-static", Architecture::PretunedFlc);
  const Aggregate mpfc = run("small-static", Architecture::CentralisedMpfc);
  const Aggregate mpc = run("small-static", Architecture::CentralisedMpc);
  Outcome o;
  const bool order_a = mpc.mean_j <= mpfc.mean_j;
  const bool order_b = mpfc.mean_j <= flc.mean_j;
  const bool margin = mpfc.mean_j <= 0.98 * flc.mean_j;
  o.pass = order_a && order_b && margin;
  o.detail = "mean J: MPC " + fmt(mpc.mean_j) + " (" + fmt(pct(mpc.mean_j, flc.mean_j)) + "%), MPFC " +
             fmt(mpfc.mean_j) + " (" + fmt(pct(mpfc.mean_j, flc.mean_j)) + "%), FLC " + fmt(flc.mean_j) +
             "; MPC<=MPFC " + (order_a ? "yes" : "no") + ", MPFC<=FLC " + (order_b ? "yes" : "no") +
             ", MPFC >=2% below FLC " + (margin ? "yes" : "no");
  return o;
}

Outcome criterion2() {
  const Aggregate flc = run("small-dynamic", Architecture::PretunedFlc);
  const Aggregate mpfc = run("small-dynamic", Architecture::CentralisedMpfc);
  const Aggregate mpc = run("small-dynamic", Architecture::CentralisedMpc);
  Outcome o;
  const bool margin = mpfc.mean_j <= 0.98 * flc.mean_j;
  const bool faster = mpfc.mean_t_opt < mpc.mean_t_opt;
  o.pass = margin && faster;
  o.detail = "mean J: MPFC " + fmt(mpfc.mean_j) + " vs FLC " + fmt(flc.mean_j) + " (" +
             fmt(pct(mpfc.mean_j, flc.mean_j)) + "%, need <= -2%); mean solve time MPFC " +
             fmt(mpfc.mean_t_opt, 4) + " s vs MPC " + fmt(mpc.mean_t_opt, 4) + " s (need MPFC < MPC)";
  return o;
}

Outcome criterion3() {
  const Aggregate flc = run("small-dynamic", Architecture::PretunedFlc, 4);
  const Aggregate cen = run("small-dynamic", Architecture::CentralisedMpfc, 4);
  const Aggregate dec = run("small-dynamic", Architecture::DecentralisedMpfc, 4);
  Outcome o;
  o.pass = dec.mean_j <= cen.mean_j + cen.mean_j_half;
  o.detail = "4 robots: decentralised " + fmt(dec.mean_j) + " +- " + fmt(dec.mean_j_half) + " (" +
             fmt(pct(dec.mean_j, flc.mean_j)) + "% vs FLC), centralised " + fmt(cen.mean_j) + " +- " +
             fmt(cen.mean_j_half) + " (" + fmt(pct(cen.mean_j, flc.mean_j)) + "% vs FLC)";
  return o;
}

Outcome criterion4() {
  Outcome o;
  int failures = 0;
  const FireModelParams p;
  // 5 and 30 put the breakpoint on an integer step.
  failures += std::abs(fire_ability(p.k_2min, 0, p.k_2min, p.k_10min) - 0.2) > 1e-9;
  failures += std::abs(fire_ability(10, 0, 5, 30) - 1.0) > 1e-9;
  failures += std::abs(fire_ability(p.k_10min, 0, p.k_2min, p.k_10min) - 0.0) > 1e-9;

  // Fuzz: random wind and structure, stochastic ignitions.
  Rng rng(404);
  FireModelParams fp;
  fp.alpha2 = 0.0;  // keep probabilities below the clamp so draws matter
  const int n = 16;
  EnvironmentState env;
  env.geometry = GridGeometry{n, n, 10.0, 10.0};
  env.structure = RealGrid(n, n);
  env.occupancy = RealGrid(n, n, 0.5);
  env.wind_speed = RealGrid(n, n);
  env.wind_dir = RealGrid(n, n);
  FireGrid f(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      env.structure(i, j) = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.3, 1.0);
      env.wind_speed(i, j) = rng.uniform(0.0, 7.0);
      env.wind_dir(i, j) = rng.uniform(-3.14159, 3.14159);
      if (env.structure(i, j) == 0.0) f.state(i, j) = FireState::NonFlammable;
    }
  f.state(n / 2, n / 2) = FireState::Burning;
  f.ignition_step(n / 2, n / 2) = -fp.k_2min;
  int skips = 0, burnouts = 0, bad_duration = 0;
  for (long k = 1; k <= 1000; ++k) {
    const FireGrid prev = f;
    step_fire_in_place(f, env, fp, k, IgnitionMode::Stochastic, 77);
    for (std::size_t c = 0; c < f.state.size(); ++c) {
      const int a = static_cast<int>(prev.state.data()[c]);
      const int b = static_cast<int>(f.state.data()[c]);
      if (!(b == a || (b == a + 1 && a >= 1 && a <= 3))) ++skips;
      if (a == 3 && b == 4) {
        ++burnouts;
        if (k - f.ignition_step.data()[c] != fp.k_10min) ++bad_duration;
      }
    }
  }
  o.pass = failures == 0 && skips == 0 && bad_duration == 0 && burnouts > 0;
  o.detail = "analytic points " + std::to_string(3 - failures) + "/3, illegal transitions " + std::to_string(skips) +
             " over 1000 steps, burnouts " + std::to_string(burnouts) + " with " + std::to_string(bad_duration) +
             " wrong durations";
  return o;
}

double oracle_tsk(const Theta& th, const FlcInputs& x) {
  const double v[3][3] = {{0, 0, 0.5}, {0, 0.5, 1}, {0.5, 1, 1}};
  auto tri = [](double z, double a, double b, double c) {
    if (z < a || z > c) return 0.0;
    if (z == b) return 1.0;
    if (z < b) return b > a ? (z - a) / (b - a) : 1.0;
    return c > b ? (c - z) / (c - b) : 1.0;
  };
  double num = 0, den = 0;
  for (int r = 0; r < 3; ++r) {
    double w = 0.0;
    for (double xi : x) w = std::max(w, tri(xi, v[r][0], v[r][1], v[r][2]));
    double out = th[static_cast<std::size_t>(5 * r + 4)];
    for (int q = 0; q < 4; ++q) out += th[static_cast<std::size_t>(5 * r + q)] * x[static_cast<std::size_t>(q)];
    num += w * out;
    den += w;
  }
  return den > 0 ? num / den : 0.0;
}

Outcome criterion5() {
  Outcome o;
  std::ostringstream d;

  // Attraction map on a 6x6 coarse grid against per-cell evaluation.
  {
    Rng rng(55);
    FlcView v;
    v.grid = GridGeometry{6, 6, 50.0, 50.0};
    v.victim = RealGrid(6, 6);
    v.risk = RealGrid(6, 6);
    v.scan.assign(1, RealGrid(6, 6));
    v.wind_speed = RealGrid(6, 6);
    v.wind_dir = RealGrid(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        v.victim(i, j) = rng.uniform();
        v.risk(i, j) = rng.uniform(0, 100);
        v.scan[0](i, j) = rng.uniform();
        v.wind_speed(i, j) = rng.uniform(0, 2);
        v.wind_dir(i, j) = rng.uniform(-3, 3);
      }
    v.t_response_max = response_time_max(v.grid, 5.0, {2.0, 0.0}, 25.0);
    int mismatches = 0, cells = 0;
    for (int trial = 0; trial < 50; ++trial) {
      FuzzyController flc;
      for (double& t : flc.theta) t = rng.uniform(-1, 1);
      RobotState r;
      r.position = {static_cast<int>(rng.uniform_int(0, 5)), static_cast<int>(rng.uniform_int(0, 5))};
      r.task = trial % 2 ? Task::Scan : Task::Travel;
      r.target = {static_cast<int>(rng.uniform_int(0, 5)), static_cast<int>(rng.uniform_int(0, 5))};
      r.t_scan = 10;
      r.t_travel = 20;
      const AttractionMap a = attraction_map(flc, r, v);
      std::vector<Cell> feas;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          if (std::hypot((i - r.position.i) * 50.0, (j - r.position.j) * 50.0) <= r.params.v_max * v.t_ctrl)
            feas.push_back({i, j});
      const MeanWind w = mean_wind(v.wind_speed, v.wind_dir, feas);
      for (const Cell c : feas) {
        const auto x = compute_inputs(r, c, v, w);
        if (!x) continue;
        ++cells;
        if (!a.feasible[c] || a.value[c] != oracle_tsk(flc.theta, *x)) ++mismatches;
      }
    }
    d << "attraction " << cells - mismatches << "/" << cells << " exact";
    o.pass = o.pass && mismatches == 0 && cells > 0;
  }

  // Queue length 1 on a 3x3 coarse grid against the nine possible queues.
  {
    ScenarioSpec spec = preset("small-dynamic");
    spec.nh = spec.nv = 15;
    spec.robots = 1;
    PredictiveConfig cfg;
    cfg.architecture = Architecture::CentralisedMpc;
    cfg.queue_length = 1;
    int agree = 0;
    const int seeds = 5;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
      const Scenario sc = build_scenario(spec, seed);
      const ModelContext ctx = make_context(sc, cfg);
      const SimState s0 = initial_state(sc, cfg);
      const ControllerView v0 = build_view(s0, ctx);
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Decision dec;
          dec.queues = std::vector<std::vector<Cell>>{{Cell{i, j}}};
          best = std::min(best, predict(s0, v0, dec, ctx, cfg.horizon, cfg.prediction_mode, fire_seed(seed)).total);
        }
      const QueueResult q = tune_mpc(s0, v0, ctx, cfg, fire_seed(seed), seed, 0);
      agree += q.stats.front().best_j == best;
    }
    d << ", GA vs brute force " << agree << "/" << seeds;
    o.pass = o.pass && agree == seeds;
  }

  // Exact-mode prediction from the initial state against the realised plant.
  {
    const Scenario sc = build_scenario(preset("small-dynamic"), 9);
    PredictiveConfig cfg;
    cfg.architecture = Architecture::PretunedFlc;
    cfg.sim_time = 1500;
    const RunResult plant = run_architecture(cfg, sc, 9);
    const ModelContext ctx = make_context(sc, cfg);
    const SimState s0 = initial_state(sc, cfg);
    const Prediction p = predict(s0, build_view(s0, ctx), Decision{}, ctx, cfg.total_steps(), PredictionMode::Exact,
                                 fire_seed(9));
    double worst = 0.0;
    for (std::size_t k = 0; k < plant.j_series.size(); ++k) worst = std::max(worst, std::abs(p.j[k] - plant.j_series[k]));
    d << ", exact prediction max |dJ| " << worst << " over " << plant.j_series.size() << " steps";
    o.pass = o.pass && p.j.size() == plant.j_series.size() && worst == 0.0;
  }
  o.detail = d.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  // Radius covering the whole coarse grid.
  Experiment global = experiment("small-static", Architecture::CentralisedMpfc);
  Experiment wide = global;
  wide.control.r_local = 8;
  const ExperimentResult g = run_experiment(global);
  const ExperimentResult w = run_experiment(wide);
  bool identical = true;
  for (std::size_t n = 0; n < g.runs.size(); ++n) identical = identical && g.runs[n].j_series == w.runs[n].j_series;

  Experiment local = global;
  local.control.r_local = 5;
  const ExperimentResult l = run_experiment(local);
  const bool faster = l.summary.mean_t_opt < g.summary.mean_t_opt;
  o.pass = identical && faster;
  o.detail = std::string("r_local=8 J series ") + (identical ? "identical" : "differ") +
             " to global; mean solve time r_local=5 " + fmt(l.summary.mean_t_opt, 4) + " s vs global " +
             fmt(g.summary.mean_t_opt, 4) + " s (mean J " + fmt(l.summary.mean_j) + " vs " +
             fmt(g.summary.mean_j) + ")";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const SeriesStats s = series_stats({{1.0, 10.0}, {3.0, 14.0}, {2.0, 12.0}});
  // Hand values: step 1 mean 2, sd 1, SEM 1/sqrt(3); step 2 mean 12, sd 2.
  const double sem1 = 1.0 / std::sqrt(3.0), sem2 = 2.0 / std::sqrt(3.0);
  double err = 0.0;
  err = std::max(err, std::abs(s.mean[0] - 2.0));
  err = std::max(err, std::abs(s.mean[1] - 12.0));
  err = std::max(err, std::abs(s.ci_lo[0] - (2.0 - 1.96 * sem1)));
  err = std::max(err, std::abs(s.ci_hi[1] - (12.0 + 1.96 * sem2)));
  const SeriesStats pair = series_stats({{1.0}, {3.0}});
  err = std::max(err, std::abs(pair.ci_lo[0] - 0.04));
  err = std::max(err, std::abs(pair.ci_hi[0] - 3.96));

  const SeriesStats same = series_stats({{5, 6, 7}, {5, 6, 7}, {5, 6, 7}});
  double width = 0.0;
  for (std::size_t k = 0; k < 3; ++k) width = std::max(width, same.ci_hi[k] - same.ci_lo[k]);

  const auto norm = normalise_against_baseline({9.0, 45.0}, {10.0, 50.0});
  const double minus10 = std::max(std::abs(*norm[0] + 10.0), std::abs(*norm[1] + 10.0));

  o.pass = err <= 1e-12 && width == 0.0 && minus10 <= 1e-12;
  std::ostringstream d;
  d << "max stat error " << err << ", identical-run CI width " << width << ", normalisation error " << minus10;
  o.detail = d.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  Experiment e = experiment("small-dynamic", Architecture::CentralisedMpfc);
  e.n_sim = 2;
  e.control.sim_time = 1500;
  e.jobs = 2;
  const ExperimentResult a = run_experiment(e);
  const ExperimentResult b = run_experiment(e);
  bool same = aggregate_csv(a.summary.j) == aggregate_csv(b.summary.j);
  for (std::size_t n = 0; n < a.runs.size(); ++n) same = same && series_csv(a.runs[n].j_series) == series_csv(b.runs[n].j_series);

  Experiment d1 = experiment("small-dynamic", Architecture::DecentralisedMpfc, 3);
  d1.n_sim = 2;
  d1.control.sim_time = 1500;
  Experiment d2 = d1;
  d2.control.solve_order = {2, 0, 1};
  Experiment d3 = d1;
  d3.control.solve_order = {1, 2, 0};
  const ExperimentResult r1 = run_experiment(d1), r2 = run_experiment(d2), r3 = run_experiment(d3);
  bool perm = true;
  for (std::size_t n = 0; n < r1.runs.size(); ++n) {
    perm = perm && series_csv(r1.runs[n].j_series) == series_csv(r2.runs[n].j_series) &&
           series_csv(r1.runs[n].j_series) == series_csv(r3.runs[n].j_series) &&
           r1.runs[n].final_theta == r2.runs[n].final_theta && r1.runs[n].final_theta == r3.runs[n].final_theta;
  }
  o.pass = same && perm;
  o.detail = std::string("rerun J CSVs ") + (same ? "byte-identical" : "differ") + ", permuted solve orders " +
             (perm ? "identical" : "differ");
  return o;
}

Outcome criterion9() {
  Outcome o;
  Rng rng(9090);
  int over = 0, nonmono = 0, outside = 0;
  for (int n = 0; n < 1000; ++n) {
    const int dim = static_cast<int>(rng.uniform_int(1, 15));
    std::vector<double> lo(dim), hi(dim), x0(dim), c(dim);
    for (int q = 0; q < dim; ++q) {
      lo[q] = rng.uniform(-2, 0);
      hi[q] = lo[q] + rng.uniform(0.05, 3);
      x0[q] = rng.uniform(lo[q], hi[q]);
      c[q] = rng.uniform(-3, 3);
    }
    const int budget = static_cast<int>(rng.uniform_int(0, 100));
    int calls = 0;
    auto f = [&](const std::vector<double>& x) {
      ++calls;
      double s = 0;
      for (int q = 0; q < dim; ++q) {
        if (x[q] < lo[q] || x[q] > hi[q]) ++outside;
        s += std::cos(5 * x[q]) + std::abs(x[q] - c[q]);
      }
      return s;
    };
    PatternSearchOptions ps;
    ps.budget.max_evaluations = budget;
    const auto r = pattern_search(f, x0, lo, hi, ps);
    over += calls > budget;
    for (std::size_t k = 1; k < r.best_so_far.size(); ++k) nonmono += r.best_so_far[k] > r.best_so_far[k - 1];

    std::vector<int> ilo(dim), ihi(dim);
    for (int q = 0; q < dim; ++q) {
      ilo[q] = 1;
      ihi[q] = static_cast<int>(rng.uniform_int(1, 8));
    }
    int icalls = 0;
    GeneticOptions go;
    go.budget.max_evaluations = budget;
    go.population = static_cast<int>(rng.uniform_int(2, 100));
    go.seed = rng.next();
    const auto g = genetic_algorithm(
        [&](const std::vector<int>& x) {
          ++icalls;
          double s = 0;
          for (int q = 0; q < dim; ++q) {
            if (x[q] < ilo[q] || x[q] > ihi[q]) ++outside;
            s += std::abs(x[q] - c[q]);
          }
          return s;
        },
        ilo, ihi, go);
    over += icalls > budget;
    for (std::size_t k = 1; k < g.best_so_far.size(); ++k) nonmono += g.best_so_far[k] > g.best_so_far[k - 1];
  }
  o.pass = over == 0 && nonmono == 0 && outside == 0;
  o.detail = "1000 fuzzed problems per optimiser: budget overruns " + std::to_string(over) +
             ", best-so-far increases " + std::to_string(nonmono) + ", out-of-bounds evaluations " +
             std::to_string(outside);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  for (int a = 1; a < argc; ++a)
    if (std::strcmp(argv[a], "--quick") == 0) g_quick = true;

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 directional ranking, small-static", criterion1},
      {"2 MPFC vs FLC and solve time, small-dynamic", criterion2},
      {"3 decentralised vs centralised MPFC, 4 robots", criterion3},
      {"4 fire model suite", criterion4},
      {"5 oracle equivalence", criterion5},
      {"6 local prediction maps", criterion6},
      {"7 statistics", criterion7},
      {"8 determinism", criterion8},
      {"9 optimiser contracts", criterion9},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
