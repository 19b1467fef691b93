#include "mpfc/predictive.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "mpfc/rng.hpp"

namespace mpfc {

namespace {

const std::map<Architecture, std::string>& architecture_names() {
  static const std::map<Architecture, std::string> names{
      {Architecture::CentralisedMpfc, "centralised-mpfc"},
      {Architecture::DecentralisedMpfc, "decentralised-mpfc"},
      {Architecture::CentralisedMpc, "centralised-mpc"},
      {Architecture::DecentralisedMpc, "decentralised-mpc"},
      {Architecture::PretunedFlc, "pretuned-flc"},
  };
  return names;
}

template <typename E>
E parse_enum(const std::map<E, std::string>& names, const std::string& s, const char* what) {
  for (const auto& [e, n] : names) {
    if (n == s) return e;
  }
  throw std::invalid_argument(std::string("unknown ") + what + ": " + s);
}

const std::map<PredictionMode, std::string> kModeNames{
    {PredictionMode::Threshold, "threshold"},
    {PredictionMode::Exact, "exact"},
};

const std::map<ObjectiveKind, std::string> kObjectiveNames{
    {ObjectiveKind::MissionCost, "mission-cost"},
    {ObjectiveKind::CaseStudyReward, "case-study"},
    {ObjectiveKind::Attraction, "attraction"},
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

IgnitionMode ignition_for(PredictionMode mode) {
  return mode == PredictionMode::Exact ? IgnitionMode::Stochastic : IgnitionMode::Threshold;
}

// Wind seen by a robot: mean over its feasible set.
MeanWind robot_wind(const RobotState& robot, const ModelContext& ctx) {
  const auto cells = feasible_set(robot.position, robot.params.v_max, ctx.t_ctrl, ctx.coarse);
  return mean_wind(ctx.coarse_wind_speed, ctx.coarse_wind_dir, cells);
}

RobotStepContext step_context(const RobotState& robot, const ModelContext& ctx, bool needs_wind) {
  RobotStepContext rc;
  rc.grid = &ctx.coarse;
  rc.dt = ctx.dt;
  if (needs_wind) rc.wind = robot_wind(robot, ctx);
  return rc;
}

// True when the next step ends a scan and starts a travel.
bool at_decision(const RobotState& robot) {
  return robot.task == Task::Scan && robot.t_scan <= 0.0 && !robot.idle;
}

}  // namespace

std::string to_string(Architecture a) { return architecture_names().at(a); }
std::string to_string(PredictionMode m) { return kModeNames.at(m); }
std::string to_string(ObjectiveKind o) { return kObjectiveNames.at(o); }
Architecture parse_architecture(const std::string& s) {
  return parse_enum(architecture_names(), s, "architecture");
}
PredictionMode parse_prediction_mode(const std::string& s) {
  return parse_enum(kModeNames, s, "prediction mode");
}
ObjectiveKind parse_objective_kind(const std::string& s) {
  return parse_enum(kObjectiveNames, s, "objective");
}

bool is_mpfc(Architecture a) {
  return a == Architecture::CentralisedMpfc || a == Architecture::DecentralisedMpfc;
}
bool is_mpc(Architecture a) {
  return a == Architecture::CentralisedMpc || a == Architecture::DecentralisedMpc;
}
bool is_decentralised(Architecture a) {
  return a == Architecture::DecentralisedMpfc || a == Architecture::DecentralisedMpc;
}

int PredictiveConfig::control_steps() const {
  return std::max(1, static_cast<int>(std::lround(t_ctrl / dt)));
}

int PredictiveConfig::total_steps() const { return static_cast<int>(std::floor(sim_time / dt + 1e-9)); }

void PredictiveConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_ctrl > 0.0)) throw std::invalid_argument("t_ctrl must be positive");
  const double ratio = t_ctrl / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9) {
    throw std::invalid_argument("t_ctrl must be a multiple of dt");
  }
  if (horizon < 0) throw std::invalid_argument("horizon must be non-negative");
  if (architecture != Architecture::PretunedFlc && horizon < control_steps()) {
    throw std::invalid_argument("horizon must cover at least one control interval");
  }
  if (!(sim_time >= 0.0)) throw std::invalid_argument("sim_time must be non-negative");
  if (!(theta_lower < theta_upper)) throw std::invalid_argument("theta bounds must be ordered");
  if (queue_length < 1) throw std::invalid_argument("queue length must be at least 1");
  if (r_local && *r_local < 1) throw std::invalid_argument("r_local must be at least 1");
  if (event_threshold < 0.0) throw std::invalid_argument("event threshold must be non-negative");
  if (!check_theta_constraints(initial_theta, theta_lower, theta_upper, ordering)) {
    throw std::invalid_argument("initial theta violates its bounds or ordering");
  }
}

ModelContext make_context(const Scenario& scenario, const PredictiveConfig& config) {
  ModelContext ctx;
  ctx.env = scenario.spec.env;
  ctx.fire = scenario.spec.fire;
  ctx.coarsening = CoarseningSpec{scenario.spec.coarsening};
  ctx.coarse = coarsen_geometry(scenario.env.geometry, ctx.coarsening);
  // Wind fields are static, so their coarse view is built once.
  ctx.coarse_wind_speed = coarsen(scenario.env.wind_speed, ctx.coarsening, Pooling::Mean);
  ctx.coarse_wind_dir = RealGrid(ctx.coarse.nh, ctx.coarse.nv, 0.0);
  for (int ci = 0; ci < ctx.coarse.nh; ++ci) {
    for (int cj = 0; cj < ctx.coarse.nv; ++cj) {
      double sx = 0.0, sy = 0.0;
      for (const Cell c : fine_cells_of({ci, cj}, scenario.env.geometry, ctx.coarsening)) {
        sx += std::cos(scenario.env.wind_dir[c]);
        sy += std::sin(scenario.env.wind_dir[c]);
      }
      ctx.coarse_wind_dir(ci, cj) = std::atan2(sy, sx);
    }
  }
  std::vector<Cell> all;
  for (int i = 0; i < ctx.coarse.nh; ++i)
    for (int j = 0; j < ctx.coarse.nv; ++j) all.push_back({i, j});
  const MeanWind wind = mean_wind(ctx.coarse_wind_speed, ctx.coarse_wind_dir, all);
  const RobotParams& rp = scenario.spec.robot;
  ctx.t_response_max = response_time_max(ctx.coarse, rp.v_max, wind,
                                         scan_time(rp.scan_rate, ctx.coarse.cell_len_x, ctx.coarse.cell_len_y));
  if (!(ctx.t_response_max > 0.0)) ctx.t_response_max = 1.0;
  ctx.dt = config.dt;
  ctx.t_ctrl = config.t_ctrl;
  ctx.r_local = config.r_local;
  ctx.c_o1 = config.c_o1;
  ctx.c_o2 = config.c_o2;
  ctx.objective = config.objective;
  ctx.mpc = is_mpc(config.architecture);
  return ctx;
}

SimState initial_state(const Scenario& scenario, const PredictiveConfig& config) {
  SimState s;
  s.env = scenario.env;
  s.fire = scenario.fire;
  s.robots = scenario.robots;
  FuzzyController flc;
  flc.theta = config.initial_theta;
  flc.connective = config.connective;
  s.flcs.assign(s.robots.size(), flc);
  return s;
}

ControllerView build_view(const SimState& state, const ModelContext& ctx) {
  ControllerView v;
  v.flc.grid = ctx.coarse;
  v.flc.t_ctrl = ctx.t_ctrl;
  v.flc.t_response_max = ctx.t_response_max;
  v.flc.wind_speed = ctx.coarse_wind_speed;
  v.flc.wind_dir = ctx.coarse_wind_dir;
  v.flc.victim = coarsen(estimated_victims(state.env, ctx.env), ctx.coarsening, Pooling::Mean);
  v.flc.scan.reserve(state.env.scan_certainty.size());
  for (const auto& s : state.env.scan_certainty) v.flc.scan.push_back(coarsen(s, ctx.coarsening, Pooling::Mean));
  v.fused_scan = coarsen(fused_scan_certainty(state.env), ctx.coarsening, Pooling::Mean);
  v.fire = coarsen_fire(state.fire.state, ctx.coarsening);
  v.flc.risk = fire_risk_time(v.fire, ctx.coarse_wind_speed, ctx.fire);
  v.downwind = downwind_map(v.fire, ctx.coarse_wind_speed, ctx.coarse_wind_dir, ctx.fire);
  return v;
}

double objective(const std::vector<ObjectiveFrame>& frames, double c_o1, double c_o2) {
  double j = 0.0;
  for (const auto& f : frames) {
    for (std::size_t n = 0; n < f.victim.size(); ++n) {
      j += f.victim.data()[n] * f.scan.data()[n] * (c_o1 - c_o2 * f.downwind.data()[n]);
    }
  }
  return j;
}

double mission_cost(const std::vector<ObjectiveFrame>& frames, double c_o1, double c_o2) {
  double j = 0.0;
  for (const auto& f : frames) {
    for (std::size_t n = 0; n < f.victim.size(); ++n) {
      j += f.victim.data()[n] * (1.0 - f.scan.data()[n]) * (c_o1 + c_o2 * (1.0 - f.downwind.data()[n]));
    }
  }
  return j;
}

double step_cost(const SimState& state, const ControllerView& view, const ModelContext& ctx) {
  switch (ctx.objective) {
    case ObjectiveKind::MissionCost: {
      double j = 0.0;
      for (std::size_t n = 0; n < view.fused_scan.size(); ++n) {
        j += view.flc.victim.data()[n] * (1.0 - view.fused_scan.data()[n]) *
             (ctx.c_o1 + ctx.c_o2 * (1.0 - view.downwind.data()[n]));
      }
      return j;
    }
    case ObjectiveKind::CaseStudyReward: {
      double j = 0.0;
      for (std::size_t n = 0; n < view.fused_scan.size(); ++n) {
        j += view.flc.victim.data()[n] * view.fused_scan.data()[n] *
             (ctx.c_o1 - ctx.c_o2 * view.downwind.data()[n]);
      }
      return -j;
    }
    case ObjectiveKind::Attraction: {
      double a = 0.0;
      for (std::size_t r = 0; r < state.robots.size(); ++r) {
        const auto& robot = state.robots[r];
        const auto x = compute_inputs(robot, robot.target, view.flc, robot_wind(robot, ctx));
        if (x) a += tsk_evaluate(state.flcs[r], *x);
      }
      return -a;
    }
  }
  return 0.0;
}

void advance(SimState& state, ControllerView& view, const ModelContext& ctx, IgnitionMode mode,
             std::uint64_t fire_seed, std::vector<TrajectoryRow>* trajectory) {
  std::vector<ScanReport> reports;
  std::vector<std::size_t> choosing;
  for (std::size_t r = 0; r < state.robots.size(); ++r) {
    RobotState& robot = state.robots[r];
    const bool deciding = at_decision(robot);
    std::optional<Cell> scanned;
    if (ctx.mpc) {
      scanned = step_robot_mpc(robot, step_context(robot, ctx, deciding));
    } else {
      // The target is fixed below, once the scan is on the map.
      scanned = step_robot_flc(robot, [&] { return robot.position; }, step_context(robot, ctx, false));
      if (deciding) choosing.push_back(r);
    }
    if (scanned) {
      for (const Cell c : fine_cells_of(*scanned, state.env.geometry, ctx.coarsening)) {
        reports.push_back({static_cast<int>(r), c, robot.params.accuracy});
      }
    }
  }
  advance_environment_in_place(state.env, reports, ctx.env);
  step_fire_in_place(state.fire, state.env, ctx.fire, state.env.global_step, mode, fire_seed);
  view = build_view(state, ctx);
  for (const std::size_t r : choosing) {
    RobotState& robot = state.robots[r];
    const Cell target =
        attraction_map(state.flcs[r], robot, view.flc, ctx.r_local).argmax().value_or(robot.position);
    assign_target(robot, target, step_context(robot, ctx, true));
  }
  if (trajectory) {
    for (const auto& robot : state.robots) {
      trajectory->push_back({state.env.global_step, robot.id, robot.position, robot.task, robot.target});
    }
  }
}

namespace {

void apply_decision(SimState& s, const Decision& decision, const ModelContext& ctx) {
  if (decision.theta) {
    for (std::size_t r = 0; r < decision.theta->size() && r < s.flcs.size(); ++r) {
      s.flcs[r].theta = (*decision.theta)[r];
    }
  }
  if (decision.queues) {
    for (std::size_t r = 0; r < decision.queues->size() && r < s.robots.size(); ++r) {
      RobotState& robot = s.robots[r];
      install_queue(robot, (*decision.queues)[r], step_context(robot, ctx, true));
    }
  }
}

}  // namespace

Prediction predict(const SimState& snapshot, const ControllerView& view, const Decision& decision,
                   const ModelContext& ctx, int horizon, PredictionMode mode, std::uint64_t fire_seed) {
  Prediction p;
  if (horizon <= 0) return p;
  SimState s = snapshot;
  apply_decision(s, decision, ctx);
  ControllerView v = view;
  p.j.reserve(static_cast<std::size_t>(horizon));
  for (int h = 0; h < horizon; ++h) {
    advance(s, v, ctx, ignition_for(mode), fire_seed);
    const double j = step_cost(s, v, ctx);
    p.j.push_back(j);
    p.total += j;
  }
  return p;
}

namespace {

std::vector<double> flatten(const std::vector<Theta>& thetas) {
  std::vector<double> x;
  for (const auto& t : thetas) x.insert(x.end(), t.begin(), t.end());
  return x;
}

Theta theta_at(const std::vector<double>& x, std::size_t r) {
  Theta t;
  std::copy_n(x.begin() + static_cast<long>(r * kThetaSize), kThetaSize, t.begin());
  return t;
}

std::vector<int> robot_order(const PredictiveConfig& config, int robots) {
  std::vector<int> order = config.solve_order;
  if (order.empty()) {
    for (int r = 0; r < robots; ++r) order.push_back(r);
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int r = 0; r < robots; ++r) {
    if (static_cast<int>(sorted.size()) != robots || sorted[static_cast<std::size_t>(r)] != r) {
      throw std::invalid_argument("solve order must be a permutation of the robot ids");
    }
  }
  return order;
}

}  // namespace

TuneResult tune_mpfc(const SimState& snapshot, const ControllerView& view, const ModelContext& ctx,
                     const PredictiveConfig& config, std::uint64_t fire_seed, long k) {
  const std::size_t robots = snapshot.robots.size();
  std::vector<Theta> current;
  for (const auto& f : snapshot.flcs) current.push_back(f.theta);
  TuneResult out;
  out.theta = current;

  auto solve = [&](const std::vector<std::size_t>& free_robots, int robot_label) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Theta> x0_theta;
    for (std::size_t r : free_robots) x0_theta.push_back(current[r]);
    const std::vector<double> x0 = flatten(x0_theta);
    const std::size_t dim = x0.size();
    const std::vector<double> lower(dim, config.theta_lower);
    const std::vector<double> upper(dim, config.theta_upper);

    auto decode = [&](const std::vector<double>& x) {
      std::vector<Theta> thetas = current;
      for (std::size_t n = 0; n < free_robots.size(); ++n) thetas[free_robots[n]] = theta_at(x, n);
      return thetas;
    };
    auto feasible = [&](const std::vector<double>& x) {
      for (std::size_t n = 0; n < free_robots.size(); ++n) {
        if (!check_theta_constraints(theta_at(x, n), config.theta_lower, config.theta_upper, config.ordering)) {
          return false;
        }
      }
      return true;
    };
    auto f = [&](const std::vector<double>& x) {
      Decision d;
      d.theta = decode(x);
      return predict(snapshot, view, d, ctx, config.horizon, config.prediction_mode, fire_seed).total;
    };
    const auto res = pattern_search(f, x0, lower, upper, config.pattern, feasible);

    SolveStats st;
    st.k = k;
    st.robot = robot_label;
    st.dimension = static_cast<int>(dim);
    st.evaluations = res.evaluations;
    st.start_j = res.best_so_far.empty() ? std::numeric_limits<double>::quiet_NaN() : res.best_so_far.front();
    st.best_j = res.f;
    st.accepted = res.evaluations > 0 && res.x != x0 && feasible(res.x);
    std::vector<Theta> chosen = st.accepted ? decode(res.x) : current;
    st.t_opt = seconds_since(start);
    out.stats.push_back(st);
    return chosen;
  };

  if (is_decentralised(config.architecture)) {
    // Every robot solves against the same frozen snapshot; results apply together.
    std::vector<Theta> next = current;
    for (int r : robot_order(config, static_cast<int>(robots))) {
      const auto chosen = solve({static_cast<std::size_t>(r)}, r);
      next[static_cast<std::size_t>(r)] = chosen[static_cast<std::size_t>(r)];
    }
    std::sort(out.stats.begin(), out.stats.end(),
              [](const SolveStats& a, const SolveStats& b) { return a.robot < b.robot; });
    out.theta = next;
  } else {
    std::vector<std::size_t> all(robots);
    for (std::size_t r = 0; r < robots; ++r) all[r] = r;
    out.theta = solve(all, -1);
  }
  return out;
}

QueueResult tune_mpc(const SimState& snapshot, const ControllerView& view, const ModelContext& ctx,
                     const PredictiveConfig& config, std::uint64_t fire_seed, std::uint64_t run_seed,
                     long k) {
  const std::size_t robots = snapshot.robots.size();
  const int len = config.queue_length;
  QueueResult out;

  auto warm = [&](std::size_t r) {
    std::vector<int> genes;
    const Cell p = snapshot.robots[r].position;
    genes.push_back(p.i + 1);
    genes.push_back(p.j + 1);
    for (int q = 1; q < len; ++q) {
      genes.push_back(1);
      genes.push_back(1);
    }
    return genes;
  };
  auto decode_queue = [&](const std::vector<int>& x, std::size_t offset) {
    std::vector<Cell> q;
    for (int n = 0; n < len; ++n) {
      q.push_back({x[offset + 2 * static_cast<std::size_t>(n)] - 1, x[offset + 2 * static_cast<std::size_t>(n) + 1] - 1});
    }
    return q;
  };

  auto solve = [&](const std::vector<std::size_t>& free_robots, int robot_label) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<int> lower, upper, x0;
    for (std::size_t r : free_robots) {
      for (int n = 0; n < len; ++n) {
        lower.insert(lower.end(), {1, 1});
        upper.insert(upper.end(), {ctx.coarse.nh, ctx.coarse.nv});
      }
      const auto w = warm(r);
      x0.insert(x0.end(), w.begin(), w.end());
    }
    auto decode = [&](const std::vector<int>& x) {
      std::vector<std::vector<Cell>> queues;
      std::vector<std::size_t> slot(robots, robots);
      for (std::size_t n = 0; n < free_robots.size(); ++n) slot[free_robots[n]] = n;
      for (std::size_t r = 0; r < robots; ++r) {
        if (slot[r] < robots) {
          queues.push_back(decode_queue(x, slot[r] * 2 * static_cast<std::size_t>(len)));
        } else {
          // Robots outside this solve keep their remaining queue.
          const auto& robot = snapshot.robots[r];
          queues.push_back({});
          queues.back().assign(robot.queue.begin() + std::min<long>(robot.cursor, static_cast<long>(robot.queue.size())),
                               robot.queue.end());
        }
      }
      return queues;
    };
    auto f = [&](const std::vector<int>& x) {
      Decision d;
      d.queues = decode(x);
      if (free_robots.size() < robots) {
        // Only the free robot's queue is replaced.
        SimState s = snapshot;
        for (std::size_t n = 0; n < free_robots.size(); ++n) {
          RobotState& robot = s.robots[free_robots[n]];
          install_queue(robot, (*d.queues)[free_robots[n]], step_context(robot, ctx, true));
        }
        return predict(s, view, Decision{}, ctx, config.horizon, config.prediction_mode, fire_seed).total;
      }
      return predict(snapshot, view, d, ctx, config.horizon, config.prediction_mode, fire_seed).total;
    };
    GeneticOptions opts = config.genetic;
    opts.initial = {x0};
    opts.seed = splitmix64(run_seed ^ splitmix64(static_cast<std::uint64_t>(k) * 1315423911ULL +
                                                 static_cast<std::uint64_t>(robot_label + 2)));
    const auto res = genetic_algorithm(f, lower, upper, opts);

    SolveStats st;
    st.k = k;
    st.robot = robot_label;
    st.dimension = static_cast<int>(lower.size());
    st.evaluations = res.evaluations;
    st.start_j = res.best_so_far.empty() ? std::numeric_limits<double>::quiet_NaN() : res.best_so_far.front();
    st.best_j = res.f;
    st.accepted = res.evaluations > 0;
    const auto chosen = decode(st.accepted ? res.x : x0);
    st.t_opt = seconds_since(start);
    out.stats.push_back(st);
    return chosen;
  };

  if (is_decentralised(config.architecture)) {
    out.queues.assign(robots, {});
    for (int r : robot_order(config, static_cast<int>(robots))) {
      const auto chosen = solve({static_cast<std::size_t>(r)}, r);
      out.queues[static_cast<std::size_t>(r)] = chosen[static_cast<std::size_t>(r)];
    }
    std::sort(out.stats.begin(), out.stats.end(),
              [](const SolveStats& a, const SolveStats& b) { return a.robot < b.robot; });
  } else {
    std::vector<std::size_t> all(robots);
    for (std::size_t r = 0; r < robots; ++r) all[r] = r;
    out.queues = solve(all, -1);
  }
  return out;
}

RunResult run_architecture(const PredictiveConfig& config, const Scenario& scenario, std::uint64_t seed,
                           const RunHooks& hooks) {
  config.validate();
  const ModelContext ctx = make_context(scenario, config);
  SimState state = initial_state(scenario, config);
  ControllerView view = build_view(state, ctx);
  const std::uint64_t fseed = fire_seed(seed);
  const int steps = config.total_steps();
  const int ctrl = config.control_steps();

  RunResult out;
  out.j_series.reserve(static_cast<std::size_t>(steps));
  if (hooks.on_fire_frame) hooks.on_fire_frame(0, state.fire);

  std::map<long, double> predicted;  // for the event trigger
  for (int step = 0; step < steps; ++step) {
    const long k = state.env.global_step;
    if (config.architecture != Architecture::PretunedFlc && step % ctrl == 0) {
      bool solve = true;
      if (config.event_threshold > 0.0 && step > 0) {
        const auto it = predicted.find(k);
        if (it != predicted.end()) {
          const double realised = out.j_series.back();
          const double scale = std::max(std::abs(it->second), 1e-12);
          solve = std::abs(realised - it->second) / scale > config.event_threshold;
        }
      }
      if (solve) {
        double wall = 0.0;
        Decision applied;
        if (is_mpfc(config.architecture)) {
          const TuneResult res = tune_mpfc(state, view, ctx, config, fseed, k);
          for (std::size_t r = 0; r < state.flcs.size(); ++r) state.flcs[r].theta = res.theta[r];
          for (const auto& st : res.stats) wall += st.t_opt;
          out.solves.insert(out.solves.end(), res.stats.begin(), res.stats.end());
        } else {
          const QueueResult res = tune_mpc(state, view, ctx, config, fseed, seed, k);
          for (std::size_t r = 0; r < state.robots.size(); ++r) {
            RobotState& robot = state.robots[r];
            install_queue(robot, res.queues[r], step_context(robot, ctx, true));
          }
          for (const auto& st : res.stats) wall += st.t_opt;
          out.solves.insert(out.solves.end(), res.stats.begin(), res.stats.end());
        }
        out.t_opt.push_back(wall);
        if (config.event_threshold > 0.0) {
          predicted.clear();
          const Prediction p = predict(state, view, applied, ctx, config.horizon, config.prediction_mode, fseed);
          for (std::size_t h = 0; h < p.j.size(); ++h) predicted[k + 1 + static_cast<long>(h)] = p.j[h];
        }
      }
    }
    advance(state, view, ctx, IgnitionMode::Stochastic, fseed, hooks.record_trajectory ? &out.trajectory : nullptr);
    out.j_series.push_back(step_cost(state, view, ctx));
    if (hooks.on_fire_frame) hooks.on_fire_frame(state.env.global_step, state.fire);
  }
  for (const auto& f : state.flcs) out.final_theta.push_back(f.theta);
  return out;
}

std::string solve_log_jsonl(const std::vector<SolveStats>& solves, Architecture architecture) {
  std::string out;
  for (const auto& s : solves) {
    nlohmann::json j;
    j["k"] = s.k;
    j["architecture"] = to_string(architecture);
    j["robot"] = s.robot;
    j["dimension"] = s.dimension;
    j["evaluations"] = s.evaluations;
    j["start_j"] = std::isfinite(s.start_j) ? nlohmann::json(s.start_j) : nlohmann::json(nullptr);
    j["best_j"] = std::isfinite(s.best_j) ? nlohmann::json(s.best_j) : nlohmann::json(nullptr);
    j["t_opt"] = s.t_opt;
    j["accepted"] = s.accepted;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace mpfc
