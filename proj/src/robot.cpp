#include "mpfc/robot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpfc {

void RobotParams::validate() const {
  if (!(v_max >= 0.0)) throw std::invalid_argument("v_max must be non-negative");
  if (!(scan_rate >= 0.0)) throw std::invalid_argument("scan rate must be non-negative");
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw std::invalid_argument("sensor accuracy must lie in [0,1]");
  }
}

MeanWind mean_wind(const RealGrid& speed, const RealGrid& dir, const std::vector<Cell>& cells) {
  MeanWind w;
  if (cells.empty()) return w;
  double s = 0.0, sx = 0.0, sy = 0.0;
  for (const Cell c : cells) {
    s += speed[c];
    sx += std::cos(dir[c]);
    sy += std::sin(dir[c]);
  }
  w.speed = s / static_cast<double>(cells.size());
  w.dir = std::atan2(sy, sx);
  return w;
}

std::vector<Cell> feasible_set(Cell position, double v_max, double t_ctrl, const GridGeometry& grid) {
  const double reach = v_max * t_ctrl;
  const double reach2 = reach * reach;
  std::vector<Cell> cells;
  for (int i = 0; i < grid.nh; ++i)
    for (int j = 0; j < grid.nv; ++j)
      if (grid.squared_distance(position, {i, j}) <= reach2) cells.push_back({i, j});
  return cells;
}

double scan_time(double scan_rate, double cell_len_x, double cell_len_y) {
  return scan_rate * cell_len_x * cell_len_y;
}

Heading heading(Cell position, Cell target, const GridGeometry& grid, double v_max, MeanWind wind) {
  Heading h;
  h.ground = std::atan2((target.j - position.j) * grid.cell_len_y,
                        (target.i - position.i) * grid.cell_len_x);
  if (wind.speed == 0.0) {
    h.heading = h.ground;
    return h;
  }
  if (v_max <= 0.0) {
    h.reachable = false;
    return h;
  }
  const double s = wind.speed / v_max * std::sin(h.ground - wind.dir);
  if (std::abs(s) > 1.0) {
    h.reachable = false;
    return h;
  }
  h.correction = std::asin(s);
  h.heading = h.ground + h.correction;
  return h;
}

double ground_speed(double v_max, MeanWind wind, double heading_angle) {
  const double v2 = v_max * v_max + wind.speed * wind.speed +
                    2.0 * v_max * wind.speed * std::cos(wind.dir - heading_angle);
  return std::sqrt(std::max(v2, 0.0));
}

std::optional<double> travel_time(Cell position, Cell target, const GridGeometry& grid,
                                  double v_max, MeanWind wind) {
  if (position == target) return 0.0;
  const Heading h = heading(position, target, grid, v_max, wind);
  if (!h.reachable) return std::nullopt;
  const double vg = ground_speed(v_max, wind, h.heading);
  if (!(vg > 0.0)) return std::nullopt;
  return std::sqrt(grid.squared_distance(position, target)) / vg;
}

std::optional<Cell> AttractionMap::argmax() const {
  std::optional<Cell> best;
  double best_value = 0.0;
  for (int i = 0; i < value.nh(); ++i) {
    for (int j = 0; j < value.nv(); ++j) {
      if (!feasible(i, j)) continue;
      if (!best || value(i, j) > best_value) {
        best = Cell{i, j};
        best_value = value(i, j);
      }
    }
  }
  return best;
}

namespace {

void start_travel(RobotState& robot, Cell target, const RobotStepContext& ctx) {
  const auto t = travel_time(robot.position, target, *ctx.grid, robot.params.v_max, ctx.wind);
  robot.target = t ? target : robot.position;
  robot.t_travel = t.value_or(0.0);
  robot.t_scan = scan_time(robot.params.scan_rate, ctx.grid->cell_len_x, ctx.grid->cell_len_y);
  robot.task = Task::Travel;
}

}  // namespace

void assign_target(RobotState& robot, Cell target, const RobotStepContext& ctx) {
  start_travel(robot, target, ctx);
}

std::optional<Cell> step_robot_flc(RobotState& robot, const TargetChooser& choose,
                                   const RobotStepContext& ctx) {
  if (robot.task == Task::Travel) {
    if (robot.t_travel > 0.0) {
      robot.t_travel -= ctx.dt;
    } else {
      robot.task = Task::Scan;
      robot.position = robot.target;
      robot.t_travel = 0.0;
    }
    return std::nullopt;
  }
  if (robot.t_scan > 0.0) {
    robot.t_scan -= ctx.dt;
    return std::nullopt;
  }
  const Cell scanned = robot.position;
  start_travel(robot, choose(), ctx);
  return scanned;
}

std::optional<Cell> step_robot_flc(RobotState& robot, const AttractionMap& attraction,
                                   const RobotStepContext& ctx) {
  return step_robot_flc(
      robot, [&] { return attraction.argmax().value_or(robot.position); }, ctx);
}

std::optional<Cell> step_robot_mpc(RobotState& robot, const RobotStepContext& ctx) {
  if (robot.idle) return std::nullopt;
  if (robot.task == Task::Travel) {
    if (robot.t_travel > 0.0) {
      robot.t_travel -= ctx.dt;
    } else {
      robot.task = Task::Scan;
      robot.position = robot.target;
      robot.t_travel = 0.0;
    }
    return std::nullopt;
  }
  if (robot.t_scan > 0.0) {
    robot.t_scan -= ctx.dt;
    return std::nullopt;
  }
  const Cell scanned = robot.position;
  if (robot.cursor < static_cast<int>(robot.queue.size())) {
    start_travel(robot, robot.queue[static_cast<std::size_t>(robot.cursor)], ctx);
    ++robot.cursor;
  } else {
    robot.idle = true;
    robot.target = robot.position;
  }
  return scanned;
}

void install_queue(RobotState& robot, std::vector<Cell> queue, const RobotStepContext& ctx) {
  robot.queue = std::move(queue);
  robot.cursor = 0;
  if (robot.queue.empty()) return;
  const Cell first = robot.queue.front();
  const double t_scan = scan_time(robot.params.scan_rate, ctx.grid->cell_len_x, ctx.grid->cell_len_y);
  if (robot.task == Task::Travel) {
    start_travel(robot, first, ctx);
    robot.cursor = 1;
    return;
  }
  if (first == robot.position) {
    // The first entry is the cell being scanned.
    if (robot.idle) {
      robot.idle = false;
      robot.t_scan = t_scan;
    }
    robot.target = robot.position;
    robot.cursor = 1;
    return;
  }
  if (robot.idle) {
    robot.idle = false;
    start_travel(robot, first, ctx);
    robot.cursor = 1;
  }
  // Otherwise the current scan finishes first and the cursor stays at 0.
}

RobotState make_robot(int id, Cell position, const RobotParams& params, const GridGeometry& grid) {
  RobotState r;
  r.id = id;
  r.position = position;
  r.target = position;
  r.task = Task::Scan;
  r.params = params;
  r.t_scan = scan_time(params.scan_rate, grid.cell_len_x, grid.cell_len_y);
  return r;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "k,r,i,j,task,target_i,target_j\n";
  for (const auto& row : rows) {
    out += std::to_string(row.k) + ',' + std::to_string(row.robot) + ',' +
           std::to_string(row.position.i) + ',' + std::to_string(row.position.j) + ',' +
           std::to_string(static_cast<int>(row.task)) + ',' + std::to_string(row.target.i) + ',' +
           std::to_string(row.target.j) + '\n';
  }
  return out;
}

}  // namespace mpfc
