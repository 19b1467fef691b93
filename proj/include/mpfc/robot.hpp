#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpfc/environment.hpp"
#include "mpfc/grid.hpp"

namespace mpfc {

enum class Task : std::uint8_t { Travel = 0, Scan = 1 };

struct RobotParams {
  double v_max = 5.0;       // nominal airspeed, m/s
  double scan_rate = 0.01;  // s per m^2
  double accuracy = 0.9;    // sensor accuracy eta

  void validate() const;
  friend bool operator==(const RobotParams&, const RobotParams&) = default;
};

/// Robot on the coarse grid. MPC robots additionally carry a target queue.
struct RobotState {
  int id = 0;
  Cell position;
  Cell target;
  Task task = Task::Scan;
  double t_travel = 0.0;  // seconds remaining
  double t_scan = 0.0;    // seconds remaining
  RobotParams params;

  std::vector<Cell> queue;
  int cursor = 0;  // index of the next queue entry to visit after the current scan
  bool idle = false;

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

/// Mean wind over a set of cells: arithmetic mean speed, circular mean direction.
struct MeanWind {
  double speed = 0.0;
  double dir = 0.0;
};

MeanWind mean_wind(const RealGrid& speed, const RealGrid& dir, const std::vector<Cell>& cells);

/// Cells whose centre lies within v_max * t_ctrl metres of the position.
std::vector<Cell> feasible_set(Cell position, double v_max, double t_ctrl, const GridGeometry& grid);

double scan_time(double scan_rate, double cell_len_x, double cell_len_y);

struct Heading {
  double ground = 0.0;
  double correction = 0.0;
  double heading = 0.0;
  bool reachable = true;  // false when the wind cannot be compensated
};

Heading heading(Cell position, Cell target, const GridGeometry& grid, double v_max, MeanWind wind);

/// Ground speed along the track from the wind-triangle law of cosines.
double ground_speed(double v_max, MeanWind wind, double heading_angle);

/// Travel time in seconds; nullopt when the target cannot be reached.
std::optional<double> travel_time(Cell position, Cell target, const GridGeometry& grid,
                                  double v_max, MeanWind wind);

/// Attraction values over the coarse grid. Cells outside the feasible set
/// are flagged and never selected.
struct AttractionMap {
  RealGrid value;
  Grid<std::uint8_t> feasible;

  /// Highest feasible value, first in row-major order on ties.
  std::optional<Cell> argmax() const;
};

using TargetChooser = std::function<Cell()>;

/// Context for one robot step.
struct RobotStepContext {
  const GridGeometry* grid = nullptr;  // coarse geometry
  MeanWind wind;
  double dt = 15.0;
};

/// Sets a new travel target and resets both timers. An unreachable target
/// keeps the robot where it is.
void assign_target(RobotState& robot, Cell target, const RobotStepContext& ctx);

/// One step of the FLC action machine. `choose` is called only when a scan
/// completes and a new target is needed. Returns the scanned cell, if any.
std::optional<Cell> step_robot_flc(RobotState& robot, const TargetChooser& choose,
                                   const RobotStepContext& ctx);

/// Overload taking a precomputed attraction map.
std::optional<Cell> step_robot_flc(RobotState& robot, const AttractionMap& attraction,
                                   const RobotStepContext& ctx);

/// One step of the queue-following action machine.
std::optional<Cell> step_robot_mpc(RobotState& robot, const RobotStepContext& ctx);

/// Replaces the robot's target queue after an MPC solve.
void install_queue(RobotState& robot, std::vector<Cell> queue, const RobotStepContext& ctx);

/// Robot in the initial scan task at its spawn cell.
RobotState make_robot(int id, Cell position, const RobotParams& params, const GridGeometry& grid);

struct TrajectoryRow {
  long k = 0;
  int robot = 0;
  Cell position;
  Task task = Task::Scan;
  Cell target;
};

/// "k,r,i,j,task,target_i,target_j" CSV.
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);

}  // namespace mpfc
