#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpfc/environment.hpp"
#include "mpfc/fire.hpp"
#include "mpfc/fuzzy.hpp"
#include "mpfc/optim.hpp"
#include "mpfc/robot.hpp"
#include "mpfc/scenarios.hpp"

namespace mpfc {

enum class Architecture {
  CentralisedMpfc,
  DecentralisedMpfc,
  CentralisedMpc,
  DecentralisedMpc,
  PretunedFlc,
};

enum class PredictionMode {
  Threshold,  // deterministic ignition wherever pi >= zeta
  Exact,      // replays the plant's ignition draws through the shared seed
};

/// Quantity logged as J(k) and minimised by the supervisory layer.
enum class ObjectiveKind {
  MissionCost,      // sum of vhat * (1 - scan) * (c_o1 + c_o2 * (1 - downwind))
  CaseStudyReward,  // negated sum of vhat * scan * (c_o1 - c_o2 * downwind)
  Attraction,       // negated sum of the attraction of every robot's target
};

std::string to_string(Architecture a);
std::string to_string(PredictionMode m);
std::string to_string(ObjectiveKind o);
Architecture parse_architecture(const std::string& s);
PredictionMode parse_prediction_mode(const std::string& s);
ObjectiveKind parse_objective_kind(const std::string& s);

bool is_mpfc(Architecture a);
bool is_mpc(Architecture a);
bool is_decentralised(Architecture a);

struct PredictiveConfig {
  double dt = 15.0;        // global step T, s
  double t_ctrl = 150.0;   // control step, s
  int horizon = 11;        // prediction horizon N_p, global steps
  double sim_time = 5000.0;
  Architecture architecture = Architecture::CentralisedMpfc;
  PredictionMode prediction_mode = PredictionMode::Threshold;
  ObjectiveKind objective = ObjectiveKind::MissionCost;
  double c_o1 = 1.0;
  double c_o2 = 1.0;

  double theta_lower = -1.0;
  double theta_upper = 1.0;
  std::vector<OrderingChain> ordering = default_ordering();
  Connective connective = Connective::Max;
  Theta initial_theta = default_theta();

  PatternSearchOptions pattern;
  GeneticOptions genetic;
  int queue_length = 4;

  std::optional<int> r_local;  // coarse cells; unset means global maps

  /// Solve only when realised J deviates from the last prediction by more
  /// than this fraction. Zero disables the trigger (solve every control step).
  double event_threshold = 0.0;

  /// Order of the per-robot solves of decentralised architectures.
  std::vector<int> solve_order;

  int control_steps() const;
  int total_steps() const;
  void validate() const;
};

/// Coarse quantities built once per global step.
struct ControllerView {
  FlcView flc;
  RealGrid fused_scan;
  RealGrid downwind;
  Grid<FireState> fire;
};

/// Everything one closed-loop step needs besides the evolving state.
struct ModelContext {
  EnvironmentParams env;
  FireModelParams fire;
  CoarseningSpec coarsening;
  GridGeometry coarse;
  RealGrid coarse_wind_speed;
  RealGrid coarse_wind_dir;
  double t_response_max = 1.0;
  double dt = 15.0;
  double t_ctrl = 150.0;
  std::optional<int> r_local;
  double c_o1 = 1.0;
  double c_o2 = 1.0;
  ObjectiveKind objective = ObjectiveKind::MissionCost;
  bool mpc = false;
};

struct SimState {
  EnvironmentState env;
  FireGrid fire;
  std::vector<RobotState> robots;
  std::vector<FuzzyController> flcs;
};

ModelContext make_context(const Scenario& scenario, const PredictiveConfig& config);
SimState initial_state(const Scenario& scenario, const PredictiveConfig& config);

ControllerView build_view(const SimState& state, const ModelContext& ctx);

/// Per-step objective frame on one grid.
struct ObjectiveFrame {
  RealGrid victim;
  RealGrid scan;
  RealGrid downwind;
};

/// Sum over frames of victim * scan * (c_o1 - c_o2 * downwind).
double objective(const std::vector<ObjectiveFrame>& frames, double c_o1, double c_o2);

/// Sum over frames of victim * (1 - scan) * (c_o1 + c_o2 * (1 - downwind)).
double mission_cost(const std::vector<ObjectiveFrame>& frames, double c_o1, double c_o2);

/// Logged cost of the state summarised by `view` (lower is better).
double step_cost(const SimState& state, const ControllerView& view, const ModelContext& ctx);

/// Advances the closed loop by one global step and rebuilds `view` for the
/// new state. Robots that finish a scan pick their next target from the
/// rebuilt view, so the completed scan is already visible to them.
void advance(SimState& state, ControllerView& view, const ModelContext& ctx, IgnitionMode mode,
             std::uint64_t fire_seed, std::vector<TrajectoryRow>* trajectory = nullptr);

/// Candidate supervisory decision.
struct Decision {
  std::optional<std::vector<Theta>> theta;               // per robot
  std::optional<std::vector<std::vector<Cell>>> queues;  // per robot, 0-based cells
};

struct Prediction {
  std::vector<double> j;  // per predicted step k_ctrl+1 .. k_ctrl+N_p
  double total = 0.0;
};

/// Rolls the closed loop forward `horizon` steps from a frozen snapshot.
Prediction predict(const SimState& snapshot, const ControllerView& view, const Decision& decision,
                   const ModelContext& ctx, int horizon, PredictionMode mode, std::uint64_t fire_seed);

struct SolveStats {
  long k = 0;
  int robot = -1;  // -1 for a centralised solve
  int dimension = 0;
  int evaluations = 0;
  double best_j = 0.0;
  double start_j = 0.0;
  double t_opt = 0.0;  // wall time, s
  bool accepted = false;
};

struct TuneResult {
  std::vector<Theta> theta;
  std::vector<SolveStats> stats;
};

/// Tunes the output-surface parameters by pattern search on the frozen snapshot.
TuneResult tune_mpfc(const SimState& snapshot, const ControllerView& view, const ModelContext& ctx,
                     const PredictiveConfig& config, std::uint64_t fire_seed, long k);

struct QueueResult {
  std::vector<std::vector<Cell>> queues;
  std::vector<SolveStats> stats;
};

/// Plans target queues by the integer genetic algorithm on the frozen snapshot.
QueueResult tune_mpc(const SimState& snapshot, const ControllerView& view, const ModelContext& ctx,
                     const PredictiveConfig& config, std::uint64_t fire_seed, std::uint64_t run_seed,
                     long k);

struct RunHooks {
  bool record_trajectory = false;
  std::function<void(long k, const FireGrid&)> on_fire_frame;
};

struct RunResult {
  std::vector<double> j_series;  // J(k) for k = 1..K
  std::vector<double> t_opt;     // wall time per control step with a solve
  std::vector<SolveStats> solves;
  std::vector<TrajectoryRow> trajectory;
  std::vector<Theta> final_theta;
};

RunResult run_architecture(const PredictiveConfig& config, const Scenario& scenario, std::uint64_t seed,
                           const RunHooks& hooks = {});

/// One JSON object per line describing each solve.
std::string solve_log_jsonl(const std::vector<SolveStats>& solves, Architecture architecture);

}  // namespace mpfc
