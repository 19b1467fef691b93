#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mpfc/environment.hpp"
#include "mpfc/robot.hpp"

namespace mpfc {

/// Triangular membership function with vertices a <= b <= c.
struct MembershipFunction {
  std::string label;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double degree(double x) const;
};

/// low [0,0,0.5], medium [0,0.5,1], high [0.5,1,1].
std::array<MembershipFunction, 3> default_membership_functions();

inline constexpr int kInputs = 4;
inline constexpr int kRules = 3;
inline constexpr int kSurfaceSize = kInputs + 1;
inline constexpr int kThetaSize = kRules * kSurfaceSize;

/// Output-surface parameters: [w1..w4, c] for the low, medium and high rules.
using Theta = std::array<double, kThetaSize>;
using FlcInputs = std::array<double, kInputs>;

/// (-1, 1, -1, -1, c) with c = 0, 0.5, 1.
Theta default_theta();

/// How the antecedent degrees of the four inputs are combined per rule.
enum class Connective {
  Max,      // fuzzy OR
  Product,  // fuzzy AND
};

struct FuzzyController {
  std::array<MembershipFunction, 3> mfs = default_membership_functions();
  Theta theta = default_theta();
  Connective connective = Connective::Max;
};

/// Firing strength of rule `rule` (0 low, 1 medium, 2 high).
double rule_strength(const FuzzyController& flc, int rule, const FlcInputs& x);

/// Weighted-average TSK output; 0 when no rule fires.
double tsk_evaluate(const FuzzyController& flc, const FlcInputs& x);

/// Coarse-grid quantities the local controllers read.
struct FlcView {
  GridGeometry grid;
  RealGrid victim;                  // estimated victim probability
  RealGrid risk;                    // fire risk time, minutes
  std::vector<RealGrid> scan;       // per-robot scan certainty
  RealGrid wind_speed;
  RealGrid wind_dir;
  double t_ctrl = 150.0;            // control sampling time, s
  double t_response_max = 1.0;      // normalisation of input 1
};

/// Longest travel time between any two cells plus one scan time.
double response_time_max(const GridGeometry& grid, double v_max, MeanWind wind, double t_scan);

/// Response time to a candidate: remaining task time plus travel from the
/// current target (travel task) or position (scan task). nullopt when the
/// candidate is unreachable.
std::optional<double> response_time(const RobotState& robot, Cell candidate,
                                     const GridGeometry& grid, MeanWind wind);

/// Normalised inputs for one candidate, each clamped to [0,1].
std::optional<FlcInputs> compute_inputs(const RobotState& robot, Cell candidate, const FlcView& view,
                                        MeanWind wind);

/// Rectangular window of a coarse grid, [i0, i1) x [j0, j1).
struct LocalWindow {
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0;

  int width() const { return i1 - i0; }
  int height() const { return j1 - j0; }
  bool contains(Cell c) const { return c.i >= i0 && c.i < i1 && c.j >= j0 && c.j < j1; }
};

/// (2r+1)^2 window centred on `centre`, clipped at the borders.
LocalWindow local_window(Cell centre, int r_local, int nh, int nv);

RealGrid local_slice(const RealGrid& m, const LocalWindow& w);

/// Writes `local` back into `global` at the window location.
void restore(RealGrid& global, const RealGrid& local, const LocalWindow& w);

/// Attraction of every feasible cell for one robot. With `r_local`, only the
/// window around the robot is evaluated.
AttractionMap attraction_map(const FuzzyController& flc, const RobotState& robot, const FlcView& view,
                             std::optional<int> r_local = std::nullopt);

/// Index triples (1-based) of the strict orderings over theta.
using OrderingChain = std::vector<int>;

/// theta_5 < theta_10 < theta_15: the rule constants increase from low to high.
std::vector<OrderingChain> default_ordering();

/// Centred triples (i-1, i, i+1) for the given 1-based indices.
std::vector<OrderingChain> centred_triples(const std::vector<int>& indices);

bool check_theta_constraints(const std::vector<double>& theta, double lower, double upper,
                             const std::vector<OrderingChain>& ordering);
bool check_theta_constraints(const Theta& theta, double lower, double upper,
                             const std::vector<OrderingChain>& ordering);

}  // namespace mpfc
