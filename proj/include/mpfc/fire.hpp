#pragma once

#include <array>
#include <climits>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mpfc/environment.hpp"
#include "mpfc/grid.hpp"

namespace mpfc {

enum class FireState : std::uint8_t {
  NonFlammable = 0,
  Flammable = 1,
  Catching = 2,
  Burning = 3,
  Extinguished = 4,
};

/// Colour used for each fire state in exported frames and plots.
struct FireLegendEntry {
  FireState state;
  std::string_view label;
  std::string_view colour;
};

inline constexpr std::array<FireLegendEntry, 5> kFireLegend{{
    {FireState::NonFlammable, "non flammable", "#bdbdbd"},
    {FireState::Flammable, "flammable", "#2ca02c"},
    {FireState::Catching, "catching fire", "#ff7f0e"},
    {FireState::Burning, "burning", "#d62728"},
    {FireState::Extinguished, "extinguished", "#000000"},
}};

/// Constants of the spread cellular automaton. Step counts are in global
/// simulation steps.
struct FireModelParams {
  double alpha1 = 0.2;  // scale
  double alpha2 = 0.2;  // distance term
  double alpha3 = 0.1;  // wind speed term
  double alpha4 = 0.1;  // wind alignment term
  double c_w1 = 0.1;    // downwind direction component, speed gain
  double c_w2 = 0.4;    // downwind direction component, alignment gain
  double zeta = 0.5;    // ignition threshold
  int k_2min = 8;
  int k_10min = 40;
  int wind_radius = 3;
  double low_wind = 1.0;   // m/s, first tier cutoff
  double high_wind = 5.0;  // m/s, second tier cutoff

  void validate() const;

  /// Builds the automaton constants from the case-study constant names.
  /// Times are in seconds and are converted with ceil(t / step_s).
  static FireModelParams from_constants(double c_fs1, double c_fs2, double c_wm1, double c_wm2,
                                        double c_wmd, double ignition_s, double burnout_s,
                                        double step_s, int wind_radius, double zeta);
};

inline constexpr int kNeverIgnited = INT_MIN;

struct FireGrid {
  Grid<FireState> state;
  Grid<int> ignition_step;  // kNeverIgnited where the cell never caught fire

  FireGrid() = default;
  FireGrid(int nh, int nv, FireState fill = FireState::Flammable)
      : state(nh, nv, fill), ignition_step(nh, nv, kNeverIgnited) {}

  int nh() const { return state.nh(); }
  int nv() const { return state.nv(); }
  int count(FireState s) const;
  /// Cells in the catching or burning state.
  int active_count() const { return count(FireState::Catching) + count(FireState::Burning); }

  friend bool operator==(const FireGrid&, const FireGrid&) = default;
};

/// How an ignition decision is taken from the accumulated spread probability.
enum class IgnitionMode {
  Stochastic,  // ignite when a counter-based uniform draw falls below pi
  Threshold,   // ignite when pi >= zeta
};

/// Radius tier (1, 2 or 3) reached at the given wind speed, capped by the wind radius.
int spread_radius(double wind_speed, const FireModelParams& params);

/// Relative offsets of the Chebyshev rings 1..radius(speed), row-major.
std::vector<Cell> spread_neighbourhood(double wind_speed, const FireModelParams& params);

/// Ability of an ignited cell to spread fire; zero outside its burn window.
double fire_ability(long k, long k_fire, int k_2min, int k_10min);

/// Spread probability from one burning source to one target (not clamped).
double spread_probability(Cell source, Cell target, const EnvironmentState& env,
                          const FireGrid& fire, const FireModelParams& params, long k);

/// Accumulated spread probability from all burning cells, clamped to [0,1].
RealGrid spread_probability_map(const FireGrid& fire, const EnvironmentState& env,
                                const FireModelParams& params, long k);

/// Advances the automaton to global step k. Time-driven transitions (2->3,
/// 3->4) are applied first; ignitions then use the cells burning at k.
void step_fire_in_place(FireGrid& fire, const EnvironmentState& env, const FireModelParams& params,
                        long k, IgnitionMode mode, std::uint64_t seed);

FireGrid step_fire(const FireGrid& fire, const EnvironmentState& env, const FireModelParams& params,
                   long k, IgnitionMode mode, std::uint64_t seed);

/// Minutes until each cell is at risk of burning; 100 where it cannot burn.
RealGrid fire_risk_time(const Grid<FireState>& fire, const RealGrid& wind_speed,
                        const FireModelParams& params);

inline constexpr double kNoFireRisk = 100.0;

/// Direction component of the downwind score for a cell relative to a fire.
double downwind_direction(double wind_speed, double wind_dir, Cell cell, Cell fire, double c_w1,
                          double c_w2);

/// Distance component, normalised by the grid diagonal in cells.
double downwind_distance(Cell cell, Cell fire, int nh, int nv);

/// Proximity to active fires inverted so that 1 means far from any fire.
RealGrid downwind_map(const Grid<FireState>& fire, const RealGrid& wind_speed,
                      const RealGrid& wind_dir, const FireModelParams& params);

/// Block pooling of fire states on the coarse grid. The most active state in
/// a block wins: burning, then catching, flammable, extinguished, non flammable.
Grid<FireState> coarsen_fire(const Grid<FireState>& fine, const CoarseningSpec& spec);

/// "i,j,value" CSV of the state codes.
std::string fire_frame_csv(const FireGrid& fire);

}  // namespace mpfc
