#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpfc/grid.hpp"

namespace mpfc {

/// Geometry of a uniform grid (all cells identical).
struct GridGeometry {
  int nh = 1;
  int nv = 1;
  double cell_len_x = 10.0;  // metres
  double cell_len_y = 10.0;  // metres

  double centre_x(int i) const { return (i + 0.5) * cell_len_x; }
  double centre_y(int j) const { return (j + 0.5) * cell_len_y; }
  double cell_area() const { return cell_len_x * cell_len_y; }
  bool contains(Cell c) const { return c.i >= 0 && c.j >= 0 && c.i < nh && c.j < nv; }

  /// Squared Euclidean distance between cell centres in m^2.
  double squared_distance(Cell a, Cell b) const;

  void validate() const;
  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

/// Constants governing the non-fire environment update laws.
struct EnvironmentParams {
  double sigma = 0.01;               // scan certainty loss per global step
  int n_victim = 5;                  // max victims per cell
  double population_density = 0.01;  // persons per m^2, used for unscanned cells

  void validate() const;
};

/// All non-fire environment matrices on the fine grid.
struct EnvironmentState {
  GridGeometry geometry;
  RealGrid structure;                     // combustibility in [0,1], static
  std::vector<RealGrid> scan_certainty;   // one per robot
  RealGrid victim_prob;                   // perceived victim probability
  RealGrid debris;                        // perceived debris occupancy
  RealGrid occupancy;                     // ground-truth debris fraction o_ij
  RealGrid wind_speed;                    // m/s
  RealGrid wind_dir;                      // rad, counterclockwise from east
  Grid<int> perceived_victims;            // ground-truth counts, revealed on scan
  Grid<std::uint8_t> scanned;             // 1 once any robot has scanned the cell
  long global_step = 0;

  int robot_count() const { return static_cast<int>(scan_certainty.size()); }

  /// Throws std::invalid_argument when any matrix is mis-shaped or out of range.
  void validate(const EnvironmentParams& params) const;
};

/// A completed scan of one fine cell by one robot.
struct ScanReport {
  int robot = 0;
  Cell cell;
  double accuracy = 0.9;  // sensor accuracy eta of the scanning robot
};

double update_scan_certainty(double prev, bool scanned, double sigma, double eta);
double update_victim_probability(double prev, bool scanned, int perceived_count, int n_victim,
                                 double scan_certainty);
double update_debris(double prev, bool scanned, double occupancy, double scan_certainty);
double estimate_victims(bool scanned, double victim_prob, double population_density,
                        double cell_area, double occupancy);

/// Applies the scan-certainty, victim and debris update laws cell-wise and
/// increments the global step. Reports for the same cell are merged in robot
/// order; the victim/debris laws use the highest resulting certainty.
EnvironmentState advance_environment(const EnvironmentState& state,
                                     const std::vector<ScanReport>& reports,
                                     const EnvironmentParams& params);

/// In-place form of advance_environment used by the simulation loop.
void advance_environment_in_place(EnvironmentState& state, const std::vector<ScanReport>& reports,
                                  const EnvironmentParams& params);

/// Element-wise max across the per-robot scan matrices.
RealGrid fused_scan_certainty(const EnvironmentState& state);

/// Victim estimate per fine cell: perceived probability where scanned,
/// population prior elsewhere.
RealGrid estimated_victims(const EnvironmentState& state, const EnvironmentParams& params);

enum class Pooling { Mean, Max };

struct CoarseningSpec {
  int factor = 5;
};

GridGeometry coarsen_geometry(const GridGeometry& fine, const CoarseningSpec& spec);

/// Block aggregation; border blocks aggregate their truncated extent.
template <typename T>
Grid<T> coarsen(const Grid<T>& fine, const CoarseningSpec& spec, Pooling pooling);

/// Fine cells covered by a coarse cell (truncated at the border).
std::vector<Cell> fine_cells_of(Cell coarse, const GridGeometry& fine, const CoarseningSpec& spec);

/// Writes "i,j,value" rows in row-major cell order.
std::string matrix_to_csv(const RealGrid& m);
std::string matrix_to_csv(const Grid<int>& m);

}  // namespace mpfc
