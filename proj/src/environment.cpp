#include "mpfc/environment.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mpfc/io.hpp"

namespace mpfc {

double GridGeometry::squared_distance(Cell a, Cell b) const {
  const double dx = (a.i - b.i) * cell_len_x;
  const double dy = (a.j - b.j) * cell_len_y;
  return dx * dx + dy * dy;
}

void GridGeometry::validate() const {
  if (nh < 1 || nv < 1) throw std::invalid_argument("grid needs at least one cell per axis");
  if (!(cell_len_x > 0.0) || !(cell_len_y > 0.0)) {
    throw std::invalid_argument("cell side lengths must be positive");
  }
}

void EnvironmentParams::validate() const {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
  if (n_victim < 1) throw std::invalid_argument("n_victim must be at least 1");
  if (population_density < 0.0) throw std::invalid_argument("population density must be >= 0");
}

namespace {

void require_unit_range(const RealGrid& m, const char* name) {
  for (double v : m.data()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " entries must lie in [0,1]");
    }
  }
}

template <typename T>
void require_shape(const Grid<T>& m, const GridGeometry& g, const char* name) {
  if (m.nh() != g.nh || m.nv() != g.nv) {
    throw std::invalid_argument(std::string(name) + " has the wrong shape");
  }
}

}  // namespace

void EnvironmentState::validate(const EnvironmentParams& params) const {
  geometry.validate();
  params.validate();
  require_shape(structure, geometry, "structure");
  require_shape(victim_prob, geometry, "victim_prob");
  require_shape(debris, geometry, "debris");
  require_shape(occupancy, geometry, "occupancy");
  require_shape(wind_speed, geometry, "wind_speed");
  require_shape(wind_dir, geometry, "wind_dir");
  require_shape(perceived_victims, geometry, "perceived_victims");
  require_shape(scanned, geometry, "scanned");
  require_unit_range(structure, "structure");
  require_unit_range(victim_prob, "victim_prob");
  require_unit_range(debris, "debris");
  require_unit_range(occupancy, "occupancy");
  for (const auto& s : scan_certainty) {
    require_shape(s, geometry, "scan_certainty");
    require_unit_range(s, "scan_certainty");
  }
  for (double v : wind_speed.data()) {
    if (!(v >= 0.0)) throw std::invalid_argument("wind speed must be non-negative");
  }
  for (int c : perceived_victims.data()) {
    if (c < 0 || c > params.n_victim) {
      throw std::invalid_argument("perceived victim counts must lie in [0, n_victim]");
    }
  }
}

double update_scan_certainty(double prev, bool scanned, double sigma, double eta) {
  const double decayed = prev - sigma;
  return scanned ? std::max(decayed, eta) : std::max(decayed, 0.0);
}

double update_victim_probability(double prev, bool scanned, int perceived_count, int n_victim,
                                 double scan_certainty) {
  if (!scanned) return prev;
  if (perceived_count > 0) {
    return static_cast<double>(perceived_count) * scan_certainty / static_cast<double>(n_victim);
  }
  return 1.0 - scan_certainty;
}

double update_debris(double prev, bool scanned, double occupancy, double scan_certainty) {
  if (!scanned) return prev;
  if (occupancy > 0.0) return occupancy * scan_certainty;
  return 1.0 - scan_certainty;
}

double estimate_victims(bool scanned, double victim_prob, double population_density,
                        double cell_area, double occupancy) {
  if (scanned) return victim_prob;
  return population_density * cell_area * occupancy;
}

void advance_environment_in_place(EnvironmentState& state, const std::vector<ScanReport>& reports,
                                  const EnvironmentParams& params) {
  const int robots = state.robot_count();
  const std::size_t n = state.victim_prob.size();

  // Best accuracy per (robot, cell) for this step.
  std::vector<std::vector<double>> eta_by_robot(static_cast<std::size_t>(robots));
  std::vector<std::uint8_t> touched(n, 0);
  for (const auto& rep : reports) {
    if (rep.robot < 0 || rep.robot >= robots || !state.geometry.contains(rep.cell)) {
      throw std::out_of_range("scan report references an invalid robot or cell");
    }
    auto& etas = eta_by_robot[static_cast<std::size_t>(rep.robot)];
    if (etas.empty()) etas.assign(n, -1.0);
    const auto idx = state.victim_prob.index(rep.cell.i, rep.cell.j);
    etas[idx] = std::max(etas[idx], rep.accuracy);
    touched[idx] = 1;
  }

  for (int r = 0; r < robots; ++r) {
    auto& cert = state.scan_certainty[static_cast<std::size_t>(r)].data();
    const auto& etas = eta_by_robot[static_cast<std::size_t>(r)];
    if (etas.empty()) {
      for (double& c : cert) c = std::max(c - params.sigma, 0.0);
    } else {
      for (std::size_t idx = 0; idx < n; ++idx) {
        const bool scanned = etas[idx] >= 0.0;
        cert[idx] = update_scan_certainty(cert[idx], scanned, params.sigma, scanned ? etas[idx] : 0.0);
      }
    }
  }

  for (std::size_t idx = 0; idx < n; ++idx) {
    if (!touched[idx]) continue;
    double certainty = 0.0;
    for (int r = 0; r < robots; ++r) {
      const auto& etas = eta_by_robot[static_cast<std::size_t>(r)];
      if (!etas.empty() && etas[idx] >= 0.0) {
        certainty = std::max(certainty, state.scan_certainty[static_cast<std::size_t>(r)].data()[idx]);
      }
    }
    auto& victim = state.victim_prob.data()[idx];
    auto& debris = state.debris.data()[idx];
    victim = update_victim_probability(victim, true, state.perceived_victims.data()[idx],
                                       params.n_victim, certainty);
    debris = update_debris(debris, true, state.occupancy.data()[idx], certainty);
    state.scanned.data()[idx] = 1;
  }
  ++state.global_step;
}

EnvironmentState advance_environment(const EnvironmentState& state,
                                     const std::vector<ScanReport>& reports,
                                     const EnvironmentParams& params) {
  EnvironmentState next = state;
  advance_environment_in_place(next, reports, params);
  return next;
}

RealGrid fused_scan_certainty(const EnvironmentState& state) {
  RealGrid fused(state.geometry.nh, state.geometry.nv, 0.0);
  for (const auto& s : state.scan_certainty) {
    for (std::size_t idx = 0; idx < fused.size(); ++idx) {
      fused.data()[idx] = std::max(fused.data()[idx], s.data()[idx]);
    }
  }
  return fused;
}

RealGrid estimated_victims(const EnvironmentState& state, const EnvironmentParams& params) {
  RealGrid est(state.geometry.nh, state.geometry.nv, 0.0);
  const double area = state.geometry.cell_area();
  for (std::size_t idx = 0; idx < est.size(); ++idx) {
    est.data()[idx] = estimate_victims(state.scanned.data()[idx] != 0, state.victim_prob.data()[idx],
                                       params.population_density, area, state.debris.data()[idx]);
  }
  return est;
}

GridGeometry coarsen_geometry(const GridGeometry& fine, const CoarseningSpec& spec) {
  if (spec.factor <= 0) throw std::invalid_argument("coarsening factor must be positive");
  GridGeometry g;
  g.nh = (fine.nh + spec.factor - 1) / spec.factor;
  g.nv = (fine.nv + spec.factor - 1) / spec.factor;
  g.cell_len_x = fine.cell_len_x * spec.factor;
  g.cell_len_y = fine.cell_len_y * spec.factor;
  return g;
}

template <typename T>
Grid<T> coarsen(const Grid<T>& fine, const CoarseningSpec& spec, Pooling pooling) {
  const int f = spec.factor;
  if (f <= 0) throw std::invalid_argument("coarsening factor must be positive");
  if (f == 1) return fine;
  const int ch = (fine.nh() + f - 1) / f;
  const int cv = (fine.nv() + f - 1) / f;
  Grid<T> out(ch, cv);
  for (int ci = 0; ci < ch; ++ci) {
    for (int cj = 0; cj < cv; ++cj) {
      const int i1 = std::min(fine.nh(), (ci + 1) * f);
      const int j1 = std::min(fine.nv(), (cj + 1) * f);
      if (pooling == Pooling::Max) {
        T best = fine(ci * f, cj * f);
        for (int i = ci * f; i < i1; ++i)
          for (int j = cj * f; j < j1; ++j) best = std::max(best, fine(i, j));
        out(ci, cj) = best;
      } else {
        double sum = 0.0;
        int count = 0;
        for (int i = ci * f; i < i1; ++i)
          for (int j = cj * f; j < j1; ++j) {
            sum += static_cast<double>(fine(i, j));
            ++count;
          }
        out(ci, cj) = static_cast<T>(sum / count);
      }
    }
  }
  return out;
}

template Grid<double> coarsen(const Grid<double>&, const CoarseningSpec&, Pooling);
template Grid<int> coarsen(const Grid<int>&, const CoarseningSpec&, Pooling);
template Grid<std::uint8_t> coarsen(const Grid<std::uint8_t>&, const CoarseningSpec&, Pooling);

std::vector<Cell> fine_cells_of(Cell coarse, const GridGeometry& fine, const CoarseningSpec& spec) {
  std::vector<Cell> cells;
  const int f = spec.factor;
  const int i1 = std::min(fine.nh, (coarse.i + 1) * f);
  const int j1 = std::min(fine.nv, (coarse.j + 1) * f);
  for (int i = coarse.i * f; i < i1; ++i)
    for (int j = coarse.j * f; j < j1; ++j) cells.push_back({i, j});
  return cells;
}

namespace {

template <typename T, typename Fmt>
std::string to_csv(const Grid<T>& m, Fmt fmt) {
  std::string out = "i,j,value\n";
  for (int i = 0; i < m.nh(); ++i) {
    for (int j = 0; j < m.nv(); ++j) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      out += fmt(m(i, j));
      out += '\n';
    }
  }
  return out;
}

}  // namespace

std::string matrix_to_csv(const RealGrid& m) {
  return to_csv(m, [](double v) { return format_double(v); });
}

std::string matrix_to_csv(const Grid<int>& m) {
  return to_csv(m, [](int v) { return std::to_string(v); });
}

}  // namespace mpfc
