#include "mpfc/fuzzy.hpp"

#include <algorithm>
#include <cmath>

#include "mpfc/fire.hpp"

namespace mpfc {

double MembershipFunction::degree(double x) const {
  if (x < a || x > c) return 0.0;
  if (x == b) return 1.0;
  if (x < b) return (b > a) ? (x - a) / (b - a) : 1.0;
  return (c > b) ? (c - x) / (c - b) : 1.0;
}

std::array<MembershipFunction, 3> default_membership_functions() {
  return {{{"low", 0.0, 0.0, 0.5}, {"medium", 0.0, 0.5, 1.0}, {"high", 0.5, 1.0, 1.0}}};
}

Theta default_theta() {
  return {-1, 1, -1, -1, 0.0, -1, 1, -1, -1, 0.5, -1, 1, -1, -1, 1.0};
}

double rule_strength(const FuzzyController& flc, int rule, const FlcInputs& x) {
  const auto& mf = flc.mfs[static_cast<std::size_t>(rule)];
  if (flc.connective == Connective::Product) {
    double w = 1.0;
    for (double v : x) w *= mf.degree(v);
    return w;
  }
  double w = 0.0;
  for (double v : x) w = std::max(w, mf.degree(v));
  return w;
}

double tsk_evaluate(const FuzzyController& flc, const FlcInputs& x) {
  double num = 0.0;
  double den = 0.0;
  for (int r = 0; r < kRules; ++r) {
    const double w = rule_strength(flc, r, x);
    if (w == 0.0) continue;
    const double* p = flc.theta.data() + r * kSurfaceSize;
    double f = p[kInputs];
    for (int n = 0; n < kInputs; ++n) f += p[n] * x[static_cast<std::size_t>(n)];
    num += w * f;
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

double response_time_max(const GridGeometry& grid, double v_max, MeanWind wind, double t_scan) {
  double longest = 0.0;
  const Cell origin{grid.nh - 1, grid.nv - 1};
  // Travel time depends only on the displacement under uniform wind.
  for (int i = 0; i < 2 * grid.nh - 1; ++i) {
    for (int j = 0; j < 2 * grid.nv - 1; ++j) {
      const auto t = travel_time(origin, {i, j}, GridGeometry{2 * grid.nh - 1, 2 * grid.nv - 1,
                                                              grid.cell_len_x, grid.cell_len_y},
                                 v_max, wind);
      if (t) longest = std::max(longest, *t);
    }
  }
  return longest + t_scan;
}

std::optional<double> response_time(const RobotState& robot, Cell candidate,
                                    const GridGeometry& grid, MeanWind wind) {
  const double scan_left = std::max(robot.t_scan, 0.0);
  if (robot.task == Task::Travel) {
    const auto t = travel_time(robot.target, candidate, grid, robot.params.v_max, wind);
    if (!t) return std::nullopt;
    return std::max(robot.t_travel, 0.0) + scan_left + *t;
  }
  const auto t = travel_time(robot.position, candidate, grid, robot.params.v_max, wind);
  if (!t) return std::nullopt;
  return scan_left + *t;
}

std::optional<FlcInputs> compute_inputs(const RobotState& robot, Cell candidate, const FlcView& view,
                                        MeanWind wind) {
  const auto t = response_time(robot, candidate, view.grid, wind);
  if (!t) return std::nullopt;
  const auto& scan = view.scan[static_cast<std::size_t>(robot.id)];
  FlcInputs x{*t / view.t_response_max, view.victim[candidate], view.risk[candidate] / kNoFireRisk,
              scan[candidate]};
  for (double& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

LocalWindow local_window(Cell centre, int r_local, int nh, int nv) {
  LocalWindow w;
  w.i0 = std::max(0, centre.i - r_local);
  w.i1 = std::min(nh, centre.i + r_local + 1);
  w.j0 = std::max(0, centre.j - r_local);
  w.j1 = std::min(nv, centre.j + r_local + 1);
  return w;
}

RealGrid local_slice(const RealGrid& m, const LocalWindow& w) {
  RealGrid out(w.width(), w.height());
  for (int i = w.i0; i < w.i1; ++i)
    for (int j = w.j0; j < w.j1; ++j) out(i - w.i0, j - w.j0) = m(i, j);
  return out;
}

void restore(RealGrid& global, const RealGrid& local, const LocalWindow& w) {
  for (int i = w.i0; i < w.i1; ++i)
    for (int j = w.j0; j < w.j1; ++j) global(i, j) = local(i - w.i0, j - w.j0);
}

AttractionMap attraction_map(const FuzzyController& flc, const RobotState& robot, const FlcView& view,
                             std::optional<int> r_local) {
  const int nh = view.grid.nh;
  const int nv = view.grid.nv;
  AttractionMap map{RealGrid(nh, nv, 0.0), Grid<std::uint8_t>(nh, nv, 0)};
  const LocalWindow window =
      r_local ? local_window(robot.position, *r_local, nh, nv) : LocalWindow{0, nh, 0, nv};

  std::vector<Cell> feasible;
  for (const Cell c : feasible_set(robot.position, robot.params.v_max, view.t_ctrl, view.grid)) {
    if (window.contains(c)) feasible.push_back(c);
  }
  const MeanWind wind = mean_wind(view.wind_speed, view.wind_dir, feasible);

  RealGrid local(window.width(), window.height(), 0.0);
  for (const Cell c : feasible) {
    const auto x = compute_inputs(robot, c, view, wind);
    if (!x) continue;
    local(c.i - window.i0, c.j - window.j0) = tsk_evaluate(flc, *x);
    map.feasible[c] = 1;
  }
  restore(map.value, local, window);
  return map;
}

std::vector<OrderingChain> default_ordering() { return {{5, 10, 15}}; }

std::vector<OrderingChain> centred_triples(const std::vector<int>& indices) {
  std::vector<OrderingChain> chains;
  for (int i : indices) chains.push_back({i - 1, i, i + 1});
  return chains;
}

bool check_theta_constraints(const std::vector<double>& theta, double lower, double upper,
                             const std::vector<OrderingChain>& ordering) {
  for (double v : theta) {
    if (!(v >= lower && v <= upper)) return false;
  }
  for (const auto& chain : ordering) {
    for (std::size_t n = 1; n < chain.size(); ++n) {
      const int a = chain[n - 1] - 1;
      const int b = chain[n] - 1;
      if (a < 0 || b < 0 || a >= static_cast<int>(theta.size()) || b >= static_cast<int>(theta.size())) {
        return false;
      }
      if (!(theta[static_cast<std::size_t>(a)] < theta[static_cast<std::size_t>(b)])) return false;
    }
  }
  return true;
}

bool check_theta_constraints(const Theta& theta, double lower, double upper,
                             const std::vector<OrderingChain>& ordering) {
  return check_theta_constraints(std::vector<double>(theta.begin(), theta.end()), lower, upper, ordering);
}

}  // namespace mpfc
