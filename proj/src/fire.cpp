#include "mpfc/fire.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpfc/rng.hpp"

namespace mpfc {

void FireModelParams::validate() const {
  if (!(k_2min > 0 && k_2min < k_10min)) {
    throw std::invalid_argument("fire timing requires 0 < k_2min < k_10min");
  }
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::invalid_argument("zeta must lie in (0,1)");
  if (wind_radius < 1) throw std::invalid_argument("wind radius must be at least 1");
  if (!(low_wind <= high_wind)) throw std::invalid_argument("wind tier cutoffs must be ordered");
}

FireModelParams FireModelParams::from_constants(double c_fs1, double c_fs2, double c_wm1,
                                                double c_wm2, double c_wmd, double ignition_s,
                                                double burnout_s, double step_s, int wind_radius,
                                                double zeta) {
  FireModelParams p;
  p.alpha1 = c_fs1;
  p.alpha2 = c_fs2;
  p.alpha3 = c_wm1;
  p.alpha4 = c_wm2;
  p.c_w1 = c_wm1;
  p.c_w2 = c_wmd;
  p.k_2min = static_cast<int>(std::ceil(ignition_s / step_s - 1e-9));
  p.k_10min = static_cast<int>(std::ceil(burnout_s / step_s - 1e-9));
  p.wind_radius = wind_radius;
  p.zeta = zeta;
  return p;
}

int FireGrid::count(FireState s) const {
  return static_cast<int>(std::count(state.data().begin(), state.data().end(), s));
}

int spread_radius(double wind_speed, const FireModelParams& params) {
  int tier = 3;
  if (wind_speed < params.low_wind) {
    tier = 1;
  } else if (wind_speed <= params.high_wind) {
    tier = 2;
  }
  return std::min(tier, params.wind_radius);
}

std::vector<Cell> spread_neighbourhood(double wind_speed, const FireModelParams& params) {
  const int r = spread_radius(wind_speed, params);
  std::vector<Cell> offsets;
  for (int di = -r; di <= r; ++di)
    for (int dj = -r; dj <= r; ++dj)
      if (di != 0 || dj != 0) offsets.push_back({di, dj});
  return offsets;
}

double fire_ability(long k, long k_fire, int k_2min, int k_10min) {
  const double elapsed = static_cast<double>(k - k_fire);
  const double k2 = k_2min;
  const double k10 = k_10min;
  if (elapsed < k2 || elapsed > k10) return 0.0;
  const double breakpoint = 0.2 * k10 + 0.8 * k2;
  if (elapsed <= breakpoint) return (4.0 * elapsed + 0.2 * k10 - 4.2 * k2) / (k10 - k2);
  return 1.25 * (k10 - elapsed) / (k10 - k2);
}

namespace {

double circular_mean2(double a, double b) {
  return std::atan2(std::sin(a) + std::sin(b), std::cos(a) + std::cos(b));
}

// Source-specific factors shared by every target of one burning cell.
double pair_probability(Cell source, Cell target, const EnvironmentState& env,
                        const FireModelParams& params, double ability) {
  const double structure = env.structure[target];
  const double occupancy = env.occupancy[target];
  const double base = params.alpha1 * structure * occupancy * ability;
  if (base == 0.0) return 0.0;
  const double delta = env.geometry.squared_distance(source, target);
  const double v = 0.5 * (env.wind_speed[source] + env.wind_speed[target]);
  const double mean_dir = circular_mean2(env.wind_dir[source], env.wind_dir[target]);
  const double propagation = std::atan2((target.j - source.j) * env.geometry.cell_len_y,
                                        (target.i - source.i) * env.geometry.cell_len_x);
  const double psi = mean_dir - propagation;
  return base * std::exp(params.alpha2 * delta + params.alpha3 * v + params.alpha4 * v * std::cos(psi));
}

}  // namespace

double spread_probability(Cell source, Cell target, const EnvironmentState& env,
                          const FireGrid& fire, const FireModelParams& params, long k) {
  if (fire.state[source] != FireState::Burning) return 0.0;
  const double ability = fire_ability(k, fire.ignition_step[source], params.k_2min, params.k_10min);
  return pair_probability(source, target, env, params, ability);
}

namespace {

template <typename Visit>
void for_each_spread(const FireGrid& fire, const EnvironmentState& env,
                     const FireModelParams& params, long k, bool flammable_only, Visit visit) {
  for (int i = 0; i < fire.nh(); ++i) {
    for (int j = 0; j < fire.nv(); ++j) {
      if (fire.state(i, j) != FireState::Burning) continue;
      const Cell source{i, j};
      const double ability =
          fire_ability(k, fire.ignition_step(i, j), params.k_2min, params.k_10min);
      if (ability <= 0.0) continue;
      const int r = spread_radius(env.wind_speed(i, j), params);
      const int li = std::max(0, i - r), hi = std::min(fire.nh() - 1, i + r);
      const int lj = std::max(0, j - r), hj = std::min(fire.nv() - 1, j + r);
      for (int ti = li; ti <= hi; ++ti) {
        for (int tj = lj; tj <= hj; ++tj) {
          if (ti == i && tj == j) continue;
          if (flammable_only && fire.state(ti, tj) != FireState::Flammable) continue;
          const Cell target{ti, tj};
          visit(target, pair_probability(source, target, env, params, ability));
        }
      }
    }
  }
}

}  // namespace

RealGrid spread_probability_map(const FireGrid& fire, const EnvironmentState& env,
                                const FireModelParams& params, long k) {
  RealGrid pi(fire.nh(), fire.nv(), 0.0);
  for_each_spread(fire, env, params, k, false, [&](Cell t, double p) { pi[t] += p; });
  for (double& v : pi.data()) v = std::min(v, 1.0);
  return pi;
}

void step_fire_in_place(FireGrid& fire, const EnvironmentState& env, const FireModelParams& params,
                        long k, IgnitionMode mode, std::uint64_t seed) {
  for (std::size_t idx = 0; idx < fire.state.size(); ++idx) {
    auto& s = fire.state.data()[idx];
    const long kf = fire.ignition_step.data()[idx];
    if (s == FireState::Catching && k >= kf + params.k_2min) {
      s = FireState::Burning;
    } else if (s == FireState::Burning && k >= kf + params.k_10min) {
      s = FireState::Extinguished;
    }
  }

  RealGrid pi(fire.nh(), fire.nv(), 0.0);
  bool any = false;
  for_each_spread(fire, env, params, k, true, [&](Cell t, double p) {
    pi[t] += p;
    any = true;
  });
  if (!any) return;

  for (int i = 0; i < fire.nh(); ++i) {
    for (int j = 0; j < fire.nv(); ++j) {
      const double p = std::min(pi(i, j), 1.0);
      if (p <= 0.0 || fire.state(i, j) != FireState::Flammable) continue;
      bool ignite = false;
      if (mode == IgnitionMode::Threshold) {
        ignite = p >= params.zeta;
      } else {
        const auto stream = static_cast<std::uint64_t>(fire.state.index(i, j));
        ignite = counter_uniform(seed, stream, static_cast<std::uint64_t>(k)) < p;
      }
      if (ignite) {
        fire.state(i, j) = FireState::Catching;
        fire.ignition_step(i, j) = static_cast<int>(k);
      }
    }
  }
}

FireGrid step_fire(const FireGrid& fire, const EnvironmentState& env, const FireModelParams& params,
                   long k, IgnitionMode mode, std::uint64_t seed) {
  FireGrid next = fire;
  step_fire_in_place(next, env, params, k, mode, seed);
  return next;
}

namespace {

// Chebyshev-disc search around (i, j) for the given state.
bool any_within(const Grid<FireState>& fire, int i, int j, int radius, FireState s) {
  const int li = std::max(0, i - radius), hi = std::min(fire.nh() - 1, i + radius);
  const int lj = std::max(0, j - radius), hj = std::min(fire.nv() - 1, j + radius);
  for (int a = li; a <= hi; ++a)
    for (int b = lj; b <= hj; ++b)
      if (fire(a, b) == s) return true;
  return false;
}

}  // namespace

RealGrid fire_risk_time(const Grid<FireState>& fire, const RealGrid& wind_speed,
                        const FireModelParams& params) {
  RealGrid risk(fire.nh(), fire.nv(), kNoFireRisk);
  constexpr auto B = FireState::Burning;
  constexpr auto C = FireState::Catching;
  for (int i = 0; i < fire.nh(); ++i) {
    for (int j = 0; j < fire.nv(); ++j) {
      const auto s = fire(i, j);
      if (s == FireState::NonFlammable || s == FireState::Extinguished) continue;
      const double v = wind_speed(i, j);
      double& t = risk(i, j);
      if (v < params.low_wind) {
        if (any_within(fire, i, j, 1, B)) {
          t = 0.0;
        } else if (any_within(fire, i, j, 1, C) || any_within(fire, i, j, 2, B)) {
          t = std::min(t, 2.0);
        } else if (any_within(fire, i, j, 2, C) || any_within(fire, i, j, 3, B)) {
          t = std::min(t, 4.0);
        } else if (any_within(fire, i, j, 3, C)) {
          t = std::min(t, 6.0);
        }
      } else if (v <= params.high_wind) {
        if (any_within(fire, i, j, 2, B)) {
          t = 0.0;
        } else if (any_within(fire, i, j, 2, C)) {
          t = std::min(t, 2.0);
        }
      } else {
        if (any_within(fire, i, j, 3, B)) {
          t = 0.0;
        } else if (any_within(fire, i, j, 1, C)) {
          t = std::min(t, 2.0);
        }
      }
    }
  }
  return risk;
}

double downwind_direction(double wind_speed, double wind_dir, Cell cell, Cell fire, double c_w1,
                          double c_w2) {
  const double theta_fire = std::atan2(static_cast<double>(cell.j - fire.j),
                                       static_cast<double>(cell.i - fire.i));
  return std::exp(wind_speed * (c_w1 + c_w2 * (std::cos(wind_dir - theta_fire) - 1.0)));
}

double downwind_distance(Cell cell, Cell fire, int nh, int nv) {
  const double di = cell.i - fire.i;
  const double dj = cell.j - fire.j;
  return 1.0 - std::sqrt(di * di + dj * dj) / std::sqrt(static_cast<double>(nh) * nh + static_cast<double>(nv) * nv);
}

RealGrid downwind_map(const Grid<FireState>& fire, const RealGrid& wind_speed,
                      const RealGrid& wind_dir, const FireModelParams& params) {
  RealGrid m(fire.nh(), fire.nv(), 0.0);
  std::vector<Cell> fires;
  for (int i = 0; i < fire.nh(); ++i)
    for (int j = 0; j < fire.nv(); ++j)
      if (fire(i, j) == FireState::Catching || fire(i, j) == FireState::Burning) fires.push_back({i, j});
  if (!fires.empty()) {
    for (int i = 0; i < fire.nh(); ++i) {
      for (int j = 0; j < fire.nv(); ++j) {
        double best = 0.0;
        for (const Cell f : fires) {
          const double score =
              downwind_direction(wind_speed(i, j), wind_dir(i, j), {i, j}, f, params.c_w1, params.c_w2) *
              downwind_distance({i, j}, f, fire.nh(), fire.nv());
          best = std::max(best, score);
        }
        m(i, j) = std::clamp(best, 0.0, 1.0);
      }
    }
  }
  for (double& v : m.data()) v = 1.0 - v;
  return m;
}

namespace {

int activity_rank(FireState s) {
  switch (s) {
    case FireState::Burning:
      return 4;
    case FireState::Catching:
      return 3;
    case FireState::Flammable:
      return 2;
    case FireState::Extinguished:
      return 1;
    case FireState::NonFlammable:
      break;
  }
  return 0;
}

}  // namespace

Grid<FireState> coarsen_fire(const Grid<FireState>& fine, const CoarseningSpec& spec) {
  const int f = spec.factor;
  if (f <= 0) throw std::invalid_argument("coarsening factor must be positive");
  if (f == 1) return fine;
  const int ch = (fine.nh() + f - 1) / f;
  const int cv = (fine.nv() + f - 1) / f;
  Grid<FireState> out(ch, cv, FireState::NonFlammable);
  for (int i = 0; i < fine.nh(); ++i) {
    for (int j = 0; j < fine.nv(); ++j) {
      FireState& c = out(i / f, j / f);
      if (activity_rank(fine(i, j)) > activity_rank(c)) c = fine(i, j);
    }
  }
  return out;
}

std::string fire_frame_csv(const FireGrid& fire) {
  Grid<int> codes(fire.nh(), fire.nv());
  for (std::size_t idx = 0; idx < codes.size(); ++idx) {
    codes.data()[idx] = static_cast<int>(fire.state.data()[idx]);
  }
  return matrix_to_csv(codes);
}

}  // namespace mpfc
