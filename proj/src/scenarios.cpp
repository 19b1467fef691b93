#include "mpfc/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mpfc/rng.hpp"

namespace mpfc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent generator streams per construction stage.
enum Stream : std::uint64_t { kMapStream = 1, kDebrisStream, kVictimStream, kIgnitionStream, kFireStream };

std::uint64_t stream_seed(std::uint64_t seed, Stream s) {
  return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(s)));
}

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

}  // namespace

void ScenarioSpec::validate() const {
  if (nh < 1 || nv < 1) throw std::invalid_argument("scenario dimensions must be positive");
  if (!(cell_len > 0.0)) throw std::invalid_argument("cell length must be positive");
  if (coarsening < 1) throw std::invalid_argument("coarsening factor must be positive");
  if (robots < 1) throw std::invalid_argument("at least one robot is required");
  const int coarse_h = (nh + coarsening - 1) / coarsening;
  if (robots > coarse_h) throw std::invalid_argument("robot row does not fit on the coarse grid");
  if (!(wind_speed >= 0.0)) throw std::invalid_argument("wind speed must be non-negative");
  if (!(structure_value >= 0.0 && structure_value <= 1.0)) {
    throw std::invalid_argument("structure value must lie in [0,1]");
  }
  if (!(debris_value >= 0.0 && debris_value <= 1.0)) {
    throw std::invalid_argument("debris value must lie in [0,1]");
  }
  if (perlin_lattice < 1) throw std::invalid_argument("perlin lattice must be positive");
  if (debris_map == DebrisMap::Gaussian && population_centres < 1) {
    throw std::invalid_argument("gaussian debris needs at least one population centre");
  }
  if (ignition == IgnitionRule::Random && ignition_count < 1) {
    throw std::invalid_argument("random ignition needs at least one cell");
  }
  env.validate();
  fire.validate();
  robot.validate();
}

ScenarioSpec preset(const std::string& name) {
  ScenarioSpec s;
  s.name = name;
  if (name == "small-static") return s;
  if (name == "small-dynamic") {
    s.ignition = IgnitionRule::CentreBlock;
    return s;
  }
  if (name == "complex") {
    s.nh = s.nv = 60;
    s.wind_speed = 1.0;
    s.wind_dir = kPi / 4.0;
    s.fire = FireModelParams::from_constants(0.8, 2.5, 0.1, 1.5, 0.9, 120.0, 600.0, 15.0, 3, 0.5);
    s.structure_map = StructureMap::Perlin;
    s.debris_map = DebrisMap::Gaussian;
    s.population_centres = 3;
    s.ignition = IgnitionRule::Random;
    s.ignition_count = 2;
    return s;
  }
  if (name == "large-local-map") {
    s.nh = s.nv = 200;
    s.debris_map = DebrisMap::Gaussian;
    s.population_centres = 2;
    s.ignition = IgnitionRule::BottomLeft;
    return s;
  }
  if (name == "regression-wind") {
    s.nh = s.nv = 9;
    s.coarsening = 1;
    s.robots = 1;
    s.wind_speed = 6.0;
    s.wind_dir = kPi / 4.0;
    s.ignition = IgnitionRule::Centre;
    return s;
  }
  if (name == "regression-spread") {
    s.nh = s.nv = 20;
    s.coarsening = 1;
    s.robots = 1;
    s.wind_speed = 2.0;
    s.wind_dir = kPi / 4.0;
    s.structure_value = 0.2;
    s.fire = FireModelParams::from_constants(0.1, 1.2, 0.15, 1.0, 1.0, 120.0, 600.0, 15.0, 3, 0.5);
    s.ignition = IgnitionRule::Centre;
    return s;
  }
  if (name == "regression-travel") {
    s.nh = s.nv = 10;
    s.coarsening = 1;
    s.robots = 1;
    s.wind_speed = 2.0;
    s.wind_dir = kPi / 4.0;
    return s;
  }
  throw std::invalid_argument("unknown scenario preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"small-static",   "small-dynamic",    "complex",         "large-local-map",
          "regression-wind", "regression-spread", "regression-travel"};
}

RealGrid perlin_noise(int nh, int nv, int lattice, std::uint64_t seed) {
  std::array<int, 256> perm;
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (int n = 255; n > 0; --n) std::swap(perm[static_cast<std::size_t>(n)], perm[static_cast<std::size_t>(rng.uniform_int(0, n))]);
  auto gradient = [&](int gx, int gy) {
    const int h = perm[static_cast<std::size_t>((perm[static_cast<std::size_t>(gx & 255)] + gy) & 255)];
    const double a = 2.0 * kPi * h / 256.0;
    return std::pair<double, double>{std::cos(a), std::sin(a)};
  };
  RealGrid out(nh, nv, 0.0);
  for (int i = 0; i < nh; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double x = (i + 0.5) / lattice;
      const double y = (j + 0.5) / lattice;
      const int x0 = static_cast<int>(std::floor(x));
      const int y0 = static_cast<int>(std::floor(y));
      const double fx = x - x0;
      const double fy = y - y0;
      auto dot = [&](int gx, int gy) {
        const auto [cx, cy] = gradient(gx, gy);
        return cx * (x - gx) + cy * (y - gy);
      };
      const double u = fade(fx);
      const double v = fade(fy);
      const double n0 = dot(x0, y0) + u * (dot(x0 + 1, y0) - dot(x0, y0));
      const double n1 = dot(x0, y0 + 1) + u * (dot(x0 + 1, y0 + 1) - dot(x0, y0 + 1));
      out(i, j) = std::sqrt(2.0) * (n0 + v * (n1 - n0));
    }
  }
  return out;
}

RealGrid gaussian_centres(int nh, int nv, int centres, std::uint64_t seed) {
  Rng rng(seed);
  const double sx = nh / 8.0;
  const double sy = nv / 8.0;
  std::vector<std::pair<double, double>> means;
  for (int c = 0; c < centres; ++c) means.emplace_back(rng.uniform(0.0, nh), rng.uniform(0.0, nv));
  RealGrid out(nh, nv, 0.0);
  double peak = 0.0;
  for (int i = 0; i < nh; ++i) {
    for (int j = 0; j < nv; ++j) {
      double v = 0.0;
      for (const auto& [mx, my] : means) {
        const double dx = (i + 0.5 - mx) / sx;
        const double dy = (j + 0.5 - my) / sy;
        v += std::exp(-0.5 * (dx * dx + dy * dy));
      }
      out(i, j) = v;
      peak = std::max(peak, v);
    }
  }
  if (peak > 0.0) {
    for (double& v : out.data()) v = std::min(v / peak, 1.0);
  }
  return out;
}

int poisson_draw(double lambda, double u) {
  if (lambda <= 0.0) return 0;
  double p = std::exp(-lambda);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < 1000) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

namespace {

void ignite(FireGrid& fire, Cell c, const FireModelParams& params) {
  if (!fire.state.contains(c) || fire.state[c] == FireState::NonFlammable) return;
  fire.state[c] = FireState::Burning;
  // Burning cells at the start have already passed the ignition delay.
  fire.ignition_step[c] = -params.k_2min;
}

}  // namespace

Scenario build_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
  spec.validate();
  Scenario sc;
  sc.spec = spec;
  auto& env = sc.env;
  env.geometry = GridGeometry{spec.nh, spec.nv, spec.cell_len, spec.cell_len};
  const int nh = spec.nh, nv = spec.nv;

  if (spec.structure_map == StructureMap::Perlin) {
    RealGrid noise = perlin_noise(nh, nv, spec.perlin_lattice, stream_seed(seed, kMapStream));
    const auto [lo, hi] = std::minmax_element(noise.data().begin(), noise.data().end());
    const double span = (*hi > *lo) ? *hi - *lo : 1.0;
    env.structure = RealGrid(nh, nv, 0.0);
    for (std::size_t n = 0; n < noise.size(); ++n) {
      const double t = (noise.data()[n] - *lo) / span;
      env.structure.data()[n] = t < 1.0 / 3.0 ? 0.0 : (t < 2.0 / 3.0 ? 0.6 : 1.0);
    }
  } else {
    env.structure = RealGrid(nh, nv, spec.structure_value);
  }

  if (spec.debris_map == DebrisMap::Gaussian) {
    env.occupancy = gaussian_centres(nh, nv, spec.population_centres, stream_seed(seed, kDebrisStream));
  } else {
    env.occupancy = RealGrid(nh, nv, spec.debris_value);
  }
  env.debris = env.occupancy;
  env.victim_prob = RealGrid(nh, nv, 0.0);
  env.wind_speed = RealGrid(nh, nv, spec.wind_speed);
  env.wind_dir = RealGrid(nh, nv, spec.wind_dir);
  env.scanned = Grid<std::uint8_t>(nh, nv, 0);
  env.scan_certainty.assign(static_cast<std::size_t>(spec.robots), RealGrid(nh, nv, 0.0));
  env.global_step = 0;

  env.perceived_victims = Grid<int>(nh, nv, 0);
  Rng victims(stream_seed(seed, kVictimStream));
  const double area = env.geometry.cell_area();
  for (std::size_t n = 0; n < env.perceived_victims.size(); ++n) {
    const double lambda = spec.env.population_density * area * env.occupancy.data()[n];
    env.perceived_victims.data()[n] = std::min(poisson_draw(lambda, victims.uniform()), spec.env.n_victim);
  }

  sc.fire = FireGrid(nh, nv, FireState::Flammable);
  for (std::size_t n = 0; n < env.structure.size(); ++n) {
    if (env.structure.data()[n] == 0.0) sc.fire.state.data()[n] = FireState::NonFlammable;
  }
  switch (spec.ignition) {
    case IgnitionRule::None:
      break;
    case IgnitionRule::Centre:
      ignite(sc.fire, {nh / 2, nv / 2}, spec.fire);
      break;
    case IgnitionRule::CentreBlock: {
      // Four cells whose lower-left corner is (20, 21) in 1-based indices on 40x40.
      const int ci = nh / 2 - 1;
      const int cj = nv / 2;
      for (int di = 0; di < 2; ++di)
        for (int dj = 0; dj < 2; ++dj) ignite(sc.fire, {ci + di, cj + dj}, spec.fire);
      break;
    }
    case IgnitionRule::BottomLeft: {
      const int off = std::max(1, nh / 40);
      for (int di = 0; di < 2; ++di)
        for (int dj = 0; dj < 2; ++dj) ignite(sc.fire, {off + di, off + dj}, spec.fire);
      break;
    }
    case IgnitionRule::Random: {
      Rng rng(stream_seed(seed, kIgnitionStream));
      std::vector<Cell> candidates;
      for (int i = 0; i < nh; ++i)
        for (int j = 0; j < nv; ++j)
          if (sc.fire.state(i, j) == FireState::Flammable) candidates.push_back({i, j});
      for (int n = 0; n < spec.ignition_count && !candidates.empty(); ++n) {
        const auto pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(candidates.size()) - 1));
        ignite(sc.fire, candidates[pick], spec.fire);
        candidates.erase(candidates.begin() + static_cast<long>(pick));
      }
      break;
    }
  }

  const GridGeometry coarse = coarsen_geometry(env.geometry, CoarseningSpec{spec.coarsening});
  for (int r = 0; r < spec.robots; ++r) {
    sc.robots.push_back(make_robot(r, {r, 0}, spec.robot, coarse));
  }
  env.validate(spec.env);
  return sc;
}

std::vector<std::uint64_t> seed_sequence(int n_sim, std::uint64_t master_seed) {
  if (n_sim < 1) throw std::invalid_argument("n_sim must be at least 1");
  std::vector<std::uint64_t> seeds;
  std::uint64_t state = master_seed;
  while (static_cast<int>(seeds.size()) < n_sim) {
    state += 0x9e3779b97f4a7c15ULL;
    const std::uint64_t s = splitmix64(state) >> 1;  // keep seeds printable as signed 64-bit
    if (std::find(seeds.begin(), seeds.end(), s) == seeds.end()) seeds.push_back(s);
  }
  return seeds;
}

std::uint64_t fire_seed(std::uint64_t run_seed) { return stream_seed(run_seed, kFireStream); }

}  // namespace mpfc
