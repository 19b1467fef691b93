#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpfc/environment.hpp"
#include "mpfc/fire.hpp"
#include "mpfc/robot.hpp"

namespace mpfc {

enum class StructureMap { Uniform, Perlin };
enum class DebrisMap { Uniform, Gaussian };
enum class IgnitionRule { None, CentreBlock, Random, BottomLeft, Centre };

struct ScenarioSpec {
  std::string name = "small-static";
  int nh = 40;
  int nv = 40;
  double cell_len = 10.0;  // metres
  int coarsening = 5;

  EnvironmentParams env;
  FireModelParams fire;
  RobotParams robot;
  int robots = 2;

  double wind_speed = 0.0;
  double wind_dir = -0.7853981633974483;  // -pi/4

  StructureMap structure_map = StructureMap::Uniform;
  double structure_value = 1.0;
  int perlin_lattice = 8;  // cells between gradient lattice points
  DebrisMap debris_map = DebrisMap::Uniform;
  double debris_value = 0.5;
  int population_centres = 0;

  IgnitionRule ignition = IgnitionRule::None;
  int ignition_count = 0;  // cells for the Random rule

  void validate() const;
};

/// Known preset names: small-static, small-dynamic, complex, large-local-map,
/// regression-wind, regression-spread, regression-travel.
ScenarioSpec preset(const std::string& name);
std::vector<std::string> preset_names();

struct Scenario {
  ScenarioSpec spec;
  EnvironmentState env;
  FireGrid fire;
  std::vector<RobotState> robots;  // positions on the coarse grid
};

/// Pure function of (spec, seed).
Scenario build_scenario(const ScenarioSpec& spec, std::uint64_t seed);

/// Per-run seeds expanded from a master seed; shared by every architecture.
std::vector<std::uint64_t> seed_sequence(int n_sim, std::uint64_t master_seed);

/// Derived seed for the plant's stochastic fire draws in a run.
std::uint64_t fire_seed(std::uint64_t run_seed);

/// 2-D gradient noise in roughly [-1, 1] with a seed-derived permutation.
RealGrid perlin_noise(int nh, int nv, int lattice, std::uint64_t seed);

/// Sum of isotropic Gaussian bumps, scaled to a maximum of 1.
RealGrid gaussian_centres(int nh, int nv, int centres, std::uint64_t seed);

/// Poisson draw by inverse CDF.
int poisson_draw(double lambda, double u);

}  // namespace mpfc
