#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mpfc {

struct Budget {
  int max_evaluations = 100;
  int max_iterations = 100;  // pattern-search iterations or GA generations
};

/// One objective call as seen by the optimiser.
struct TraceEntry {
  int evaluation = 0;
  std::string candidate_hash;
  double value = 0.0;
};

template <typename X>
struct OptimResult {
  X x;
  double f = 0.0;             // NaN when nothing was evaluated
  int evaluations = 0;
  int iterations = 0;
  std::vector<double> best_so_far;  // one entry per evaluation
  std::vector<TraceEntry> trace;
};

using RealObjective = std::function<double(const std::vector<double>&)>;
using RealConstraint = std::function<bool(const std::vector<double>&)>;

struct PatternSearchOptions {
  Budget budget;
  double initial_mesh = 0.25;  // fraction of (upper - lower)
  double expansion = 2.0;
  double contraction = 0.5;
  double max_mesh = 1.0;       // fraction of (upper - lower)
  double mesh_tolerance = 1e-6;
  bool record_trace = false;
};

/// Generalized pattern search over the box [lower, upper] with complete
/// coordinate polling. Candidates rejected by `feasible` are never evaluated.
/// With a zero evaluation budget x0 is returned unevaluated.
OptimResult<std::vector<double>> pattern_search(const RealObjective& f, std::vector<double> x0,
                                                const std::vector<double>& lower,
                                                const std::vector<double>& upper,
                                                const PatternSearchOptions& options,
                                                const RealConstraint& feasible = nullptr);

using IntObjective = std::function<double(const std::vector<int>&)>;

struct GeneticOptions {
  Budget budget;
  int population = 100;
  int tournament = 2;
  double crossover_rate = 0.8;
  double mutation_rate = -1.0;  // negative selects 1/dim
  int elite = 1;
  int stall_generations = 10;   // stop after this many generations without a new evaluation
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> initial;  // seeded individuals, placed first
  bool record_trace = false;
};

/// Integer genetic algorithm with tournament selection, uniform crossover,
/// uniform-reset mutation and elitism. Repeated candidates are served from a
/// cache and do not count against the budget.
OptimResult<std::vector<int>> genetic_algorithm(const IntObjective& f, const std::vector<int>& lower,
                                                const std::vector<int>& upper,
                                                const GeneticOptions& options);

std::vector<double> project_to_bounds(std::vector<double> x, const std::vector<double>& lower,
                                      const std::vector<double>& upper);

}  // namespace mpfc
