#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpfc/predictive.hpp"
#include "mpfc/scenarios.hpp"

namespace mpfc {

struct RunMetrics {
  std::vector<double> j_series;
  std::vector<double> t_opt;

  /// Mean of J over the run.
  double summary() const;
};

/// Pointwise mean and 95% band (mean +- 1.96 SEM, sample std).
struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> sem;
  std::vector<double> ci_lo;
  std::vector<double> ci_hi;
  std::vector<int> count;  // runs contributing to each point
};

/// Requires equal lengths unless `ragged`, in which case each point uses the
/// runs that reach it.
SeriesStats series_stats(const std::vector<std::vector<double>>& series, bool ragged = false);

struct Aggregate {
  int runs = 0;
  bool single_run = false;  // CI collapses to zero width by convention
  SeriesStats j;
  SeriesStats t_opt;
  double mean_j = 0.0;         // mean of per-run summaries
  double mean_j_half = 0.0;    // 1.96 SEM of the per-run summaries
  double mean_t_opt = 0.0;     // mean over all solves of all runs
};

Aggregate aggregate(const std::vector<RunMetrics>& runs);

/// 100 (x - b) / b per point; nullopt where the baseline is zero.
std::vector<std::optional<double>> normalise_against_baseline(const std::vector<double>& series,
                                                              const std::vector<double>& baseline);
std::optional<double> percent_difference(double x, double baseline);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  bool degenerate = false;  // fewer than two distinct x values
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct Experiment {
  ScenarioSpec scenario;
  PredictiveConfig control;
  int n_sim = 5;
  std::uint64_t master_seed = 1;
  int jobs = 0;  // 0 means one worker per seed
};

struct ExperimentResult {
  std::vector<std::uint64_t> seeds;
  std::vector<RunResult> runs;  // seed order
  Aggregate summary;
};

using HookFactory = std::function<RunHooks(int run_index, std::uint64_t seed)>;

ExperimentResult run_experiment(const Experiment& experiment, const HookFactory& hooks = {});

enum class SweepParameter { Robots, EnvSize, ControlStep, Horizon, LocalRadius, PredictionMode, Architecture };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& s);

/// Applies one sweep value to a copy of `base`.
Experiment apply_sweep_value(const Experiment& base, SweepParameter p, const std::string& value);

struct SweepPoint {
  std::string value;
  double x = 0.0;  // numeric value, or the index for categorical parameters
  Aggregate summary;
};

struct SweepResult {
  SweepParameter parameter;
  std::vector<SweepPoint> points;
  LinearFit fit;  // mean J against x
};

SweepResult sweep(SweepParameter p, const std::vector<std::string>& values, const Experiment& base);

/// "k,mean,ci_lo,ci_hi" with k starting at 1.
std::string aggregate_csv(const SeriesStats& s);

/// "k,J" for one run.
std::string series_csv(const std::vector<double>& j);

std::string sweep_csv(const SweepResult& r);

}  // namespace mpfc
