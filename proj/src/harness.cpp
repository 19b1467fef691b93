#include "mpfc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "mpfc/io.hpp"

namespace mpfc {

namespace {

constexpr double kZ95 = 1.96;

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sample standard error; zero for fewer than two values.
double sem_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return sd / std::sqrt(static_cast<double>(v.size()));
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: " + s);
  }
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_number(s);
  if (v != std::floor(v)) throw std::invalid_argument("not an integer: " + s);
  return static_cast<int>(v);
}

}  // namespace

double RunMetrics::summary() const { return mean_of(j_series); }

SeriesStats series_stats(const std::vector<std::vector<double>>& series, bool ragged) {
  SeriesStats s;
  if (series.empty()) return s;
  std::size_t len = 0;
  for (const auto& v : series) {
    if (!ragged && v.size() != series.front().size()) {
      throw std::invalid_argument("series lengths differ");
    }
    len = std::max(len, v.size());
  }
  s.mean.resize(len);
  s.sem.resize(len);
  s.ci_lo.resize(len);
  s.ci_hi.resize(len);
  s.count.resize(len);
  std::vector<double> column;
  for (std::size_t k = 0; k < len; ++k) {
    column.clear();
    for (const auto& v : series) {
      if (k < v.size()) column.push_back(v[k]);
    }
    const double m = mean_of(column);
    const double e = sem_of(column, m);
    s.mean[k] = m;
    s.sem[k] = e;
    s.ci_lo[k] = m - kZ95 * e;
    s.ci_hi[k] = m + kZ95 * e;
    s.count[k] = static_cast<int>(column.size());
  }
  return s;
}

Aggregate aggregate(const std::vector<RunMetrics>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate needs at least one run");
  Aggregate a;
  a.runs = static_cast<int>(runs.size());
  a.single_run = runs.size() == 1;
  std::vector<std::vector<double>> js, ts;
  std::vector<double> summaries;
  std::vector<double> all_t;
  for (const auto& r : runs) {
    js.push_back(r.j_series);
    ts.push_back(r.t_opt);
    summaries.push_back(r.summary());
    all_t.insert(all_t.end(), r.t_opt.begin(), r.t_opt.end());
  }
  a.j = series_stats(js);
  a.t_opt = series_stats(ts, true);
  a.mean_j = mean_of(summaries);
  a.mean_j_half = kZ95 * sem_of(summaries, a.mean_j);
  a.mean_t_opt = mean_of(all_t);
  return a;
}

std::optional<double> percent_difference(double x, double baseline) {
  if (baseline == 0.0) return std::nullopt;
  return 100.0 * (x - baseline) / baseline;
}

std::vector<std::optional<double>> normalise_against_baseline(const std::vector<double>& series,
                                                              const std::vector<double>& baseline) {
  if (series.size() != baseline.size()) throw std::invalid_argument("series and baseline differ in length");
  std::vector<std::optional<double>> out(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) out[k] = percent_difference(series[k], baseline[k]);
  return out;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit inputs differ in length");
  LinearFit f;
  if (x.empty()) {
    f.degenerate = true;
    return f;
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    sxx += (x[n] - mx) * (x[n] - mx);
    sxy += (x[n] - mx) * (y[n] - my);
  }
  if (sxx == 0.0) {
    f.degenerate = true;
    f.intercept = my;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

ExperimentResult run_experiment(const Experiment& experiment, const HookFactory& hooks) {
  if (experiment.n_sim < 1) throw std::invalid_argument("n_sim must be at least 1");
  experiment.scenario.validate();
  experiment.control.validate();
  ExperimentResult out;
  out.seeds = seed_sequence(experiment.n_sim, experiment.master_seed);
  out.runs.resize(out.seeds.size());

  auto job = [&](std::size_t n) {
    const Scenario scenario = build_scenario(experiment.scenario, out.seeds[n]);
    const RunHooks h = hooks ? hooks(static_cast<int>(n), out.seeds[n]) : RunHooks{};
    out.runs[n] = run_architecture(experiment.control, scenario, out.seeds[n], h);
  };

  const std::size_t workers =
      std::min<std::size_t>(out.seeds.size(), experiment.jobs > 0 ? static_cast<std::size_t>(experiment.jobs)
                                                                  : out.seeds.size());
  if (workers <= 1) {
    for (std::size_t n = 0; n < out.seeds.size(); ++n) job(n);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t n = next++; n < out.seeds.size(); n = next++) {
          try {
            job(n);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<RunMetrics> metrics;
  for (const auto& r : out.runs) metrics.push_back({r.j_series, r.t_opt});
  out.summary = aggregate(metrics);
  return out;
}

namespace {

const std::map<SweepParameter, std::string> kSweepNames{
    {SweepParameter::Robots, "robots"},
    {SweepParameter::EnvSize, "env_size"},
    {SweepParameter::ControlStep, "t_ctrl"},
    {SweepParameter::Horizon, "horizon"},
    {SweepParameter::LocalRadius, "r_local"},
    {SweepParameter::PredictionMode, "prediction_mode"},
    {SweepParameter::Architecture, "architecture"},
};

bool categorical(SweepParameter p) {
  return p == SweepParameter::PredictionMode || p == SweepParameter::Architecture;
}

}  // namespace

std::string to_string(SweepParameter p) { return kSweepNames.at(p); }

SweepParameter parse_sweep_parameter(const std::string& s) {
  for (const auto& [p, n] : kSweepNames) {
    if (n == s) return p;
  }
  throw std::invalid_argument("unknown sweep parameter: " + s);
}

Experiment apply_sweep_value(const Experiment& base, SweepParameter p, const std::string& value) {
  Experiment e = base;
  switch (p) {
    case SweepParameter::Robots:
      e.scenario.robots = parse_int(value);
      break;
    case SweepParameter::EnvSize:
      e.scenario.nh = e.scenario.nv = parse_int(value);
      break;
    case SweepParameter::ControlStep: {
      // The horizon tracks the control step plus one global step.
      e.control.t_ctrl = parse_number(value);
      e.control.horizon = e.control.control_steps() + 1;
      break;
    }
    case SweepParameter::Horizon:
      e.control.horizon = parse_int(value);
      break;
    case SweepParameter::LocalRadius:
      e.control.r_local = parse_int(value);
      break;
    case SweepParameter::PredictionMode:
      e.control.prediction_mode = parse_prediction_mode(value);
      break;
    case SweepParameter::Architecture:
      e.control.architecture = parse_architecture(value);
      break;
  }
  return e;
}

SweepResult sweep(SweepParameter p, const std::vector<std::string>& values, const Experiment& base) {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  SweepResult r;
  r.parameter = p;
  std::vector<double> xs, ys;
  for (std::size_t n = 0; n < values.size(); ++n) {
    const Experiment e = apply_sweep_value(base, p, values[n]);
    SweepPoint pt;
    pt.value = values[n];
    pt.x = categorical(p) ? static_cast<double>(n) : parse_number(values[n]);
    pt.summary = run_experiment(e).summary;
    xs.push_back(pt.x);
    ys.push_back(pt.summary.mean_j);
    r.points.push_back(std::move(pt));
  }
  r.fit = linear_fit(xs, ys);
  return r;
}

std::string aggregate_csv(const SeriesStats& s) {
  std::string out = "k,mean,ci_lo,ci_hi\n";
  for (std::size_t k = 0; k < s.mean.size(); ++k) {
    out += std::to_string(k + 1) + "," + format_double(s.mean[k]) + "," + format_double(s.ci_lo[k]) + "," +
           format_double(s.ci_hi[k]) + "\n";
  }
  return out;
}

std::string series_csv(const std::vector<double>& j) {
  std::string out = "k,J\n";
  for (std::size_t k = 0; k < j.size(); ++k) out += std::to_string(k + 1) + "," + format_double(j[k]) + "\n";
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = "value,x,mean_j,ci_half,mean_t_opt,runs\n";
  for (const auto& p : r.points) {
    out += p.value + "," + format_double(p.x) + "," + format_double(p.summary.mean_j) + "," +
           format_double(p.summary.mean_j_half) + "," + format_double(p.summary.mean_t_opt) + "," +
           std::to_string(p.summary.runs) + "\n";
  }
  out += "# fit slope=" + format_double(r.fit.slope) + " intercept=" + format_double(r.fit.intercept) +
         (r.fit.degenerate ? " degenerate" : "") + "\n";
  return out;
}

}  // namespace mpfc
