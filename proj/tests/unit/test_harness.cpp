#include <doctest.h>

#include <cmath>

#include "mpfc/harness.hpp"

using namespace mpfc;

TEST_CASE("series statistics against hand values") {
  const SeriesStats s = series_stats({{1.0}, {3.0}});
  CHECK(std::abs(s.mean[0] - 2.0) < 1e-12);
  CHECK(std::abs(s.sem[0] - 1.0) < 1e-12);
  CHECK(std::abs(s.ci_lo[0] - 0.04) < 1e-12);
  CHECK(std::abs(s.ci_hi[0] - 3.96) < 1e-12);

  const SeriesStats same = series_stats({{4, 5, 6}, {4, 5, 6}, {4, 5, 6}});
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(same.ci_lo[k] == same.mean[k]);
    CHECK(same.ci_hi[k] == same.mean[k]);
  }
  CHECK_THROWS(series_stats({{1, 2}, {1}}));
  const SeriesStats ragged = series_stats({{1, 2}, {3}}, true);
  CHECK(ragged.count == std::vector<int>{2, 1});
  CHECK(ragged.mean[1] == 2.0);
}

TEST_CASE("aggregate") {
  RunMetrics a{{1, 2, 3}, {0.5}};
  RunMetrics b{{3, 4, 5}, {1.5, 2.5}};
  const Aggregate g = aggregate({a, b});
  CHECK(g.runs == 2);
  CHECK_FALSE(g.single_run);
  CHECK(g.j.mean == std::vector<double>{2, 3, 4});
  CHECK(g.mean_j == doctest::Approx(3.0));
  CHECK(g.mean_t_opt == doctest::Approx(1.5));
  for (std::size_t k = 0; k < 3; ++k) CHECK((g.j.ci_lo[k] <= g.j.mean[k] && g.j.mean[k] <= g.j.ci_hi[k]));

  const Aggregate swapped = aggregate({b, a});
  CHECK(swapped.j.mean == g.j.mean);
  CHECK(swapped.j.ci_hi == g.j.ci_hi);
  CHECK(swapped.mean_j == g.mean_j);

  const Aggregate one = aggregate({a});
  CHECK(one.single_run);
  CHECK(one.j.ci_lo == one.j.mean);
}

TEST_CASE("baseline normalisation") {
  CHECK(*percent_difference(5.0, 5.0) == 0.0);
  CHECK(*percent_difference(9.0, 10.0) == doctest::Approx(-10.0));
  CHECK_FALSE(percent_difference(1.0, 0.0).has_value());
  const auto n = normalise_against_baseline({0.9, 2.0, 1.0}, {1.0, 0.0, 1.0});
  CHECK(*n[0] == doctest::Approx(-10.0));
  CHECK_FALSE(n[1].has_value());
  CHECK(*n[2] == 0.0);
}

TEST_CASE("linear fit") {
  const LinearFit f = linear_fit({1, 2, 3}, {1, 3, 5});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(-1.0));
  CHECK_FALSE(f.degenerate);
  const LinearFit d = linear_fit({2}, {7});
  CHECK(d.degenerate);
  CHECK(d.slope == 0.0);
}

TEST_CASE("sweep parameters") {
  Experiment base;
  base.scenario = preset("small-static");
  CHECK(parse_sweep_parameter("robots") == SweepParameter::Robots);
  CHECK(to_string(SweepParameter::LocalRadius) == "r_local");
  CHECK_THROWS(parse_sweep_parameter("colour"));
  CHECK(apply_sweep_value(base, SweepParameter::Robots, "3").scenario.robots == 3);
  const Experiment t = apply_sweep_value(base, SweepParameter::ControlStep, "300");
  CHECK(t.control.t_ctrl == 300.0);
  CHECK(t.control.horizon == 21);
  CHECK(*apply_sweep_value(base, SweepParameter::LocalRadius, "2").control.r_local == 2);
  CHECK(apply_sweep_value(base, SweepParameter::EnvSize, "60").scenario.nh == 60);
}

TEST_CASE("sweep over an ignored parameter gives identical aggregates") {
  Experiment base;
  base.scenario = preset("small-static");
  base.control.architecture = Architecture::PretunedFlc;
  base.control.sim_time = 600;
  base.n_sim = 2;
  const SweepResult r = sweep(SweepParameter::Horizon, {"10", "20", "30"}, base);
  REQUIRE(r.points.size() == 3);
  for (const auto& p : r.points) {
    CHECK(p.summary.j.mean == r.points[0].summary.j.mean);
    CHECK(p.summary.mean_j == r.points[0].summary.mean_j);
  }
  CHECK(r.fit.slope == doctest::Approx(0.0));
  const SweepResult robots = sweep(SweepParameter::Robots, {"2", "3", "4"}, base);
  CHECK(robots.points.size() == 3);
}

TEST_CASE("experiments are deterministic and seed ordered") {
  Experiment e;
  e.scenario = preset("small-dynamic");
  e.control.architecture = Architecture::PretunedFlc;
  e.control.sim_time = 900;
  e.n_sim = 3;
  e.jobs = 2;
  const ExperimentResult a = run_experiment(e);
  e.jobs = 1;
  const ExperimentResult b = run_experiment(e);
  CHECK(a.seeds == seed_sequence(3, e.master_seed));
  REQUIRE(a.runs.size() == 3);
  for (std::size_t n = 0; n < 3; ++n) CHECK(series_csv(a.runs[n].j_series) == series_csv(b.runs[n].j_series));
  CHECK(aggregate_csv(a.summary.j) == aggregate_csv(b.summary.j));
}

TEST_CASE("csv writers") {
  SeriesStats s;
  s.mean = {1.5};
  s.ci_lo = {1.0};
  s.ci_hi = {2.0};
  CHECK(aggregate_csv(s) == "k,mean,ci_lo,ci_hi\n1,1.5,1,2\n");
  CHECK(series_csv({0.25, 3}) == "k,J\n1,0.25\n2,3\n");
}
