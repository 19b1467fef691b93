#include <doctest.h>

#include <filesystem>

#include "mpfc/config.hpp"
#include "mpfc/io.hpp"
#include "mpfc/plot.hpp"

using namespace mpfc;

TEST_CASE("empty config gives the standard defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.experiment.control.dt == 15.0);
  CHECK(c.experiment.scenario.coarsening == 5);
  CHECK(c.experiment.scenario.robot.accuracy == 0.9);
  CHECK(c.experiment.scenario.env.sigma == 0.01);
  CHECK(c.experiment.control.sim_time == 5000.0);
  CHECK(c.experiment.n_sim == 5);
  CHECK(c == default_config());
}

TEST_CASE("config diagnostics name the key and line") {
  try {
    parse_config("# comment\nrobot.eta: 1.5\n");
    FAIL("expected a range error");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "robot.eta");
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_config("nonsense.key: 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("robot.eta: 0.5\nrobot.eta: 0.6\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("control.horizon: banana\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just text\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("control.solve_order: 0,0\n"), ConfigError);
}

TEST_CASE("preset applies before other keys") {
  const RunConfig c = parse_config("scenario.robots: 3\nscenario.preset: small-dynamic\n");
  CHECK(c.experiment.scenario.robots == 3);
  CHECK(c.experiment.scenario.ignition == IgnitionRule::CentreBlock);
}

TEST_CASE("config round-trips through its canonical text") {
  const std::string text =
      "scenario.preset: complex\ncontrol.architecture: decentralised-mpc\ncontrol.r_local: 2\n"
      "control.initial_theta: -1,1,-1,-1,0.1,-1,1,-1,-1,0.4,-1,1,-1,-1,0.9\nrun.n_sim: 3\nrun.master_seed: 42\n"
      "optim.genetic.mutation: 0.2\nrun.emit_fire_frames: true\n";
  const RunConfig a = parse_config(text);
  const RunConfig b = parse_config(serialize_config(a));
  CHECK(a == b);
  CHECK(serialize_config(a) == serialize_config(b));
  CHECK(config_hash(a) == config_hash(parse_config(text)));
  CHECK(config_hash(a) != config_hash(default_config()));
  const auto keys = config_keys();
  const std::string canon = serialize_config(a);
  for (const auto& k : keys) CHECK(canon.find(k + ":") != std::string::npos);
}

TEST_CASE("aggregate csv parsing") {
  const AggregateTable t = parse_aggregate_csv("k,mean,ci_lo,ci_hi\n1,2,1,3\n2,2.5,2,3\n");
  CHECK(t.k == std::vector<double>{1, 2});
  CHECK(t.mean[1] == 2.5);
  CHECK_THROWS(parse_aggregate_csv(""));
  CHECK_THROWS(parse_aggregate_csv("k,mean,ci_lo,ci_hi\n"));
  CHECK_THROWS(parse_aggregate_csv("a,b\n1,2\n"));
  CHECK_THROWS(parse_aggregate_csv("k,mean,ci_lo,ci_hi\n1,x,1,1\n"));
}

TEST_CASE("plot styles follow the colour convention") {
  CHECK(style_for(Architecture::PretunedFlc).colour == "#2ca02c");
  CHECK(style_for(Architecture::CentralisedMpfc).colour == "#ff7f0e");
  CHECK(style_for(Architecture::CentralisedMpc).colour == "#7b3294");
  CHECK_FALSE(style_for(Architecture::CentralisedMpfc).dashed);
  CHECK(style_for(Architecture::DecentralisedMpfc).dashed);
  CHECK(style_for(Architecture::DecentralisedMpc).dashed);
}

TEST_CASE("line plot output") {
  const AggregateTable t = parse_aggregate_csv("k,mean,ci_lo,ci_hi\n1,2,1,3\n2,2.5,2,3\n3,2,2,2\n");
  const std::string one = render_line_plot({{"centralised-mpfc", Architecture::CentralisedMpfc, t}}, {});
  CHECK(one.rfind("<svg", 0) == 0);
  CHECK(one.find("stroke=\"#ff7f0e\" stroke-width=\"1.5\" points") != std::string::npos);
  CHECK(one.find("stroke-dasharray") == std::string::npos);
  const std::string two = render_line_plot({{"decentralised-mpfc", Architecture::DecentralisedMpfc, t}}, {});
  CHECK(two.find("stroke-dasharray=\"6,4\"") != std::string::npos);
  CHECK(render_line_plot({{"x", Architecture::PretunedFlc, t}}, {}) ==
        render_line_plot({{"x", Architecture::PretunedFlc, t}}, {}));
  CHECK_THROWS(render_line_plot({}, {}));
}

TEST_CASE("sweep plot output") {
  const SweepTable t = parse_sweep_csv("value,x,mean_j,ci_half,mean_t_opt,runs\n2,2,10,1,0,5\n3,3,9,1,0,5\n# fit\n");
  CHECK(t.x.size() == 2);
  const std::string svg = render_sweep_plot(t, Architecture::CentralisedMpfc, {});
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("stroke-dasharray=\"2,3\"") != std::string::npos);
}

TEST_CASE("atomic writes leave no temporaries") {
  const auto dir = std::filesystem::temp_directory_path() / "mpfc_atomic_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "a.csv", "x\n");
  write_file_atomic(dir / "a.csv", "y\n");
  CHECK(read_file(dir / "a.csv") == "y\n");
  int files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}
