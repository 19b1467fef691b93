#include <doctest.h>

#include <cmath>

#include "mpfc/environment.hpp"
#include "mpfc/rng.hpp"

using namespace mpfc;

namespace {

EnvironmentState blank_state(int nh, int nv, int robots, double certainty = 0.0) {
  EnvironmentState s;
  s.geometry = GridGeometry{nh, nv, 10.0, 10.0};
  s.structure = RealGrid(nh, nv, 1.0);
  s.scan_certainty.assign(static_cast<std::size_t>(robots), RealGrid(nh, nv, certainty));
  s.victim_prob = RealGrid(nh, nv, 0.0);
  s.debris = RealGrid(nh, nv, 0.5);
  s.occupancy = RealGrid(nh, nv, 0.5);
  s.wind_speed = RealGrid(nh, nv, 0.0);
  s.wind_dir = RealGrid(nh, nv, 0.0);
  s.perceived_victims = Grid<int>(nh, nv, 0);
  s.scanned = Grid<std::uint8_t>(nh, nv, 0);
  return s;
}

}  // namespace

TEST_CASE("scan certainty decays and refreshes to sensor accuracy") {
  CHECK(update_scan_certainty(0.0, false, 0.01, 0.9) == 0.0);
  CHECK(update_scan_certainty(0.5, true, 0.01, 0.9) == doctest::Approx(0.9));
  CHECK(update_scan_certainty(0.95, true, 0.01, 0.9) == doctest::Approx(0.94));
  CHECK(update_scan_certainty(0.3, false, 0.01, 0.9) == doctest::Approx(0.29));
}

TEST_CASE("scan certainty never increases without scans") {
  double s = 0.9;
  for (int k = 0; k < 200; ++k) {
    const double next = update_scan_certainty(s, false, 0.01, 0.9);
    CHECK(next <= s);
    CHECK(next >= 0.0);
    s = next;
  }
  CHECK(s == 0.0);
}

TEST_CASE("victim probability update branches") {
  CHECK(update_victim_probability(0.0, true, 5, 5, 0.9) == doctest::Approx(0.9));
  CHECK(update_victim_probability(0.0, true, 0, 5, 0.9) == doctest::Approx(0.1));
  CHECK(update_victim_probability(0.37, false, 3, 5, 0.9) == 0.37);
  CHECK(update_victim_probability(0.2, true, 5, 5, 1.0) == 1.0);
  CHECK(update_victim_probability(0.0, true, 2, 5, 0.5) == doctest::Approx(0.2));
}

TEST_CASE("debris update branches") {
  CHECK(update_debris(0.0, true, 0.5, 0.9) == doctest::Approx(0.45));
  CHECK(update_debris(0.7, true, 0.0, 1.0) == 0.0);
  CHECK(update_debris(0.45, false, 0.5, 0.9) == 0.45);
}

TEST_CASE("victim estimate uses the population prior on unscanned cells") {
  CHECK(estimate_victims(true, 0.8, 0.001, 100.0, 0.5) == 0.8);
  CHECK(estimate_victims(false, 0.8, 0.001, 100.0, 0.5) == doctest::Approx(0.05));
  CHECK(estimate_victims(false, 0.8, 0.001, 100.0, 0.0) == 0.0);
}

TEST_CASE("coarsening pools blocks") {
  RealGrid m(3, 5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = i * 10 + j;

  SUBCASE("factor one is the identity") { CHECK(coarsen(m, CoarseningSpec{1}, Pooling::Mean) == m); }

  SUBCASE("two by two mean") {
    RealGrid z(2, 2);
    z(0, 1) = 1;
    z(1, 0) = 1;
    const RealGrid c = coarsen(z, CoarseningSpec{2}, Pooling::Mean);
    REQUIRE(c.nh() == 1);
    CHECK(c(0, 0) == doctest::Approx(0.5));
  }

  SUBCASE("max rule") {
    Grid<int> f(2, 2);
    f(0, 0) = 1;
    f(0, 1) = 3;
    f(1, 0) = 1;
    f(1, 1) = 2;
    CHECK(coarsen(f, CoarseningSpec{2}, Pooling::Max)(0, 0) == 3);
  }

  SUBCASE("truncated border blocks against a brute-force oracle") {
    const RealGrid c = coarsen(m, CoarseningSpec{2}, Pooling::Mean);
    REQUIRE(c.nh() == 2);
    REQUIRE(c.nv() == 3);
    for (int ci = 0; ci < 2; ++ci) {
      for (int cj = 0; cj < 3; ++cj) {
        double sum = 0;
        int n = 0;
        for (int i = 2 * ci; i < std::min(3, 2 * ci + 2); ++i)
          for (int j = 2 * cj; j < std::min(5, 2 * cj + 2); ++j) {
            sum += m(i, j);
            ++n;
          }
        CHECK(c(ci, cj) == doctest::Approx(sum / n));
      }
    }
  }

  SUBCASE("coarsen then factor one equals single coarsen") {
    const RealGrid once = coarsen(m, CoarseningSpec{2}, Pooling::Mean);
    CHECK(coarsen(once, CoarseningSpec{1}, Pooling::Mean) == once);
  }

  SUBCASE("dimensions are ceilings") {
    const GridGeometry g = coarsen_geometry(GridGeometry{41, 40, 10, 10}, CoarseningSpec{5});
    CHECK(g.nh == 9);
    CHECK(g.nv == 8);
    CHECK(g.cell_len_x == 50.0);
  }

  CHECK_THROWS(coarsen(m, CoarseningSpec{0}, Pooling::Mean));
}

TEST_CASE("advance_environment") {
  const EnvironmentParams zero{0.0, 5, 0.01};
  const EnvironmentParams decay{0.01, 5, 0.01};

  SUBCASE("zero decay without scans leaves certainty unchanged") {
    const EnvironmentState s = blank_state(4, 4, 2, 0.6);
    const EnvironmentState n = advance_environment(s, {}, zero);
    CHECK(n.scan_certainty == s.scan_certainty);
    CHECK(n.global_step == 1);
  }

  SUBCASE("uniform decay") {
    const EnvironmentState n = advance_environment(blank_state(4, 4, 1, 1.0), {}, decay);
    for (double v : n.scan_certainty[0].data()) CHECK(v == doctest::Approx(0.99));
  }

  SUBCASE("a single scan only touches its cell") {
    EnvironmentState s = blank_state(4, 4, 2, 0.0);
    s.perceived_victims(2, 1) = 5;
    const EnvironmentState n = advance_environment(s, {ScanReport{1, {2, 1}, 0.9}}, zero);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i == 2 && j == 1) continue;
        CHECK(n.victim_prob(i, j) == s.victim_prob(i, j));
        CHECK(n.debris(i, j) == s.debris(i, j));
        CHECK(n.scan_certainty[1](i, j) == s.scan_certainty[1](i, j));
      }
    }
    CHECK(n.scan_certainty[1](2, 1) == doctest::Approx(0.9));
    CHECK(n.scan_certainty[0](2, 1) == 0.0);
    CHECK(n.victim_prob(2, 1) == doctest::Approx(0.9));
    CHECK(n.debris(2, 1) == doctest::Approx(0.45));
  }

  SUBCASE("pure function of its inputs") {
    EnvironmentState s = blank_state(5, 5, 2, 0.3);
    const std::vector<ScanReport> r{{0, {1, 1}, 0.9}, {1, {3, 4}, 0.8}};
    CHECK(advance_environment(s, r, decay).scan_certainty == advance_environment(s, r, decay).scan_certainty);
  }
}

TEST_CASE("matrix ranges hold under random scan sequences") {
  const EnvironmentParams p{0.01, 5, 0.01};
  EnvironmentState s = blank_state(6, 6, 2, 0.0);
  Rng rng(42);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      s.perceived_victims(i, j) = static_cast<int>(rng.uniform_int(0, 5));
      s.occupancy(i, j) = rng.uniform();
    }
  for (int k = 0; k < 1000; ++k) {
    std::vector<ScanReport> reports;
    const int n = static_cast<int>(rng.uniform_int(0, 3));
    for (int r = 0; r < n; ++r) {
      reports.push_back({static_cast<int>(rng.uniform_int(0, 1)),
                         {static_cast<int>(rng.uniform_int(0, 5)), static_cast<int>(rng.uniform_int(0, 5))},
                         rng.uniform()});
    }
    advance_environment_in_place(s, reports, p);
  }
  CHECK_NOTHROW(s.validate(p));
  for (const auto& m : s.scan_certainty)
    for (double v : m.data()) CHECK((v >= 0.0 && v <= 1.0));
  for (double v : s.victim_prob.data()) CHECK((v >= 0.0 && v <= 1.0));
  for (double v : s.debris.data()) CHECK((v >= 0.0 && v <= 1.0));
  CHECK(s.global_step == 1000);
}

TEST_CASE("fused certainty is the element-wise max") {
  EnvironmentState s = blank_state(2, 2, 2, 0.0);
  s.scan_certainty[0](0, 0) = 0.4;
  s.scan_certainty[1](0, 0) = 0.7;
  s.scan_certainty[1](1, 1) = 0.2;
  const RealGrid f = fused_scan_certainty(s);
  CHECK(f(0, 0) == 0.7);
  CHECK(f(1, 1) == 0.2);
  CHECK(f(0, 1) == 0.0);
}

TEST_CASE("matrix csv layout") {
  RealGrid m(2, 1);
  m(0, 0) = 0.5;
  m(1, 0) = 1;
  CHECK(matrix_to_csv(m) == "i,j,value\n0,0,0.5\n1,0,1\n");
}
