#include <cmath>

#include "doctest.h"

#include "coolsched/temperature_grid.hpp"
#include "test_support.hpp"

using namespace coolsched;

namespace {

// worst-case snapping error of the grid for acceptance targets e^(-de/t),
// scanning t over a wide log mesh and choosing the best grid point per (t, de)
double net_error(const TemperatureGrid& grid, long long e_max, int mesh = 4000) {
  double worst = 0.0;
  for (long long de = 1; de <= e_max; ++de) {
    for (int i = 0; i <= mesh; ++i) {
      double t = std::exp(-6.0 + 14.0 * i / mesh);  // t in [e^-6, e^8]
      double target = std::exp(-static_cast<double>(de) / t);
      double best = 2.0;
      for (double tp : grid.temps) {
        double v = tp == kInfTemp ? 1.0 : std::exp(-static_cast<double>(de) / tp);
        best = std::min(best, std::fabs(v - target));
      }
      worst = std::max(worst, best);
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("fine grid matches the hand-evaluated small cases") {
  TemperatureGrid g1 = fine_grid(1, 0.5);
  REQUIRE(g1.size() == 2);
  CHECK(g1.temps[0] == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
  CHECK(g1.temps[1] == kInfTemp);

  TemperatureGrid g2 = fine_grid(1, 0.25);
  REQUIRE(g2.size() == 4);
  CHECK(g2.temps[0] == doctest::Approx(1.0 / std::log(4.0)).epsilon(1e-12));
  CHECK(g2.temps[1] == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
  CHECK(g2.temps[2] == doctest::Approx(1.0 / std::log(4.0 / 3.0)).epsilon(1e-12));
  CHECK(g2.temps[3] == kInfTemp);
}

TEST_CASE("fine grid divides [0,1] exactly at every energy difference") {
  for (double delta : {0.1, 0.05}) {
    const long long e_max = 16;
    TemperatureGrid grid = fine_grid(e_max, delta);
    const long long imax = static_cast<long long>(std::ceil(1.0 / delta)) - 1;
    for (long long j = 1; j <= e_max; ++j) {
      for (long long i = 1; i <= imax; ++i) {
        double expected_t = j / std::log(1.0 / (i * delta));
        double found = grid.snap_down(expected_t * (1.0 + 1e-13));
        CHECK(std::fabs(found - expected_t) <= 1e-9 * expected_t);
        CHECK(std::fabs(std::exp(-static_cast<double>(j) / found) - i * delta) <= 1e-12);
      }
    }
  }
}

TEST_CASE("geometric grid keeps the exact-division property on its index set") {
  const long long e_max = 16;
  const double delta = 0.1;
  TemperatureGrid grid = geometric_grid(e_max, delta);
  // the index set grows like log(e_max), so the advantage shows at scale
  CHECK(geometric_grid(2048, 0.25).size() < fine_grid(2048, 0.25).size() / 10);

  std::vector<double> js;
  for (double j = 1.0; j < e_max; j *= 1.0 + delta) js.push_back(j);
  js.push_back(static_cast<double>(e_max));
  const long long imax = static_cast<long long>(std::ceil(1.0 / delta)) - 1;
  for (double j : js) {
    for (long long i = 1; i <= imax; ++i) {
      double t = j / std::log(1.0 / (i * delta));
      double found = grid.snap_down(t * (1.0 + 1e-13));
      CHECK(std::fabs(std::exp(-j / found) - i * delta) <= 1e-12);
    }
  }
}

TEST_CASE("geometric grid for e_max 1 equals the fine grid") {
  TemperatureGrid fine = fine_grid(1, 0.2);
  TemperatureGrid geo = geometric_grid(1, 0.2);
  REQUIRE(fine.size() == geo.size());
  for (std::size_t i = 0; i < fine.size(); ++i) CHECK(fine.temps[i] == geo.temps[i]);
}

TEST_CASE("delta must stay below one") {
  CHECK_THROWS_AS(geometric_grid(4, 1.0), ValidationError);
  CHECK_THROWS_AS(fine_grid(4, 1.0), ValidationError);
}

TEST_CASE("delta-net and 3-delta-net mesh scans") {
  for (double delta : {0.1, 0.05}) {
    for (long long e_max : {4LL, 16LL}) {
      CHECK(net_error(fine_grid(e_max, delta), e_max) <= delta + 1e-12);
      CHECK(net_error(geometric_grid(e_max, delta), e_max) <= 3.0 * delta + 1e-12);
    }
  }
}

TEST_CASE("fine grid size guard refuses oversized requests") {
  CHECK_THROWS_AS(fine_grid(1000, 1e-5, /*size_cap=*/100000), RangeError);
}

TEST_CASE("coarse grid ratio and coverage") {
  TemperatureGrid grid = coarse_grid(10000, 0.5, 1.0, 2.0);
  const double expected_ratio = 1.0 + 0.5 * 0.01 / (4.0 * std::log(10000.0));
  CHECK(grid.ratio == doctest::Approx(expected_ratio).epsilon(1e-12));
  CHECK(expected_ratio == doctest::Approx(1.0001357).epsilon(1e-6));
  CHECK(grid.temps.front() == 1.0);
  CHECK(grid.temps.back() >= 2.0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    CHECK(grid.temps[i + 1] / grid.temps[i] == doctest::Approx(expected_ratio).epsilon(1e-12));

  // snapping any in-range temperature moves it by at most one ratio step
  SplitMix64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    double t = 1.0 + rng.next_unit();
    double snapped = grid.snap_down(t);
    CHECK(t / snapped >= 1.0 - 1e-15);
    CHECK(t / snapped <= expected_ratio + 1e-12);
  }

  // size matches the O(sqrt(m) log m log(t_max/t_min) / eps) count
  double predicted = std::log(2.0) / std::log(expected_ratio);
  CHECK(static_cast<double>(grid.size()) >= predicted - 2);
  CHECK(static_cast<double>(grid.size()) <= predicted + 2);
}

TEST_CASE("snap is the largest-not-greater map and stays monotone") {
  TemperatureGrid grid;
  grid.kind = GridKind::kCoarse;
  grid.temps = {1.0, 1.2, 1.44};
  CHECK(grid.snap_down(1.3) == 1.2);

  CoolingSchedule s({1.44, 1.3, 1.2, 1.05});
  CoolingSchedule snapped = snap(s, grid);
  CHECK(snapped.temps() == std::vector<double>{1.44, 1.2, 1.2, 1.0});
  for (std::size_t i = 0; i + 1 < snapped.size(); ++i)
    CHECK(snapped[i] >= snapped[i + 1]);

  CHECK_THROWS_AS(snap(CoolingSchedule({0.5}), grid), RangeError);

  // on-grid schedules are fixed points
  CoolingSchedule on_grid({1.44, 1.2, 1.0});
  CHECK(snap(on_grid, grid).temps() == on_grid.temps());

  // inf snaps to inf when present, else to the largest finite element
  TemperatureGrid with_inf = fine_grid(2, 0.5);
  CHECK(snap(CoolingSchedule({kInfTemp}), with_inf)[0] == kInfTemp);
  CHECK(snap(CoolingSchedule({kInfTemp}), grid)[0] == 1.44);
}

TEST_CASE("grid JSON round-trip") {
  for (const TemperatureGrid& grid :
       {fine_grid(3, 0.2), geometric_grid(5, 0.25), coarse_grid(100, 0.5, 0.5, 4.0)}) {
    TemperatureGrid back = load_grid(save_grid(grid));
    CHECK(back.kind == grid.kind);
    REQUIRE(back.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(back.temps[i] == grid.temps[i]);
  }
}

TEST_CASE("default coarse range brackets the useful acceptance band") {
  double t_min = 0, t_max = 0;
  default_coarse_range(8, &t_min, &t_max);
  CHECK(accept_probability(1.0, t_min) == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(accept_probability(8.0, t_max) == doctest::Approx(0.99).epsilon(1e-9));
}
