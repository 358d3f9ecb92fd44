// Metrics primitive tests: ledger arithmetic, nearest-rank percentiles,
// sliding-window duty cycle and battery-life arithmetic.
#include <doctest.h>

#include <vector>

#include "scuba/metrics.hpp"

using namespace scuba;

TEST_SUITE("metrics") {

TEST_CASE("energy ledger charges per activity") {
  EnergyLedger led{PowerProfile{}};
  led.add(Activity::kTx, Purpose::kTransfer);
  CHECK(led.total_mj() == doctest::Approx(0.100).epsilon(1e-12));
  led.add(Activity::kSwitch, Purpose::kTransfer);
  CHECK(led.total_mj() == doctest::Approx(0.180).epsilon(1e-12));
  led.add(Activity::kRxListen, Purpose::kPaging);
  CHECK(led.total_mj() == doctest::Approx(0.260).epsilon(1e-12));
  // Half-subframe beacon.
  led.add(Activity::kTx, Purpose::kSam, 0.5);
  CHECK(led.total_mj() == doctest::Approx(0.310).epsilon(1e-12));

  CHECK(led.activity_mj(Activity::kTx) == doctest::Approx(0.150));
  CHECK(led.purpose_mj(Purpose::kTransfer) == doctest::Approx(0.180));
  CHECK(led.purpose_mj(Purpose::kPaging) == doctest::Approx(0.080));
  CHECK(led.purpose_mj(Purpose::kSam) == doctest::Approx(0.050));
  CHECK(led.cell_mj(Activity::kTx, Purpose::kSam) == doctest::Approx(0.050));
}

TEST_CASE("nearest-rank percentile") {
  CHECK(percentile({10.0}, 99.0) == 10.0);
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);  // unsorted on purpose
  CHECK(percentile(v, 99.0) == 99.0);
  CHECK(percentile(v, 50.0) == 50.0);
  CHECK(percentile(v, 100.0) == 100.0);
  CHECK(percentile(v, 0.0) == 1.0);
  CHECK_THROWS_AS(percentile({}, 50.0), ConfigError);
  CHECK_THROWS_AS(percentile({1.0}, 101.0), ConfigError);
  CHECK_THROWS_AS(percentile({1.0}, -1.0), ConfigError);
}

TEST_CASE("latency recorder") {
  LatencyRecorder rec;
  CHECK(rec.count() == 0);
  CHECK_THROWS_AS(rec.avg(), ConfigError);
  rec.record(20.0);
  rec.record(30.0);
  rec.record(100.0);
  CHECK(rec.count() == 3);
  CHECK(rec.avg() == doctest::Approx(50.0));
  CHECK(rec.max() == 100.0);
  CHECK(rec.percentile(50.0) == 30.0);
}

TEST_CASE("duty cycle") {
  SUBCASE("idle radio") {
    CHECK(duty_cycle(std::vector<Sf>{}, 3600000, 3600000) == 0.0);
  }
  SUBCASE("continuous transmission saturates") {
    std::vector<Sf> tx;
    for (Sf s = 0; s < 1000; ++s) tx.push_back(s);
    CHECK(duty_cycle(tx, 1000, 1000) == 1.0);
    // Window longer than the horizon clamps to it.
    CHECK(duty_cycle(tx, 1000, 5000) == 1.0);
  }
  SUBCASE("one short burst every 30 s stays far below 1%") {
    std::vector<Sf> tx;
    for (Sf k = 0; k < 120; ++k) {
      for (Sf i = 0; i < 8; ++i) tx.push_back(k * 30000 + i);
    }
    const double dc = duty_cycle(tx, 3600000, 3600000);
    CHECK(dc == doctest::Approx(960.0 / 3600000.0));
    CHECK(dc < 0.01);
  }
  SUBCASE("densest window found anywhere in the trace") {
    // Two TX SFs 5 apart late in the log; window of 10 catches both.
    CHECK(duty_cycle({100000, 100005}, 200000, 10) ==
          doctest::Approx(0.2));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(duty_cycle(std::vector<Sf>{}, 1000, 0), ConfigError);
    CHECK_THROWS_AS(duty_cycle(std::vector<Sf>{}, 0, 1000), ConfigError);
  }
}

TEST_CASE("battery life") {
  // Calibrated cellular-only baseline.
  const double cell_per_day = 5.0 / 328.5;
  CHECK(battery_life_days(5.0, 0.0, cell_per_day) ==
        doctest::Approx(328.5).epsilon(1e-12));
  // Any sidelink spend shortens life.
  CHECK(battery_life_days(5.0, cell_per_day, cell_per_day) ==
        doctest::Approx(328.5 / 2).epsilon(1e-12));
  CHECK_THROWS_AS(battery_life_days(5.0, 0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(battery_life_days(5.0, -1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(battery_life_days(-5.0, 0.0, 1.0), ConfigError);
}

}  // TEST_SUITE
