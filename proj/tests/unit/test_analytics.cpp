// Closed-form model tests: frozen per-message energies, average-power hand
// values, reduction identities, probability formulas and the Monte-Carlo
// estimator's agreement with them.
#include <doctest.h>

#include <cmath>

#include "scuba/analytics.hpp"

using namespace scuba;

namespace {

StateProbabilities idle_only() {
  StateProbabilities pr;
  pr.p_cona = 0.0;
  pr.p_cdrx = 0.0;
  pr.p_idrx = 1.0;
  return pr;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("per-message transmit energy") {
  EnergyModelInputs in;  // defaults: n_sl=8, n_harq=4, inat=0
  CHECK(energy_sl_tx_mj(in) == doctest::Approx(1.68).epsilon(1e-12));

  in.n_sl = 1;  // ceil(1/4) + 1 = 2 switching gaps
  CHECK(energy_sl_tx_mj(in) == doctest::Approx(0.34).epsilon(1e-12));

  in = EnergyModelInputs{};
  in.n_sl_inat = 100;  // listen tail at 80 mW for 100 ms
  CHECK(energy_sl_tx_mj(in) == doctest::Approx(1.68 + 8.0).epsilon(1e-12));
}

TEST_CASE("per-message receive energy") {
  EnergyModelInputs in;
  CHECK(energy_sl_rx_mj(in) == doctest::Approx(1.68).epsilon(1e-12));

  in.n_sl = 1;
  CHECK(energy_sl_rx_mj(in) == doctest::Approx(0.58).epsilon(1e-12));

  // n_sl == n_harq: the excess-listen term vanishes.
  in.n_sl = 4;
  CHECK(energy_sl_rx_mj(in) ==
        doctest::Approx(1e-3 * (80.0 * 4 + 100.0 * 4 + 80.0 * 2))
            .epsilon(1e-12));

  CHECK_THROWS_AS(energy_sl_rx_mj(EnergyModelInputs{100, 80, 80, 1.0, 0, 4, 0}),
                  ConfigError);
}

TEST_CASE("fixed-occasion average power") {
  PowerModelInputs in;
  in.n_sl_drx_sf = 10240;

  SUBCASE("hand value at default rates") {
    const double expect = 2.0 * 1680.0 / 30000.0 + 80.0 * 4.0 / 10240.0;
    CHECK(power_native_mw(in, idle_only()) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(power_native_mw(in, idle_only()) ==
          doctest::Approx(0.143).epsilon(2e-3));
  }
  SUBCASE("short cycle is dominated by occasion listening") {
    in.n_sl_drx_sf = 320;
    CHECK(power_native_mw(in, idle_only()) ==
          doctest::Approx(1.112).epsilon(1e-3));
  }
  SUBCASE("no activity, no occasions -> zero") {
    in.r_tx_per_ms = 0.0;
    in.r_rx_per_ms = 0.0;
    in.n_sl_po = 0;
    CHECK(power_native_mw(in, idle_only()) == 0.0);
  }
  SUBCASE("strictly decreasing in the cycle length") {
    double prev = 1e9;
    for (Sf cycle : {320, 640, 1280, 2560, 5120, 10240}) {
      in.n_sl_drx_sf = cycle;
      const double p = power_native_mw(in, idle_only());
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("beacon-assisted average power reduces to the fixed-occasion form") {
  PowerModelInputs in;
  in.n_sam = 0.0;  // no beacons...
  in.n_sam_listen = 0;  // ...and no discovery budget
  in.n_sam_u = 0;
  in.n_sam_d = 0;
  StateProbabilities pr;
  pr.p_cona = 0.3;
  pr.p_cdrx = 0.3;
  pr.p_idrx = 0.4;
  CHECK(power_sam_mw(in, pr) ==
        doctest::Approx(power_native_mw(in, pr)).epsilon(1e-12));
}

TEST_CASE("beacon-assisted power adds emission and discovery terms") {
  PowerModelInputs in;
  StateProbabilities pr;
  pr.p_cona = 0.0;
  pr.p_cdrx = 0.5;
  pr.p_idrx = 0.5;
  pr.k_sam_u = 12.5;
  // Hand evaluation: beacons 0.5*100*0.5/75; discovery per message
  // 0.5*80*(0.5*75/2 + 0.5*150) uJ at rate 1/30000; native part with the
  // same probabilities.
  const double beacon = 0.5 * 100.0 * 0.5 / 75.0;
  const double discovery_uj = 0.5 * 80.0 * (0.5 * 75.0 / 2.0 + 0.5 * 150.0);
  const double expect = power_native_mw(in, pr) + beacon +
                        discovery_uj / 30000.0;
  CHECK(power_sam_mw(in, pr) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("low-latency average power") {
  PowerModelInputs in;
  in.n_sl_drx_sf = 0;  // no fixed occasions in this mode

  SUBCASE("always-idle device sits at the listening floor") {
    in.r_tx_per_ms = 0.0;
    in.r_rx_per_ms = 0.0;
    CHECK(power_llm_mw(in, idle_only()) ==
          doctest::Approx(80.0 * 639.0 / 640.0).epsilon(1e-12));
  }
  SUBCASE("short-data occupancy lands near the published average") {
    StateProbabilities pr;
    pr.p_cona = 0.015;
    pr.p_cdrx = 1.0 / 3.0;
    pr.p_idrx = 1.0 - pr.p_cona - pr.p_cdrx;
    CHECK(power_llm_mw(in, pr) == doctest::Approx(78.2).epsilon(0.005));
  }
}

TEST_CASE("per-cycle transmit probability") {
  CHECK(p_sl_tx(30.0, 10240) == doctest::Approx(0.2891781).epsilon(1e-6));
  CHECK(p_sl_tx(30.0, 10240) ==
        doctest::Approx(1.0 - std::exp(-10.24 / 30.0)).epsilon(1e-12));
  CHECK(p_sl_tx(30.0, 0) == 0.0);
  CHECK(p_sl_tx(std::numeric_limits<double>::infinity(), 10240) == 0.0);
  CHECK(p_sl_tx(30.0, 1280) ==
        doctest::Approx(1.0 - std::exp(-1.28 / 30.0)).epsilon(1e-12));
  CHECK_THROWS_AS(p_sl_tx(0.0, 10240), ConfigError);
}

TEST_CASE("data-collision probability") {
  const double p = p_sl_tx(30.0, 10240);

  SUBCASE("two-device central pair") {
    const double pc = p_collision(2, 2, p, 4, 10240, Topology::kCentralDst);
    CHECK(pc == doctest::Approx(p * p / 2.0).epsilon(1e-12));
    CHECK(pc == doctest::Approx(0.0418120).epsilon(1e-5));
  }
  SUBCASE("degenerate inputs") {
    CHECK(p_collision(1, 2, p, 4, 10240, Topology::kCentralDst) == 0.0);
    CHECK(p_collision(50, 2, 0.0, 4, 10240, Topology::kCentralDst) == 0.0);
  }
  SUBCASE("random topology scales by the window power sum") {
    const double q = 4.0 / 10240.0;
    const double pc2 = p_collision(2, 2, p, 4, 10240, Topology::kRandomPeers);
    CHECK(pc2 == doctest::Approx(p * p * q * q / 2.0).epsilon(1e-9));
    // More devices, more collisions; still tiny.
    const double pc10 = p_collision(10, 2, p, 4, 10240, Topology::kRandomPeers);
    CHECK(pc10 > pc2);
    CHECK(pc10 < 1e-4);
  }
  SUBCASE("log-space sum is stable for large populations") {
    // n*p = 1: closed complement form 1 - (1+n p - p) (1-p)^(n-1), compared
    // against the k-sum.
    const int n = 10000;
    const double pp = 1e-4;
    const double direct = 1.0 - std::pow(1.0 - pp, n) -
                          n * pp * std::pow(1.0 - pp, n - 1);
    const double pc = p_collision(n, 1, pp, 4, 10240, Topology::kCentralDst);
    CHECK(std::isfinite(pc));
    CHECK(pc == doctest::Approx(direct).epsilon(1e-9));
  }
  SUBCASE("monotone in the population (central)") {
    double prev = 0.0;
    for (int n : {2, 5, 10, 50, 100}) {
      const double pc = p_collision(n, 2, 0.01, 4, 10240,
                                    Topology::kCentralDst);
      CHECK(pc > prev);
      prev = pc;
    }
  }
}

TEST_CASE("beacon-collision probability") {
  StateProbabilities pr;
  pr.p_cona = 1.0;
  pr.p_cdrx = 0.0;
  pr.p_idrx = 0.0;
  CHECK(p_sam_emission(pr, 0.5, 20, 75) == doctest::Approx(0.025).epsilon(1e-12));

  SUBCASE("no connected or CDRX time, no beacons") {
    CHECK(p_sam_collision(100, 2, idle_only(), 0.5, 20, 75) == 0.0);
  }
  SUBCASE("binomial pair probability at small p") {
    StateProbabilities mix;
    mix.p_cona = 0.2;
    mix.p_cdrx = 0.3;
    mix.p_idrx = 0.5;
    const double p = p_sam_emission(mix, 0.5, 20, 75);
    const double expect = p * p;  // n=2, both emit
    CHECK(p_sam_collision(2, 1, mix, 0.5, 20, 75) ==
          doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("monte-carlo estimator matches the closed forms") {
  const double p = p_sl_tx(30.0, 10240);
  const long long trials = 2000000;

  SUBCASE("central topology") {
    const double ana = p_collision(10, 2, p, 4, 10240, Topology::kCentralDst);
    const double mc = mc_collision_probability(10, 2, p, 4.0 / 10240.0,
                                               Topology::kCentralDst, trials,
                                               99);
    const double sigma = std::sqrt(ana * (1.0 - ana) / trials);
    CHECK(std::abs(mc - ana) < 4.0 * sigma);
  }
  SUBCASE("single band, two devices") {
    const double ana = p_collision(2, 1, 0.3, 4, 10240, Topology::kCentralDst);
    const double mc = mc_collision_probability(2, 1, 0.3, 4.0 / 10240.0,
                                               Topology::kCentralDst, trials,
                                               7);
    const double sigma = std::sqrt(ana * (1.0 - ana) / trials);
    CHECK(std::abs(mc - ana) < 4.0 * sigma);
  }
  SUBCASE("deterministic per seed") {
    const double a = mc_collision_probability(10, 2, 0.3, 0.1,
                                              Topology::kRandomPeers, 100000,
                                              5);
    const double b = mc_collision_probability(10, 2, 0.3, 0.1,
                                              Topology::kRandomPeers, 100000,
                                              5);
    CHECK(a == b);
  }
}

TEST_CASE("probability input validation") {
  StateProbabilities pr;
  pr.p_cona = 0.5;
  pr.p_cdrx = 0.0;
  pr.p_idrx = 0.0;  // sums to 0.5
  CHECK_THROWS_AS(validate(pr), ConfigError);
  CHECK_THROWS_AS(p_collision(2, 0, 0.1, 4, 10240, Topology::kCentralDst),
                  ConfigError);
  CHECK_THROWS_AS(p_collision(2, 2, 1.5, 4, 10240, Topology::kCentralDst),
                  ConfigError);
  CHECK_THROWS_AS(p_collision(2, 2, 0.1, 4, 0, Topology::kRandomPeers),
                  ConfigError);
}

}  // TEST_SUITE
