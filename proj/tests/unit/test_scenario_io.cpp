// Scenario document tests: layered defaults, unknown-key and type
// diagnostics with full field paths, template replication, and the
// serialize/parse round trip the manifest contract depends on.
#include <string>

#include "doctest.h"
#include "scuba/scenario_io.hpp"

using namespace scuba;

TEST_SUITE("scenario_io") {

TEST_CASE("minimal document inherits every built-in default") {
  const Scenario sc = scenario_from_json(R"({"ue_count": 2})");
  CHECK(sc.name == "scenario");
  CHECK(sc.seed == 1);
  CHECK(sc.n_bands == 2);
  CHECK(sc.topology == Topology::kCentralDst);
  CHECK(sc.power.p_tx_mw == 100.0);
  CHECK(sc.power.p_rx_mw == 80.0);
  REQUIRE(sc.ues.size() == 2);
  CHECK(sc.ues[0].identity.imsi == 1);
  CHECK(sc.ues[1].identity.imsi == 2);
  for (const UeSpec& u : sc.ues) {
    CHECK(u.mode == ScubaMode::kNative);
    CHECK(u.paging.t_idrx == 64);
    CHECK(u.paging.n_control == 64);
    CHECK(u.sl_paging.t_sl_drx == 128);
    CHECK(u.sl_paging.n_sl_po == 4);
    CHECK(u.cellular.t_rrc == 100);
    CHECK(u.cellular.cdrx_cycle == 640);
    CHECK(u.sl_payload_bytes == 100);
    CHECK(u.harq.n_harq == 4);
    CHECK(u.harq.tbs_bits == 256);
    CHECK(u.sam.n_sam_u_interval == 20);
    CHECK(u.sam.n_sam_d_interval == 75);
  }
}

TEST_CASE("unknown keys are rejected with their full path") {
  CHECK_THROWS_WITH_AS(scenario_from_json(R"({"bogus": 1, "ue_count": 2})"),
                       doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"ue_count": 2, "ue_defaults": {"sl_paging": {"cycle": 5}}})"),
      doctest::Contains("ue_defaults.sl_paging"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"ues": [{"imsi": 1}, {"imsi": 2, "harq": {"bogus": 1}}]})"),
      doctest::Contains("ues[1].harq"), ConfigError);
}

TEST_CASE("type mismatches name the offending field") {
  CHECK_THROWS_WITH_AS(scenario_from_json(R"({"seed": "abc"})"),
                       doctest::Contains("seed"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"ue_count": 2, "power": {"p_tx_mw": "high"}})"),
      doctest::Contains("power.p_tx_mw"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"ue_count": 2, "horizon_sf": 1.5})"),
      doctest::Contains("horizon_sf"), ConfigError);
  CHECK_THROWS_WITH_AS(scenario_from_json("not json"),
                       doctest::Contains("scenario"), ConfigError);
  CHECK_THROWS_WITH_AS(scenario_from_json("[1,2]"),
                       doctest::Contains("expected a JSON object"),
                       ConfigError);
}

TEST_CASE("enum fields list the accepted spellings") {
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"ue_count": 2, "topology": "ring"})"),
      doctest::Contains("central_dst"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"ue_count": 2, "ue_defaults": {"mode": "turbo"}})"),
      doctest::Contains("llm"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"ue_count": 2,
              "ue_defaults": {"sl_traffic": {"kind": "bursty"}}})"),
      doctest::Contains("poisson"), ConfigError);
}

TEST_CASE("explicit entries layer over the template") {
  const Scenario sc = scenario_from_json(R"({
    "ue_defaults": {"mode": "sam", "sl_payload_bytes": 200},
    "ues": [
      {"imsi": 5},
      {"imsi": 17, "mode": "native", "sl_paging": {"t_sl_drx": 64}}
    ]
  })");
  REQUIRE(sc.ues.size() == 2);
  CHECK(sc.ues[0].identity.imsi == 5);
  CHECK(sc.ues[0].mode == ScubaMode::kSam);
  CHECK(sc.ues[0].sl_payload_bytes == 200);
  CHECK(sc.ues[0].sl_paging.t_sl_drx == 128);
  CHECK(sc.ues[1].mode == ScubaMode::kNative);
  CHECK(sc.ues[1].sl_payload_bytes == 200);
  CHECK(sc.ues[1].sl_paging.t_sl_drx == 64);
}

TEST_CASE("replication and explicit listing are mutually exclusive") {
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"ue_count": 2, "ues": [{"imsi": 1}]})"),
      doctest::Contains("mutually exclusive"), ConfigError);
}

TEST_CASE("explicit entries must carry an identity") {
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"ues": [{"imsi": 1}, {"mode": "sam"}]})"),
      doctest::Contains("ues[1]"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"ues": [{"imsi": 1}, {"mode": "sam"}]})"),
      doctest::Contains("imsi"), ConfigError);
}

TEST_CASE("replication honours start and stride") {
  const Scenario sc = scenario_from_json(
      R"({"ue_count": 3, "imsi_start": 100, "imsi_stride": 7})");
  REQUIRE(sc.ues.size() == 3);
  CHECK(sc.ues[0].identity.imsi == 100);
  CHECK(sc.ues[1].identity.imsi == 107);
  CHECK(sc.ues[2].identity.imsi == 114);
}

TEST_CASE("semantic validation runs on the parsed document") {
  // Occasion clusters that would overlap: n_dist * n_cluster < n_sl_po.
  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"ue_count": 2,
              "ue_defaults": {"sl_paging": {"n_cluster": 2, "n_dist": 1}}})"),
      doctest::Contains("n_dist"), ConfigError);
  CHECK_THROWS_WITH_AS(scenario_from_json(R"({"ue_count": 1})"),
                       doctest::Contains("ues"), ConfigError);
  CHECK_THROWS_WITH_AS(
      scenario_from_json(R"({"ue_count": 2, "n_bands": 0})"),
      doctest::Contains("n_bands"), ConfigError);
}

TEST_CASE("paging occasion table can be overridden") {
  const Scenario sc = scenario_from_json(R"({
    "ue_count": 2,
    "ue_defaults": {"paging": {"po_lut": {"1": [5], "2": [2, 7]}}}
  })");
  REQUIRE(sc.ues[0].paging.po_lut.size() == 2);
  CHECK(sc.ues[0].paging.po_lut.at(1) == std::vector<int>{5});
  CHECK(sc.ues[0].paging.po_lut.at(2) == std::vector<int>{2, 7});

  CHECK_THROWS_WITH_AS(
      scenario_from_json(
          R"({"ue_count": 2,
              "ue_defaults": {"paging": {"po_lut": {"x": [5]}}}})"),
      doctest::Contains("occasion count"), ConfigError);
}

TEST_CASE("serialize then parse reproduces the scenario byte for byte") {
  const Scenario sc = scenario_from_json(R"({
    "name": "round-trip",
    "seed": 42,
    "horizon_sf": 250000,
    "n_bands": 3,
    "topology": "random_peers",
    "power": {"p_tx_mw": 90.5, "p_switch_mw": 75.25},
    "ue_defaults": {
      "mode": "sam",
      "beta": 4096,
      "paging": {"t_idrx": 128, "n_control": 32},
      "sl_paging": {"t_sl_drx": 256, "n_sl_po": 4, "n_cluster": 4,
                     "n_dist": 10, "n_off": 2},
      "cellular": {"t_data": 5000, "rai": true, "data_inat": 5000},
      "cell_traffic": {"kind": "poisson", "mean_iat_sf": 30000},
      "sl_traffic": {"kind": "periodic", "period_sf": 60000, "phase_sf": 123},
      "sl_payload_bytes": 250,
      "n_sl_inat": 40,
      "harq": {"scheme": "grant_based", "n_sl_grant": 3},
      "sam": {"n_sam_period": 200, "sam_len": 0.25}
    },
    "ue_count": 3,
    "imsi_start": 11,
    "imsi_stride": 13
  })");

  const std::string emitted = scenario_to_json(sc);
  const Scenario back = scenario_from_json(emitted);
  CHECK(scenario_to_json(back) == emitted);
  CHECK(back.ues.size() == sc.ues.size());
  CHECK(back.ues[2].identity.imsi == 37);
  CHECK(back.ues[1].harq.scheme == HarqScheme::kGrantBased);
  CHECK(back.ues[1].cellular.rai);
  CHECK(back.ues[0].sam.sam_len == 0.25);
  CHECK(back.ues[0].sam.n_sam_period == 200);
  CHECK(back.power.p_tx_mw == 90.5);
  CHECK(back.power.p_rx_mw == 80.0);
}

TEST_CASE("missing files are a config error naming the path") {
  CHECK_THROWS_WITH_AS(scenario_from_file("/nonexistent/x.json"),
                       doctest::Contains("/nonexistent/x.json"), ConfigError);
}

}  // TEST_SUITE
