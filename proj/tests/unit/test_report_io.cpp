// Report writer tests: deterministic JSON/CSV rendering with a golden-file
// check pinning the CSV column schema, sweep summaries, and the
// manifest -> scenario -> identical-report round trip.
#include <string>

#include "doctest.h"
#include "scuba/report_io.hpp"
#include "scuba/scenario_io.hpp"

using namespace scuba;

namespace {

Scenario walk_scenario() {
  return scenario_from_json(R"({
    "name": "walk",
    "seed": 7,
    "horizon_sf": 4500,
    "ue_defaults": {"cell_traffic": {"kind": "none"}},
    "ues": [
      {"imsi": 5},
      {"imsi": 17,
       "sl_traffic": {"kind": "periodic", "period_sf": 1000000000,
                      "phase_sf": 3000}}
    ]
  })");
}

}  // namespace

TEST_SUITE("report_io") {

TEST_CASE("csv schema is pinned byte for byte") {
  const RunReport r = run(walk_scenario());
  const std::string csv = report_to_csv(r);
  const std::string expected =
      "scenario,seed,ue,mode,avg_power_mw,energy_mj,energy_tx_mj,"
      "energy_rx_mj,energy_switch_mj,p_cona,p_cdrx,p_idrx,duty_cycle,"
      "messages_completed,latency_avg_ms,latency_p99_ms,latency_max_ms,"
      "collision_events,collided_packets\n"
      "walk,7,0,native,0.6755555556,3.04,0.8,1.92,0.32,0,0,1,"
      "0.001777777778,0,,,,,\n"
      "walk,7,1,native,0.6755555556,3.04,0.8,1.92,0.32,0,0,1,"
      "0.001777777778,1,,,,,\n"
      "walk,7,all,,0.6755555556,,,,,,,,,1,919,919,919,0,0\n";
  CHECK(csv == expected);
}

TEST_CASE("json rendering is deterministic and carries the aggregate") {
  const RunReport r = run(walk_scenario());
  const std::string j1 = report_to_json(r);
  const std::string j2 = report_to_json(run(walk_scenario()));
  CHECK(j1 == j2);
  CHECK(j1.find("\"latency_p99_ms\": 919.0") != std::string::npos);
  CHECK(j1.find("\"messages_completed\": 1") != std::string::npos);
  CHECK(j1.find("\"mode\": \"native\"") != std::string::npos);
  CHECK(j1.find("\"tbs_delivered\": 8") != std::string::npos);
  // Raw latency samples stay out of the report file.
  CHECK(j1.find("latency_samples") == std::string::npos);
}

TEST_CASE("sweep csv has one row per point in input order") {
  const std::string csv = sweep_to_csv(
      "t_sl_drx", {{32, 0.9, 100, 200, 10, 0, 0}, {64, 0.5, 150, 300, 9, 1, 2}});
  CHECK(csv ==
        "t_sl_drx,avg_power_mw,latency_avg_ms,latency_p99_ms,"
        "messages_completed,collision_events,collided_packets\n"
        "32,0.9,100,200,10,0,0\n"
        "64,0.5,150,300,9,1,2\n");
}

TEST_CASE("manifest reproduces the run bit for bit") {
  const Scenario sc = walk_scenario();
  const std::string manifest =
      manifest_json(sc, {"report.json", "summary.csv"});
  CHECK(manifest.find("\"version\": \"1.0.0\"") != std::string::npos);
  CHECK(manifest.find("report.json") != std::string::npos);

  const Scenario back = scenario_from_manifest(manifest);
  CHECK(report_to_json(run(back)) == report_to_json(run(sc)));
  CHECK(report_to_csv(run(back)) == report_to_csv(run(sc)));

  CHECK_THROWS_WITH_AS(scenario_from_manifest("{}"),
                       doctest::Contains("manifest"), ConfigError);
  CHECK_THROWS_WITH_AS(scenario_from_manifest("null"),
                       doctest::Contains("manifest"), ConfigError);
}

}  // TEST_SUITE
