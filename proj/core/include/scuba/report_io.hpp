// Report and manifest writers: deterministic JSON and CSV renderings of a
// run report, sweep summaries, and the run manifest that records everything
// needed to reproduce a run bit-exactly.
#pragma once

#include <string>
#include <vector>

#include "scuba/engine.hpp"

namespace scuba {

inline constexpr const char* kToolVersion = "1.0.0";

/// Full run report as pretty-printed JSON. Field order and number formatting
/// are deterministic: the same report always yields the same bytes. Latency
/// samples are summarized, not dumped.
std::string report_to_json(const RunReport& r);

/// Flat CSV: a header, one row per UE, then an "all" aggregate row. Global
/// quantities (latency, collisions) appear only on the aggregate row. The
/// column schema is pinned by golden-file tests.
std::string report_to_csv(const RunReport& r);

/// One sweep point, already reduced to the summary quantities.
struct SweepRow {
  double axis_value = 0.0;
  double avg_power_mw = 0.0;
  double latency_avg_ms = 0.0;
  double latency_p99_ms = 0.0;
  long long messages_completed = 0;
  long long collision_events = 0;
  long long collided_packets = 0;
};

/// Sweep summary CSV: header + one row per point, in input order.
std::string sweep_to_csv(const std::string& axis,
                         const std::vector<SweepRow>& rows);

/// Run manifest: the fully resolved scenario, tool version, and the artifact
/// names the run will produce. Written before the run starts, so even a
/// crashed run leaves its recipe behind; feeding the embedded scenario back
/// through the engine reproduces the outputs bit-exactly.
std::string manifest_json(const Scenario& sc,
                          const std::vector<std::string>& outputs);

/// Recovers the scenario embedded in a manifest produced by manifest_json.
Scenario scenario_from_manifest(const std::string& manifest_text);

}  // namespace scuba
