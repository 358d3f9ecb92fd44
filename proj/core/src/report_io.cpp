#include "scuba/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <string>

#include "json.hpp"
#include "scuba/scenario_io.hpp"

namespace scuba {
namespace {

using nlohmann::json;

/// CSV cell for a double: %.10g is compact, locale-independent and
/// deterministic (the same value always renders the same way).
std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json ue_report_json(const UeReport& u) {
  json j;
  j["ue_id"] = u.ue_id;
  j["mode"] = to_string(u.mode);
  j["avg_power_mw"] = u.avg_power_mw;
  j["energy_mj"] = u.energy_mj;
  for (int a = 0; a < kActivityCount; ++a) {
    j["energy_by_activity_mj"][to_string(static_cast<Activity>(a))] =
        u.energy_by_activity_mj[a];
  }
  for (int p = 0; p < kPurposeCount; ++p) {
    j["energy_by_purpose_mj"][to_string(static_cast<Purpose>(p))] =
        u.energy_by_purpose_mj[p];
  }
  j["p_cona"] = u.p_cona;
  j["p_cdrx"] = u.p_cdrx;
  j["p_idrx"] = u.p_idrx;
  j["listen_fraction_cdrx"] = u.listen_fraction_cdrx;
  j["listen_fraction_idrx"] = u.listen_fraction_idrx;
  j["cona_entries"] = u.cona_entries;
  j["duty_cycle"] = u.duty_cycle;
  json m;
  m["messages_queued"] = u.mac.messages_queued;
  m["messages_completed"] = u.mac.messages_completed;
  m["tbs_created"] = u.mac.tbs_created;
  m["tbs_acked"] = u.mac.tbs_acked;
  m["tbs_delivered"] = u.mac.tbs_delivered;
  m["duplicate_tbs"] = u.mac.duplicate_tbs;
  m["attempts"] = u.mac.attempts;
  m["data_tx_sf"] = u.mac.data_tx_sf;
  m["grant_tx_sf"] = u.mac.grant_tx_sf;
  m["ack_tx_sf"] = u.mac.ack_tx_sf;
  m["sam_u_tx"] = u.mac.sam_u_tx;
  m["sam_d_tx"] = u.mac.sam_d_tx;
  j["mac"] = std::move(m);
  return j;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  json j;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["horizon_sf"] = r.horizon_sf;
  j["t_sf_ms"] = r.t_sf_ms;
  json agg;
  agg["avg_power_mw"] = r.avg_power_mw;
  agg["messages_completed"] = r.messages_completed;
  agg["latency_avg_ms"] = r.latency_avg_ms;
  agg["latency_p99_ms"] = r.latency_p99_ms;
  agg["latency_max_ms"] = r.latency_max_ms;
  agg["collision_events"] = r.collision_events;
  agg["collided_packets"] = r.collided_packets;
  agg["collided_data_tb"] = r.collided_data_tb;
  agg["tx_sf_by_band"] = r.tx_sf_by_band;
  j["aggregate"] = std::move(agg);
  json ues = json::array();
  for (const UeReport& u : r.ues) ues.push_back(ue_report_json(u));
  j["ues"] = std::move(ues);
  return j.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream os;
  os << "scenario,seed,ue,mode,avg_power_mw,energy_mj,energy_tx_mj,"
        "energy_rx_mj,energy_switch_mj,p_cona,p_cdrx,p_idrx,duty_cycle,"
        "messages_completed,latency_avg_ms,latency_p99_ms,latency_max_ms,"
        "collision_events,collided_packets\n";
  for (const UeReport& u : r.ues) {
    os << r.scenario << ',' << r.seed << ',' << u.ue_id << ','
       << to_string(u.mode) << ',' << csv_num(u.avg_power_mw) << ','
       << csv_num(u.energy_mj) << ','
       << csv_num(u.energy_by_activity_mj[static_cast<int>(Activity::kTx)])
       << ','
       << csv_num(
              u.energy_by_activity_mj[static_cast<int>(Activity::kRxListen)])
       << ','
       << csv_num(u.energy_by_activity_mj[static_cast<int>(Activity::kSwitch)])
       << ',' << csv_num(u.p_cona) << ',' << csv_num(u.p_cdrx) << ','
       << csv_num(u.p_idrx) << ',' << csv_num(u.duty_cycle) << ','
       << u.mac.messages_completed << ",,,,,\n";
  }
  os << r.scenario << ',' << r.seed << ",all,," << csv_num(r.avg_power_mw)
     << ",,,,,,,,," << r.messages_completed << ','
     << csv_num(r.latency_avg_ms) << ',' << csv_num(r.latency_p99_ms) << ','
     << csv_num(r.latency_max_ms) << ',' << r.collision_events << ','
     << r.collided_packets << '\n';
  return os.str();
}

std::string sweep_to_csv(const std::string& axis,
                         const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << axis
     << ",avg_power_mw,latency_avg_ms,latency_p99_ms,messages_completed,"
        "collision_events,collided_packets\n";
  for (const SweepRow& row : rows) {
    os << csv_num(row.axis_value) << ',' << csv_num(row.avg_power_mw) << ','
       << csv_num(row.latency_avg_ms) << ',' << csv_num(row.latency_p99_ms)
       << ',' << row.messages_completed << ',' << row.collision_events << ','
       << row.collided_packets << '\n';
  }
  return os.str();
}

std::string manifest_json(const Scenario& sc,
                          const std::vector<std::string>& outputs) {
  json j;
  j["tool"] = "scuba";
  j["version"] = kToolVersion;
  j["scenario"] = json::parse(scenario_to_json(sc));
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

Scenario scenario_from_manifest(const std::string& manifest_text) {
  json j;
  try {
    j = json::parse(manifest_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (!j.is_object() || !j.contains("scenario")) {
    throw ConfigError("manifest: missing 'scenario' object");
  }
  return scenario_from_json(j["scenario"].dump());
}

}  // namespace scuba
