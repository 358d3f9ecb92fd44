#include "scuba/scenario_io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace scuba {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long long>();
}

int as_int32(const json& v, const std::string& path) {
  const long long x = as_int(v, path);
  if (x < std::numeric_limits<int>::min() ||
      x > std::numeric_limits<int>::max()) {
    fail(path, "integer out of range");
  }
  return static_cast<int>(x);
}

std::uint64_t as_uint64(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const long long x = as_int(v, path);
  if (x < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::uint64_t>(x);
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

const json& as_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  return v;
}

ScubaMode parse_mode(const json& v, const std::string& path) {
  const std::string s = as_string(v, path);
  if (s == "native") return ScubaMode::kNative;
  if (s == "sam") return ScubaMode::kSam;
  if (s == "llm") return ScubaMode::kLlm;
  fail(path, "expected one of \"native\", \"sam\", \"llm\" (got \"" + s + "\")");
}

Topology parse_topology(const json& v, const std::string& path) {
  const std::string s = as_string(v, path);
  if (s == "central_dst") return Topology::kCentralDst;
  if (s == "random_peers") return Topology::kRandomPeers;
  fail(path, "expected \"central_dst\" or \"random_peers\" (got \"" + s + "\")");
}

TrafficKind parse_traffic_kind(const json& v, const std::string& path) {
  const std::string s = as_string(v, path);
  if (s == "none") return TrafficKind::kNone;
  if (s == "periodic") return TrafficKind::kPeriodic;
  if (s == "poisson") return TrafficKind::kPoisson;
  fail(path, "expected one of \"none\", \"periodic\", \"poisson\" (got \"" + s +
                 "\")");
}

HarqScheme parse_harq_scheme(const json& v, const std::string& path) {
  const std::string s = as_string(v, path);
  if (s == "fixed_mcs") return HarqScheme::kFixedMcs;
  if (s == "grant_based") return HarqScheme::kGrantBased;
  fail(path, "expected \"fixed_mcs\" or \"grant_based\" (got \"" + s + "\")");
}

void parse_power(const json& j, const std::string& path, PowerProfile& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "p_tx_mw") out.p_tx_mw = as_double(v, p);
    else if (key == "p_rx_mw") out.p_rx_mw = as_double(v, p);
    else if (key == "p_switch_mw") out.p_switch_mw = as_double(v, p);
    else if (key == "t_sf_ms") out.t_sf_ms = as_double(v, p);
    else fail(path, "unknown key '" + key + "'");
  }
}

void parse_po_lut(const json& j, const std::string& path,
                  std::map<int, std::vector<int>>& out) {
  out.clear();
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    std::size_t used = 0;
    int occasions = 0;
    try {
      occasions = std::stoi(key, &used);
    } catch (const std::exception&) {
      fail(path, "key '" + key + "' is not an occasion count");
    }
    if (used != key.size() || occasions <= 0) {
      fail(path, "key '" + key + "' is not an occasion count");
    }
    if (!v.is_array()) fail(p, "expected an array of subframe indices");
    std::vector<int> subframes;
    for (std::size_t i = 0; i < v.size(); ++i) {
      subframes.push_back(
          as_int32(v[i], p + "[" + std::to_string(i) + "]"));
    }
    out[occasions] = std::move(subframes);
  }
}

void parse_paging(const json& j, const std::string& path, PagingConfig& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "t_idrx") out.t_idrx = as_int32(v, p);
    else if (key == "n_control") out.n_control = as_int32(v, p);
    else if (key == "po_lut") parse_po_lut(v, p, out.po_lut);
    else fail(path, "unknown key '" + key + "'");
  }
}

void parse_sl_paging(const json& j, const std::string& path,
                     SlPagingConfig& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "t_sl_drx") out.t_sl_drx = as_int32(v, p);
    else if (key == "n_sl_po") out.n_sl_po = as_int32(v, p);
    else if (key == "n_cluster") out.n_cluster = as_int32(v, p);
    else if (key == "n_dist") out.n_dist = as_int32(v, p);
    else if (key == "n_off") out.n_off = as_int32(v, p);
    else fail(path, "unknown key '" + key + "'");
  }
}

void parse_cellular(const json& j, const std::string& path,
                    CellularConfig& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "t_rrc") out.t_rrc = as_int(v, p);
    else if (key == "t_data") out.t_data = as_int(v, p);
    else if (key == "drx_inat") out.drx_inat = as_int(v, p);
    else if (key == "data_inat") out.data_inat = as_int(v, p);
    else if (key == "cdrx_cycle") out.cdrx_cycle = as_int(v, p);
    else if (key == "cdrx_on") out.cdrx_on = as_int(v, p);
    else if (key == "rai") out.rai = as_bool(v, p);
    else if (key == "switch_every") out.switch_every = as_int32(v, p);
    else fail(path, "unknown key '" + key + "'");
  }
}

void parse_traffic(const json& j, const std::string& path, TrafficModel& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "kind") out.kind = parse_traffic_kind(v, p);
    else if (key == "mean_iat_sf") out.mean_iat_sf = as_double(v, p);
    else if (key == "period_sf") out.period_sf = as_int(v, p);
    else if (key == "phase_sf") out.phase_sf = as_int(v, p);
    else fail(path, "unknown key '" + key + "'");
  }
}

void parse_harq(const json& j, const std::string& path, HarqConfig& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "scheme") out.scheme = parse_harq_scheme(v, p);
    else if (key == "n_harq") out.n_harq = as_int32(v, p);
    else if (key == "n_sl_grant") out.n_sl_grant = as_int32(v, p);
    else if (key == "mcs") out.mcs = as_int32(v, p);
    else if (key == "tbs_bits") out.tbs_bits = as_int32(v, p);
    else if (key == "prb") out.prb = as_int32(v, p);
    else if (key == "overhead_bytes") out.overhead_bytes = as_int32(v, p);
    else fail(path, "unknown key '" + key + "'");
  }
}

void parse_sam(const json& j, const std::string& path, SamConfig& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "n_sam_period") out.n_sam_period = as_int(v, p);
    else if (key == "n_sam_u_interval") out.n_sam_u_interval = as_int(v, p);
    else if (key == "n_sam_d_interval") out.n_sam_d_interval = as_int(v, p);
    else if (key == "sam_len") out.sam_len = as_double(v, p);
    else fail(path, "unknown key '" + key + "'");
  }
}

/// Applies the fields present in `j` on top of whatever `out` already holds,
/// so explicit entries layer over the ue_defaults template.
void parse_ue(const json& j, const std::string& path, UeSpec& out) {
  for (const auto& [key, v] : as_object(j, path).items()) {
    const std::string p = join(path, key);
    if (key == "imsi") out.identity.imsi = as_uint64(v, p);
    else if (key == "beta") out.identity.beta = as_int32(v, p);
    else if (key == "mode") out.mode = parse_mode(v, p);
    else if (key == "paging") parse_paging(v, p, out.paging);
    else if (key == "sl_paging") parse_sl_paging(v, p, out.sl_paging);
    else if (key == "cellular") parse_cellular(v, p, out.cellular);
    else if (key == "cell_traffic") parse_traffic(v, p, out.cell_traffic);
    else if (key == "sl_traffic") parse_traffic(v, p, out.sl_traffic);
    else if (key == "sl_payload_bytes") out.sl_payload_bytes = as_int32(v, p);
    else if (key == "n_sl_inat") out.n_sl_inat = as_int(v, p);
    else if (key == "harq") parse_harq(v, p, out.harq);
    else if (key == "sam") parse_sam(v, p, out.sam);
    else fail(path, "unknown key '" + key + "'");
  }
}

json traffic_to_json(const TrafficModel& m) {
  json j;
  j["kind"] = to_string(m.kind);
  j["mean_iat_sf"] = m.mean_iat_sf;
  j["period_sf"] = m.period_sf;
  j["phase_sf"] = m.phase_sf;
  return j;
}

json ue_to_json(const UeSpec& u) {
  json j;
  j["imsi"] = u.identity.imsi;
  j["beta"] = u.identity.beta;
  j["mode"] = to_string(u.mode);
  j["paging"]["t_idrx"] = u.paging.t_idrx;
  j["paging"]["n_control"] = u.paging.n_control;
  json lut = json::object();
  for (const auto& [occasions, subframes] : u.paging.po_lut) {
    lut[std::to_string(occasions)] = subframes;
  }
  j["paging"]["po_lut"] = std::move(lut);
  j["sl_paging"]["t_sl_drx"] = u.sl_paging.t_sl_drx;
  j["sl_paging"]["n_sl_po"] = u.sl_paging.n_sl_po;
  j["sl_paging"]["n_cluster"] = u.sl_paging.n_cluster;
  j["sl_paging"]["n_dist"] = u.sl_paging.n_dist;
  j["sl_paging"]["n_off"] = u.sl_paging.n_off;
  j["cellular"]["t_rrc"] = u.cellular.t_rrc;
  j["cellular"]["t_data"] = u.cellular.t_data;
  j["cellular"]["drx_inat"] = u.cellular.drx_inat;
  j["cellular"]["data_inat"] = u.cellular.data_inat;
  j["cellular"]["cdrx_cycle"] = u.cellular.cdrx_cycle;
  j["cellular"]["cdrx_on"] = u.cellular.cdrx_on;
  j["cellular"]["rai"] = u.cellular.rai;
  j["cellular"]["switch_every"] = u.cellular.switch_every;
  j["cell_traffic"] = traffic_to_json(u.cell_traffic);
  j["sl_traffic"] = traffic_to_json(u.sl_traffic);
  j["sl_payload_bytes"] = u.sl_payload_bytes;
  j["n_sl_inat"] = u.n_sl_inat;
  j["harq"]["scheme"] = to_string(u.harq.scheme);
  j["harq"]["n_harq"] = u.harq.n_harq;
  j["harq"]["n_sl_grant"] = u.harq.n_sl_grant;
  j["harq"]["mcs"] = u.harq.mcs;
  j["harq"]["tbs_bits"] = u.harq.tbs_bits;
  j["harq"]["prb"] = u.harq.prb;
  j["harq"]["overhead_bytes"] = u.harq.overhead_bytes;
  j["sam"]["n_sam_period"] = u.sam.n_sam_period;
  j["sam"]["n_sam_u_interval"] = u.sam.n_sam_u_interval;
  j["sam"]["n_sam_d_interval"] = u.sam.n_sam_d_interval;
  j["sam"]["sam_len"] = u.sam.sam_len;
  return j;
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario: expected a JSON object");

  Scenario sc;
  UeSpec tmpl;
  bool have_count = false;
  long long ue_count = 0;
  std::uint64_t imsi_start = 1;
  std::uint64_t imsi_stride = 1;
  const json* ues = nullptr;

  // Template and replication keys are pulled up front so that entry order in
  // the document never changes the result.
  if (doc.contains("ue_defaults")) {
    parse_ue(doc["ue_defaults"], "ue_defaults", tmpl);
  }
  for (const auto& [key, v] : doc.items()) {
    if (key == "name") sc.name = as_string(v, key);
    else if (key == "seed") sc.seed = as_uint64(v, key);
    else if (key == "horizon_sf") sc.horizon_sf = as_int(v, key);
    else if (key == "n_bands") sc.n_bands = as_int32(v, key);
    else if (key == "topology") sc.topology = parse_topology(v, key);
    else if (key == "power") parse_power(v, key, sc.power);
    else if (key == "ue_defaults") continue;  // handled above
    else if (key == "ue_count") { ue_count = as_int(v, key); have_count = true; }
    else if (key == "imsi_start") imsi_start = as_uint64(v, key);
    else if (key == "imsi_stride") imsi_stride = as_uint64(v, key);
    else if (key == "ues") {
      if (!v.is_array()) fail(key, "expected an array");
      ues = &v;
    } else {
      fail("scenario", "unknown key '" + key + "'");
    }
  }

  if (ues != nullptr && have_count) {
    throw ConfigError(
        "scenario: 'ues' and 'ue_count' are mutually exclusive; list the"
        " entries or replicate the template, not both");
  }
  if (ues != nullptr) {
    for (std::size_t i = 0; i < ues->size(); ++i) {
      const std::string p = "ues[" + std::to_string(i) + "]";
      UeSpec u = tmpl;
      parse_ue((*ues)[i], p, u);
      if (!(*ues)[i].contains("imsi")) {
        fail(p, "explicit entries must carry an 'imsi'");
      }
      sc.ues.push_back(std::move(u));
    }
  } else if (have_count) {
    if (ue_count < 1) fail("ue_count", "must be >= 1");
    sc.ues = uniform_ues(tmpl, static_cast<int>(ue_count), imsi_start,
                         imsi_stride);
  }

  validate(sc);
  return sc;
}

Scenario scenario_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("scenario: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  j["seed"] = sc.seed;
  j["horizon_sf"] = sc.horizon_sf;
  j["n_bands"] = sc.n_bands;
  j["topology"] = to_string(sc.topology);
  j["power"]["p_tx_mw"] = sc.power.p_tx_mw;
  j["power"]["p_rx_mw"] = sc.power.p_rx_mw;
  j["power"]["p_switch_mw"] = sc.power.p_switch_mw;
  j["power"]["t_sf_ms"] = sc.power.t_sf_ms;
  json ues = json::array();
  for (const UeSpec& u : sc.ues) ues.push_back(ue_to_json(u));
  j["ues"] = std::move(ues);
  return j.dump(2) + "\n";
}

}  // namespace scuba
