// scuba — scenario-driven front end for the sidelink MAC simulator and its
// closed-form analytics: single runs, parameter sweeps, analytic evaluation,
// and canned reference-result reproduction.
//
// Exit codes: 0 success, 1 reference-check failure (reproduce), 2 bad
// configuration or usage, 3 runtime invariant breach.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scuba/analytics.hpp"
#include "scuba/engine.hpp"
#include "scuba/metrics.hpp"
#include "scuba/report_io.hpp"
#include "scuba/reproduce.hpp"
#include "scuba/scenario_io.hpp"
#include "scuba/svg.hpp"

namespace {

using json = nlohmann::json;
using namespace scuba;

std::string default_out_dir() {
  const char* env = std::getenv("SCUBA_OUT_DIR");
  return env != nullptr && *env != '\0' ? std::string(env) : std::string(".");
}

/// Scenario names become file stems; anything path-hostile flattens to '_'.
std::string file_stem(const std::string& name) {
  std::string s = name.empty() ? std::string("scenario") : name;
  for (char& c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
    if (!ok) c = '_';
  }
  return s;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + dir +
                      "': " + ec.message());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

std::string trace_line(const TraceRecord& rec) {
  std::ostringstream os;
  os << "sf=" << rec.sf << " ue=" << rec.ue
     << " action=" << to_string(rec.action) << " band=" << rec.band
     << " outcome=" << rec.outcome;
  for (const SlPacket& p : rec.packets) {
    os << " pkt{kind=" << to_string(p.kind) << " src=" << p.src
       << " dst=" << p.dst << " seq=" << p.seq << " tb=" << p.tb_index << '/'
       << p.n_sl_total << " slot=" << p.slot_in_frame
       << " frame=" << p.frame_idx;
    if (p.dyn_po_sf != kNever) os << " dyn_po=" << p.dyn_po_sf;
    if (p.more_data) os << " more_data";
    os << '}';
  }
  return os.str();
}

struct RunArgs {
  std::string scenario_path;
  std::string out_dir = default_out_dir();
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool trace = false;
};

int cmd_run(const RunArgs& a) {
  Scenario sc = scenario_from_file(a.scenario_path);
  if (a.seed_set) sc.seed = a.seed;
  ensure_dir(a.out_dir);

  const std::string stem = file_stem(sc.name);
  const std::string report_name = stem + ".report.json";
  const std::string csv_name = stem + ".summary.csv";
  const std::string trace_name = stem + ".trace.txt";
  std::vector<std::string> outputs = {report_name, csv_name};
  if (a.trace) outputs.push_back(trace_name);

  // Manifest first: a crashed run still leaves its recipe behind.
  write_file(join_path(a.out_dir, stem + ".manifest.json"),
             manifest_json(sc, outputs));

  RunOptions opt;
  std::ofstream trace_out;
  if (a.trace) {
    const std::string path = join_path(a.out_dir, trace_name);
    trace_out.open(path, std::ios::binary);
    if (!trace_out) throw ConfigError("cannot open '" + path + "' for writing");
    opt.trace = [&trace_out](const TraceRecord& rec) {
      trace_out << trace_line(rec) << '\n';
    };
  }

  const RunReport r = run(sc, opt);
  write_file(join_path(a.out_dir, report_name), report_to_json(r));
  write_file(join_path(a.out_dir, csv_name), report_to_csv(r));

  std::printf("scenario %s: seed=%llu horizon=%lld sf, %zu ues\n",
              sc.name.c_str(), static_cast<unsigned long long>(sc.seed),
              static_cast<long long>(sc.horizon_sf), sc.ues.size());
  std::printf("  avg power    %.6g mW\n", r.avg_power_mw);
  std::printf("  messages     %lld (latency avg %.6g ms, p99 %.6g ms, max %.6g ms)\n",
              r.messages_completed, r.latency_avg_ms, r.latency_p99_ms,
              r.latency_max_ms);
  std::printf("  collisions   %lld band-subframes, %lld packets\n",
              r.collision_events, r.collided_packets);
  for (const std::string& name : outputs) {
    std::printf("  wrote %s\n", join_path(a.out_dir, name).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> kAxes = {
      "t_sl_drx",        "n_sl_po",          "n_bands",
      "ue_count",        "sl_mean_iat_sf",   "cell_mean_iat_sf",
      "n_sam_u_interval", "n_sam_d_interval"};
  return kAxes;
}

long long axis_int(const std::string& axis, double v) {
  if (!(v == std::floor(v)) || std::abs(v) > 1e15) {
    std::ostringstream os;
    os << "sweep: axis '" << axis << "' needs integer values, got " << v;
    throw ConfigError(os.str());
  }
  return static_cast<long long>(v);
}

Scenario apply_axis(Scenario sc, const std::string& axis, double v) {
  if (axis == "t_sl_drx") {
    for (UeSpec& ue : sc.ues) ue.sl_paging.t_sl_drx = static_cast<int>(axis_int(axis, v));
  } else if (axis == "n_sl_po") {
    for (UeSpec& ue : sc.ues) ue.sl_paging.n_sl_po = static_cast<int>(axis_int(axis, v));
  } else if (axis == "n_bands") {
    sc.n_bands = static_cast<int>(axis_int(axis, v));
  } else if (axis == "ue_count") {
    // Replicates the first UE's spec; identities step by one so paging
    // timetables stay distinct.
    sc.ues = uniform_ues(sc.ues.front(), static_cast<int>(axis_int(axis, v)),
                         sc.ues.front().identity.imsi);
  } else if (axis == "sl_mean_iat_sf") {
    for (UeSpec& ue : sc.ues) ue.sl_traffic.mean_iat_sf = v;
  } else if (axis == "cell_mean_iat_sf") {
    for (UeSpec& ue : sc.ues) ue.cell_traffic.mean_iat_sf = v;
  } else if (axis == "n_sam_u_interval") {
    for (UeSpec& ue : sc.ues) ue.sam.n_sam_u_interval = axis_int(axis, v);
  } else if (axis == "n_sam_d_interval") {
    for (UeSpec& ue : sc.ues) ue.sam.n_sam_d_interval = axis_int(axis, v);
  } else {
    std::ostringstream os;
    os << "sweep: unknown axis '" << axis << "' (expected one of";
    for (const std::string& name : sweep_axes()) os << ' ' << name;
    os << ")";
    throw ConfigError(os.str());
  }
  return sc;
}

struct SweepArgs {
  std::string scenario_path;
  std::string out_dir = default_out_dir();
  std::string axis;
  std::vector<double> values;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool svg = false;
};

int cmd_sweep(const SweepArgs& a) {
  if (a.values.empty()) throw ConfigError("sweep: values list is empty");
  Scenario base = scenario_from_file(a.scenario_path);
  if (a.seed_set) base.seed = a.seed;
  // Surface an unknown axis before any simulation time is spent.
  (void)apply_axis(base, a.axis, a.values.front());
  ensure_dir(a.out_dir);

  const std::string stem = file_stem(base.name);
  const std::string csv_name = stem + ".sweep.csv";
  std::vector<std::string> outputs = {csv_name};
  if (a.svg) {
    outputs.push_back(stem + ".sweep_power.svg");
    outputs.push_back(stem + ".sweep_latency.svg");
  }

  // Manifest first; the base scenario plus the sweep block reproduce the CSV.
  json manifest = json::parse(manifest_json(base, outputs));
  manifest["sweep"] = {{"axis", a.axis}, {"values", a.values}};
  write_file(join_path(a.out_dir, stem + ".sweep.manifest.json"),
             manifest.dump(2) + "\n");

  // Points are independent scenarios; run them in parallel batches and
  // assemble rows in input order.
  std::vector<SweepRow> rows(a.values.size());
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < a.values.size(); start += width) {
    const std::size_t stop = std::min(start + width, a.values.size());
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, [&base, &a, i] {
        const Scenario pt = apply_axis(base, a.axis, a.values[i]);
        RunOptions opt;
        opt.keep_latency_samples = false;
        const RunReport r = run(pt, opt);
        SweepRow row;
        row.axis_value = a.values[i];
        row.avg_power_mw = r.avg_power_mw;
        row.latency_avg_ms = r.latency_avg_ms;
        row.latency_p99_ms = r.latency_p99_ms;
        row.messages_completed = r.messages_completed;
        row.collision_events = r.collision_events;
        row.collided_packets = r.collided_packets;
        return row;
      }));
    }
    for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
  }

  const std::string csv = sweep_to_csv(a.axis, rows);
  write_file(join_path(a.out_dir, csv_name), csv);
  if (a.svg) {
    SvgPlotSpec power;
    power.title = base.name + ": power vs " + a.axis;
    power.x_label = a.axis;
    power.y_label = "average power (mW)";
    SvgSeries ps;
    ps.label = "avg power";
    for (const SweepRow& row : rows)
      ps.points.push_back({row.axis_value, row.avg_power_mw});
    power.series.push_back(std::move(ps));
    write_file(join_path(a.out_dir, stem + ".sweep_power.svg"),
               render_svg(power));

    SvgPlotSpec lat;
    lat.title = base.name + ": latency vs " + a.axis;
    lat.x_label = a.axis;
    lat.y_label = "latency (ms)";
    SvgSeries avg, p99;
    avg.label = "avg";
    p99.label = "p99";
    for (const SweepRow& row : rows) {
      avg.points.push_back({row.axis_value, row.latency_avg_ms});
      p99.points.push_back({row.axis_value, row.latency_p99_ms});
    }
    lat.series.push_back(std::move(avg));
    lat.series.push_back(std::move(p99));
    write_file(join_path(a.out_dir, stem + ".sweep_latency.svg"),
               render_svg(lat));
  }

  std::cout << csv;
  for (const std::string& name : outputs) {
    std::printf("wrote %s\n", join_path(a.out_dir, name).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// analytic
// ---------------------------------------------------------------------------

json energy_inputs_json(const EnergyModelInputs& e) {
  return {{"p_tx_mw", e.p_tx_mw},     {"p_rx_mw", e.p_rx_mw},
          {"p_switch_mw", e.p_switch_mw}, {"t_sf_ms", e.t_sf_ms},
          {"n_sl", e.n_sl},           {"n_harq", e.n_harq},
          {"n_sl_inat", e.n_sl_inat}};
}

json occupancy_json(const StateProbabilities& pr) {
  return {{"p_cona", pr.p_cona},
          {"p_cdrx", pr.p_cdrx},
          {"p_idrx", pr.p_idrx},
          {"k_sam_u", pr.k_sam_u}};
}

struct PowerArgs {
  std::string model;
  StateProbabilities pr;
  PowerModelInputs in;
  double tx_iat_s = 30.0;
  double rx_iat_s = 30.0;
};

int cmd_analytic_power(const PowerArgs& a) {
  if (!(a.tx_iat_s > 0) || !(a.rx_iat_s > 0)) {
    throw ConfigError("analytic power: message inter-arrival must be > 0");
  }
  PowerModelInputs in = a.in;
  in.r_tx_per_ms = 1.0 / (a.tx_iat_s * 1000.0);
  in.r_rx_per_ms = 1.0 / (a.rx_iat_s * 1000.0);

  double power = 0.0;
  if (a.model == "native") {
    power = power_native_mw(in, a.pr);
  } else if (a.model == "sam") {
    power = power_sam_mw(in, a.pr);
  } else {
    power = power_llm_mw(in, a.pr);
  }

  json j;
  j["command"] = "analytic power";
  j["model"] = a.model;
  j["power_mw"] = power;
  j["energy_per_message_mj"] = {{"tx", energy_sl_tx_mj(in.energy)},
                                {"rx", energy_sl_rx_mj(in.energy)}};
  j["occupancy"] = occupancy_json(a.pr);
  j["inputs"] = {{"tx_iat_s", a.tx_iat_s},
                 {"rx_iat_s", a.rx_iat_s},
                 {"n_sl_po", in.n_sl_po},
                 {"n_sl_drx_sf", in.n_sl_drx_sf},
                 {"n_sam", in.n_sam},
                 {"n_sam_listen", in.n_sam_listen},
                 {"n_sam_u", in.n_sam_u},
                 {"n_sam_d", in.n_sam_d},
                 {"n_cdrx_free", in.n_cdrx_free},
                 {"n_idrx_free", in.n_idrx_free},
                 {"cdrx_cycle_sf", in.cdrx_cycle_sf},
                 {"idrx_cycle_sf", in.idrx_cycle_sf},
                 {"energy", energy_inputs_json(in.energy)}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

Topology parse_topology(const std::string& name) {
  if (name == "central" || name == "central_dst") return Topology::kCentralDst;
  return Topology::kRandomPeers;
}

struct CollisionArgs {
  int n_ue = 0;
  int n_bands = 2;
  std::string topology = "central_dst";
  double p_tx = -1.0;  // <0: derive from mean_iat_s
  double mean_iat_s = 30.0;
  int n_sl_po = 4;
  Sf t_sl_drx_sf = 1280;
  long long mc_trials = 0;
  std::uint64_t seed = 1;
};

int cmd_analytic_collision(const CollisionArgs& a) {
  const Topology topo = parse_topology(a.topology);
  const double p_tx =
      a.p_tx >= 0.0 ? a.p_tx : p_sl_tx(a.mean_iat_s, a.t_sl_drx_sf);
  const double pc =
      p_collision(a.n_ue, a.n_bands, p_tx, a.n_sl_po, a.t_sl_drx_sf, topo);

  json j;
  j["command"] = "analytic collision";
  j["topology"] = to_string(topo);
  j["n_ue"] = a.n_ue;
  j["n_bands"] = a.n_bands;
  j["n_sl_po"] = a.n_sl_po;
  j["n_sl_drx_sf"] = a.t_sl_drx_sf;
  j["p_tx"] = p_tx;
  j["p_collision"] = pc;
  if (a.mc_trials > 0) {
    const double q = static_cast<double>(a.n_sl_po) /
                     static_cast<double>(a.t_sl_drx_sf);
    j["monte_carlo"] = {
        {"trials", a.mc_trials},
        {"seed", a.seed},
        {"estimate", mc_collision_probability(a.n_ue, a.n_bands, p_tx, q, topo,
                                              a.mc_trials, a.seed)}};
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct SamCollisionArgs {
  int n_ue = 0;
  int n_bands = 2;
  StateProbabilities pr;
  double n_sam = 0.5;
  Sf n_sam_u = 20;
  Sf n_sam_d = 75;
};

int cmd_analytic_sam_collision(const SamCollisionArgs& a) {
  const double emission = p_sam_emission(a.pr, a.n_sam, a.n_sam_u, a.n_sam_d);
  const double pc =
      p_sam_collision(a.n_ue, a.n_bands, a.pr, a.n_sam, a.n_sam_u, a.n_sam_d);
  json j;
  j["command"] = "analytic sam-collision";
  j["n_ue"] = a.n_ue;
  j["n_bands"] = a.n_bands;
  j["occupancy"] = occupancy_json(a.pr);
  j["inputs"] = {{"n_sam", a.n_sam}, {"n_sam_u", a.n_sam_u},
                 {"n_sam_d", a.n_sam_d}};
  j["p_sam_emission"] = emission;
  j["p_collision"] = pc;
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct BatteryArgs {
  double battery_wh = 5.0;
  // Calibrated so a 5 Wh battery lasts 328.5 days on the primary RAT alone.
  double cellular_wh_per_day = 5.0 / 328.5;
  double message_iat_s = 30.0;  // 0 disables sidelink traffic
  EnergyModelInputs energy;
};

int cmd_analytic_battery(const BatteryArgs& a) {
  if (a.message_iat_s < 0) {
    throw ConfigError("analytic battery: message inter-arrival must be >= 0");
  }
  const double per_day =
      a.message_iat_s > 0 ? 86400.0 / a.message_iat_s : 0.0;
  const double wh_per_msg =
      (energy_sl_tx_mj(a.energy) + energy_sl_rx_mj(a.energy)) / 3.6e6;
  const double sidelink_wh_per_day = per_day * wh_per_msg;
  const double days = battery_life_days(a.battery_wh, sidelink_wh_per_day,
                                        a.cellular_wh_per_day);
  json j;
  j["command"] = "analytic battery";
  j["battery_wh"] = a.battery_wh;
  j["cellular_wh_per_day"] = a.cellular_wh_per_day;
  j["message_iat_s"] = a.message_iat_s;
  j["messages_per_day"] = per_day;
  j["sidelink_wh_per_day"] = sidelink_wh_per_day;
  j["energy"] = energy_inputs_json(a.energy);
  j["battery_days"] = days;
  std::cout << j.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

struct ReproArgs {
  std::vector<std::string> targets;
  std::string out_dir = default_out_dir();
  double scale = 1.0;
  bool list = false;
};

int cmd_reproduce(const ReproArgs& a) {
  if (a.list) {
    for (const std::string& name : reproduce_target_names()) {
      std::cout << name << '\n';
    }
    return 0;
  }
  std::vector<std::string> targets = a.targets;
  if (targets.empty() ||
      (targets.size() == 1 && targets.front() == "all")) {
    targets = reproduce_target_names();
  }
  ensure_dir(a.out_dir);
  ReproduceOptions opts;
  opts.scale = a.scale;

  bool all_pass = true;
  for (const std::string& name : targets) {
    const TargetResult res = reproduce_target(name, opts);
    const std::string table = render_text_table(res);

    std::vector<std::string> outputs = {name + ".txt"};
    for (const Artifact& art : res.artifacts) outputs.push_back(art.name);
    json manifest;
    manifest["tool"] = "scuba";
    manifest["version"] = kToolVersion;
    manifest["reproduce"] = {{"target", name}, {"scale", opts.scale}};
    manifest["outputs"] = outputs;
    write_file(join_path(a.out_dir, name + ".manifest.json"),
               manifest.dump(2) + "\n");
    write_file(join_path(a.out_dir, name + ".txt"), table);
    for (const Artifact& art : res.artifacts) {
      write_file(join_path(a.out_dir, art.name), art.content);
    }

    std::cout << table << '\n';
    all_pass = all_pass && res.pass();
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sidelink MAC simulator and analytics"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "Run one scenario and write report, CSV summary and manifest");
  run_cmd->add_option("scenario", run_args.scenario_path,
                      "Scenario document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run_args.seed, "Override the scenario seed");
  run_cmd->add_option("--out", run_args.out_dir,
                      "Output directory (default $SCUBA_OUT_DIR or .)");
  run_cmd->add_flag("--trace", run_args.trace,
                    "Also write a newline-delimited per-subframe trace");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run one scenario across an axis of parameter values");
  sweep_cmd->add_option("scenario", sweep_args.scenario_path,
                        "Scenario document (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  {
    std::ostringstream axes;
    axes << "Parameter to vary (one of";
    for (const std::string& name : sweep_axes()) axes << ' ' << name;
    axes << ")";
    sweep_cmd->add_option("--axis", sweep_args.axis, axes.str())->required();
  }
  sweep_cmd->add_option("--values", sweep_args.values,
                        "Comma-separated axis values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--seed", sweep_args.seed,
                        "Override the scenario seed");
  sweep_cmd->add_option("--out", sweep_args.out_dir,
                        "Output directory (default $SCUBA_OUT_DIR or .)");
  sweep_cmd->add_flag("--svg", sweep_args.svg,
                      "Also render power/latency SVG plots");

  CLI::App* ana = app.add_subcommand(
      "analytic", "Evaluate the closed-form power/collision/battery models");
  ana->require_subcommand(1);

  PowerArgs power_args;
  CLI::App* power_cmd =
      ana->add_subcommand("power", "Average-power model for one mode");
  power_cmd->add_option("--model", power_args.model, "native, sam or llm")
      ->required()
      ->check(CLI::IsMember({"native", "sam", "llm"}));
  power_cmd->add_option("--p-cona", power_args.pr.p_cona,
                        "Connected-active occupancy");
  power_cmd->add_option("--p-cdrx", power_args.pr.p_cdrx,
                        "Connected-DRX occupancy");
  power_cmd->add_option("--p-idrx", power_args.pr.p_idrx,
                        "Idle-DRX occupancy (default 1)");
  power_cmd->add_option("--k-sam-u", power_args.pr.k_sam_u,
                        "Beacons per connected block");
  power_cmd->add_option("--tx-iat-s", power_args.tx_iat_s,
                        "Outbound message inter-arrival (s)");
  power_cmd->add_option("--rx-iat-s", power_args.rx_iat_s,
                        "Inbound message inter-arrival (s)");
  power_cmd->add_option("--n-sl-po", power_args.in.n_sl_po,
                        "Listening subframes per cycle");
  power_cmd->add_option("--t-sl-drx-sf", power_args.in.n_sl_drx_sf,
                        "Listening cycle (SF)");
  power_cmd->add_option("--n-sam", power_args.in.n_sam,
                        "Beacon length (fraction of one SF)");
  power_cmd->add_option("--n-sam-listen", power_args.in.n_sam_listen,
                        "Discovery listen budget (SF)");
  power_cmd->add_option("--n-sam-u", power_args.in.n_sam_u,
                        "Busy-beacon period (SF)");
  power_cmd->add_option("--n-sam-d", power_args.in.n_sam_d,
                        "Occasion-beacon period (SF)");
  power_cmd->add_option("--n-sl", power_args.in.energy.n_sl,
                        "Transport blocks per message");
  power_cmd->add_option("--n-harq", power_args.in.energy.n_harq,
                        "HARQ processes per frame");
  power_cmd->add_option("--n-sl-inat", power_args.in.energy.n_sl_inat,
                        "Post-session listen extension (SF)");
  power_cmd->add_option("--p-tx-mw", power_args.in.energy.p_tx_mw,
                        "Transmit power (mW)");
  power_cmd->add_option("--p-rx-mw", power_args.in.energy.p_rx_mw,
                        "Receive power (mW)");
  power_cmd->add_option("--p-switch-mw", power_args.in.energy.p_switch_mw,
                        "Switching power (mW)");

  CollisionArgs coll_args;
  CLI::App* coll_cmd = ana->add_subcommand(
      "collision", "Per-cycle data-collision probability");
  coll_cmd->add_option("--n-ue", coll_args.n_ue, "Device count")->required();
  coll_cmd->add_option("--n-bands", coll_args.n_bands, "Unlicensed bands");
  coll_cmd
      ->add_option("--topology", coll_args.topology,
                   "central_dst or random_peers")
      ->check(CLI::IsMember(
          {"central", "central_dst", "random", "random_peers"}));
  coll_cmd->add_option("--p-tx", coll_args.p_tx,
                       "Per-cycle transmit probability (overrides IAT)");
  coll_cmd->add_option("--mean-iat-s", coll_args.mean_iat_s,
                       "Poisson message inter-arrival (s)");
  coll_cmd->add_option("--n-sl-po", coll_args.n_sl_po,
                       "Listening subframes per cycle");
  coll_cmd->add_option("--t-sl-drx-sf", coll_args.t_sl_drx_sf,
                       "Listening cycle (SF)");
  coll_cmd->add_option("--mc-trials", coll_args.mc_trials,
                       "Also run a Monte-Carlo cross-check of this many trials");
  coll_cmd->add_option("--seed", coll_args.seed, "Monte-Carlo seed");

  SamCollisionArgs samc_args;
  CLI::App* samc_cmd = ana->add_subcommand(
      "sam-collision", "Per-subframe beacon-collision probability");
  samc_cmd->add_option("--n-ue", samc_args.n_ue, "Device count")->required();
  samc_cmd->add_option("--n-bands", samc_args.n_bands, "Unlicensed bands");
  samc_cmd->add_option("--p-cona", samc_args.pr.p_cona,
                       "Connected-active occupancy");
  samc_cmd->add_option("--p-cdrx", samc_args.pr.p_cdrx,
                       "Connected-DRX occupancy");
  samc_cmd->add_option("--p-idrx", samc_args.pr.p_idrx,
                       "Idle-DRX occupancy (default 1)");
  samc_cmd->add_option("--n-sam", samc_args.n_sam,
                       "Beacon length (fraction of one SF)");
  samc_cmd->add_option("--n-sam-u", samc_args.n_sam_u,
                       "Busy-beacon period (SF)");
  samc_cmd->add_option("--n-sam-d", samc_args.n_sam_d,
                       "Occasion-beacon period (SF)");

  BatteryArgs batt_args;
  CLI::App* batt_cmd = ana->add_subcommand(
      "battery", "Battery life under periodic sidelink transfers");
  batt_cmd->add_option("--battery-wh", batt_args.battery_wh,
                       "Battery capacity (Wh)");
  batt_cmd->add_option("--cellular-wh-per-day", batt_args.cellular_wh_per_day,
                       "Primary-RAT draw (Wh/day)");
  batt_cmd->add_option("--message-iat-s", batt_args.message_iat_s,
                       "Sidelink transfer inter-arrival (s); 0 disables");
  batt_cmd->add_option("--n-sl", batt_args.energy.n_sl,
                       "Transport blocks per message");
  batt_cmd->add_option("--n-harq", batt_args.energy.n_harq,
                       "HARQ processes per frame");
  batt_cmd->add_option("--p-tx-mw", batt_args.energy.p_tx_mw,
                       "Transmit power (mW)");
  batt_cmd->add_option("--p-rx-mw", batt_args.energy.p_rx_mw,
                       "Receive power (mW)");
  batt_cmd->add_option("--p-switch-mw", batt_args.energy.p_switch_mw,
                       "Switching power (mW)");

  ReproArgs repro_args;
  CLI::App* repro_cmd = app.add_subcommand(
      "reproduce", "Recompute canned reference results with pinned seeds");
  repro_cmd->add_option("targets", repro_args.targets,
                        "Target names, or 'all' (default: all)");
  repro_cmd->add_option("--out", repro_args.out_dir,
                        "Output directory (default $SCUBA_OUT_DIR or .)");
  repro_cmd->add_option("--scale", repro_args.scale,
                        "Horizon/trial scale factor (default 1.0)");
  repro_cmd->add_flag("--list", repro_args.list, "List target names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are configuration errors
  }

  try {
    run_args.seed_set = run_cmd->count("--seed") > 0;
    sweep_args.seed_set = sweep_cmd->count("--seed") > 0;
    if (run_cmd->parsed()) return cmd_run(run_args);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
    if (ana->parsed()) {
      if (power_cmd->parsed()) return cmd_analytic_power(power_args);
      if (coll_cmd->parsed()) return cmd_analytic_collision(coll_args);
      if (samc_cmd->parsed()) return cmd_analytic_sam_collision(samc_args);
      if (batt_cmd->parsed()) return cmd_analytic_battery(batt_args);
    }
    if (repro_cmd->parsed()) return cmd_reproduce(repro_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
