// scuba/engine.hpp — scenario description and the subframe-stepped run loop.
//
// A scenario binds N UEs (each with its own cellular modem, paging timetable,
// traffic and sidelink machine) to a shared medium of n_bands unlicensed
// channels. The engine advances all machines one subframe at a time, resolves
// collisions per band, charges every radio action to per-UE energy ledgers,
// and aggregates power, latency, collision and occupancy figures into a
// report. Runs are bit-reproducible for a fixed (scenario, seed).
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scuba/analytics.hpp"
#include "scuba/cellular.hpp"
#include "scuba/mac.hpp"
#include "scuba/metrics.hpp"
#include "scuba/paging.hpp"
#include "scuba/traffic.hpp"
#include "scuba/types.hpp"

namespace scuba {

/// Everything one UE brings to a run. Defaults follow the common settings
/// used throughout the evaluation scenarios.
struct UeSpec {
  UeIdentity identity;
  ScubaMode mode = ScubaMode::kNative;
  PagingConfig paging;
  SlPagingConfig sl_paging;
  CellularConfig cellular;
  TrafficModel cell_traffic;            ///< primary-RAT data arrivals
  TrafficModel sl_traffic;              ///< sidelink message arrivals
  int sl_payload_bytes = 100;           ///< application payload per message
  HarqConfig harq;
  SamConfig sam;
  Sf n_sl_inat = 0;                     ///< post-session mutual listen window
};

/// A complete simulation input: who participates, for how long, over how
/// many bands, and who sends to whom.
struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  Sf horizon_sf = 10 * kSfPerHyper;
  int n_bands = 2;
  Topology topology = Topology::kCentralDst;
  PowerProfile power;
  std::vector<UeSpec> ues;              ///< at least two entries
};

/// Field-level checks for the scenario and every UE spec; per-UE failures are
/// reported with their index ("ues[3]: ...").
void validate(const Scenario& sc);

/// n copies of a template whose identities step from imsi0 by imsi_stride.
/// Distinct identities give distinct paging timetables, which keeps fixed
/// occasions from piling onto the same subframes.
std::vector<UeSpec> uniform_ues(const UeSpec& tmpl, int n, std::uint64_t imsi0,
                                std::uint64_t imsi_stride = 1);

/// Uniform seeded band choice for one transmission attempt.
int band_select(std::mt19937_64& rng, int n_bands);

/// One line of the optional run trace.
struct TraceRecord {
  Sf sf = 0;
  int ue = 0;
  SfPlan::Action action = SfPlan::Action::kSleep;
  int band = 0;
  std::string outcome;            ///< "delivered", "collided", "heard=2", ...
  std::vector<SlPacket> packets;  ///< transmission records only
};
using TraceSink = std::function<void(const TraceRecord&)>;

struct RunOptions {
  /// When set, receives a record for every non-sleep subframe of every UE
  /// plus each transition back to sleep, in (sf, ue) order.
  TraceSink trace;
  /// Sliding window of the transmit-duty audit; one regulatory hour.
  Sf duty_window_sf = 3600000;
  /// Keep every latency sample in the report (for pooling across runs).
  bool keep_latency_samples = true;
};

/// Per-UE results: energy split by activity and purpose, cellular-state
/// occupancy, listening density inside each DRX state, duty cycle, and the
/// protocol counters of the sidelink machine.
struct UeReport {
  int ue_id = 0;
  ScubaMode mode = ScubaMode::kNative;
  double avg_power_mw = 0.0;
  double energy_mj = 0.0;
  std::array<double, kActivityCount> energy_by_activity_mj{};
  std::array<double, kPurposeCount> energy_by_purpose_mj{};
  double p_cona = 0.0;
  double p_cdrx = 0.0;
  double p_idrx = 0.0;
  double listen_fraction_cdrx = 0.0;  ///< listen SFs / SFs in connected DRX
  double listen_fraction_idrx = 0.0;  ///< listen SFs / SFs in idle DRX
  long long cona_entries = 0;         ///< connected-mode episodes begun
  double duty_cycle = 0.0;
  SlUeStats mac;
};

/// Whole-run aggregation. Latency is pooled over all completed messages;
/// avg_power_mw is the mean of the per-UE averages.
struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  Sf horizon_sf = 0;
  double t_sf_ms = 1.0;
  double avg_power_mw = 0.0;
  long long messages_completed = 0;
  double latency_avg_ms = 0.0;
  double latency_p99_ms = 0.0;
  double latency_max_ms = 0.0;
  std::vector<double> latency_samples_ms;
  long long collision_events = 0;     ///< band-subframes with overlapping TX
  long long collided_packets = 0;
  long long collided_data_tb = 0;
  std::vector<long long> tx_sf_by_band;
  std::vector<UeReport> ues;
};

/// Runs the scenario to its horizon. Throws ConfigError for bad input and
/// InvariantError if a runtime audit fails (radio used on a busy subframe,
/// transmit/listen turnaround without a switching gap, transport-block
/// accounting leak).
RunReport run(const Scenario& sc, const RunOptions& opt = {});

/// Pools a finished run's cellular-state occupancies into the analytic
/// model's input form; k_sam_u is beacons emitted per connected episode.
StateProbabilities probabilities_from(const RunReport& report);

}  // namespace scuba
