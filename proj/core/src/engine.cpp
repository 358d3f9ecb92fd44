// Run loop: wires scenario specs into per-UE machines, advances everything
// subframe by subframe, resolves the shared medium per band, and audits the
// radio-usage invariants inline so a violation stops the run at the exact
// subframe it happens.
#include "scuba/engine.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace scuba {

namespace {

bool in_cona(CellMode m) {
  return m == CellMode::kConaSetup || m == CellMode::kConaData ||
         m == CellMode::kConaInactivity;
}

bool in_cdrx(CellMode m) {
  return m == CellMode::kCdrxOn || m == CellMode::kCdrxOff;
}

// Everything the loop tracks for one UE: its machines, arrival streams,
// energy account and audit state.
struct UeRuntime {
  UeRuntime(const Scenario& sc, int idx, PoSchedule sched,
            SlUe::PoLookup lookup)
      : schedule(std::move(sched)),
        cell(sc.ues[static_cast<std::size_t>(idx)].cellular,
             schedule.idrx_po_sf),
        sl(make_params(sc, idx, schedule), &cell, std::move(lookup)),
        cell_arrivals(sc.ues[static_cast<std::size_t>(idx)].cell_traffic,
                      sc.seed, static_cast<std::uint64_t>(idx),
                      RngStream::kCellularTraffic),
        sl_arrivals(sc.ues[static_cast<std::size_t>(idx)].sl_traffic, sc.seed,
                    static_cast<std::uint64_t>(idx),
                    RngStream::kSidelinkTraffic),
        peer_rng(make_rng(sc.seed, static_cast<std::uint64_t>(idx),
                          RngStream::kPeerSelect)),
        ledger(sc.power) {
    next_cell_arrival = cell_arrivals.next_after(0);
    next_sl_arrival = sl_arrivals.next_after(0);
  }

  static SlUe::Params make_params(const Scenario& sc, int idx,
                                  const PoSchedule& sched) {
    const UeSpec& spec = sc.ues[static_cast<std::size_t>(idx)];
    SlUe::Params p;
    p.ue_id = idx;
    p.mode = spec.mode;
    p.harq = spec.harq;
    p.sam = spec.sam;
    p.schedule = sched;
    p.drx_inat = spec.cellular.drx_inat;
    p.n_sl_inat = spec.n_sl_inat;
    p.n_bands = sc.n_bands;
    p.run_seed = sc.seed;
    return p;
  }

  PoSchedule schedule;
  CellularUe cell;
  SlUe sl;
  ArrivalStream cell_arrivals;
  ArrivalStream sl_arrivals;
  std::mt19937_64 peer_rng;
  EnergyLedger ledger;

  Sf next_cell_arrival = kNever;
  Sf next_sl_arrival = kNever;

  // Cellular-state occupancy and in-state listening tallies.
  long long sf_cona = 0;
  long long sf_cdrx = 0;
  long long sf_idrx = 0;
  long long listen_cdrx = 0;
  long long listen_idrx = 0;
  long long cona_entries = 0;
  bool was_cona = false;

  std::vector<std::pair<Sf, double>> tx_time;  // duty-cycle samples

  // Previous subframe's action, for the turnaround audit and the trace.
  SfPlan::Action prev_action = SfPlan::Action::kSleep;
  double prev_tx_fraction = 1.0;
};

// Destination choice for a fresh message: everyone reports to UE 0 in the
// central topology (UE 0 itself answers a uniformly drawn peer); otherwise a
// uniform draw over all other UEs.
int pick_dst(Topology topo, int self, int n, std::mt19937_64& rng) {
  if (topo == Topology::kCentralDst) {
    if (self != 0) {
      return 0;
    }
    return 1 + static_cast<int>(
                   uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
  }
  int d =
      static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
  if (d >= self) {
    ++d;
  }
  return d;
}

// The cellular verdict caps what the sidelink may do in a subframe, and a
// single radio cannot flip between full-subframe transmit and listen without
// a switching gap (half-subframe beacons leave room to retune).
void audit_plan(Sf sf, int ue, const CellStep& step, const SfPlan& p,
                const UeRuntime& u) {
  const char* fail = nullptr;
  if (step.verdict == Availability::kBusy &&
      p.action != SfPlan::Action::kSleep) {
    fail = "sidelink action on a busy subframe";
  } else if (step.verdict == Availability::kSamUWindowOnly &&
             p.action != SfPlan::Action::kSleep &&
             !(p.action == SfPlan::Action::kTx && p.tx_fraction < 1.0)) {
    fail = "switching gap fits only a half-subframe beacon";
  } else {
    const bool prev_full_tx = u.prev_action == SfPlan::Action::kTx &&
                              u.prev_tx_fraction >= 1.0;
    const bool full_tx =
        p.action == SfPlan::Action::kTx && p.tx_fraction >= 1.0;
    if ((prev_full_tx && p.action == SfPlan::Action::kListen) ||
        (u.prev_action == SfPlan::Action::kListen && full_tx)) {
      fail = "transmit/listen turnaround without a switching gap";
    }
  }
  if (fail != nullptr) {
    throw InvariantError("ue " + std::to_string(ue) + " sf " +
                         std::to_string(sf) + ": " + fail);
  }
}

}  // namespace

void validate(const Scenario& sc) {
  if (sc.ues.size() < 2) {
    throw ConfigError("ues: a run needs at least two UEs");
  }
  if (sc.n_bands < 1) {
    throw ConfigError("n_bands: at least one band required");
  }
  if (sc.horizon_sf <= 0) {
    throw ConfigError("horizon_sf: must be positive");
  }
  validate(sc.power);
  for (std::size_t i = 0; i < sc.ues.size(); ++i) {
    const UeSpec& ue = sc.ues[i];
    try {
      (void)derive_ue_id(ue.identity);
      validate(ue.paging);
      validate(ue.sl_paging);
      validate(ue.cellular);
      validate(ue.cell_traffic);
      validate(ue.sl_traffic);
      validate(ue.harq);
      validate(ue.sam);
      if (ue.sl_payload_bytes <= 0) {
        throw ConfigError("sl_payload_bytes: must be positive");
      }
      if (ue.n_sl_inat < 0) {
        throw ConfigError("n_sl_inat: must be >= 0");
      }
      if ((ue.mode == ScubaMode::kLlm) != (ue.sl_paging.t_sl_drx == 0)) {
        throw ConfigError(
            ue.mode == ScubaMode::kLlm
                ? "sl_paging.t_sl_drx: must be 0 in low-latency mode"
                : "sl_paging.t_sl_drx: 0 is reserved for low-latency mode");
      }
      if (segment_payload(ue.sl_payload_bytes, ue.harq) > kMaxTbsPerMessage) {
        throw ConfigError("sl_payload_bytes: message would exceed " +
                          std::to_string(kMaxTbsPerMessage) +
                          " transport blocks");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("ues[" + std::to_string(i) + "]: " + e.what());
    }
  }
}

std::vector<UeSpec> uniform_ues(const UeSpec& tmpl, int n, std::uint64_t imsi0,
                                std::uint64_t imsi_stride) {
  if (n < 1) {
    throw ConfigError("uniform_ues: n must be >= 1");
  }
  std::vector<UeSpec> out(static_cast<std::size_t>(n), tmpl);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].identity.imsi = imsi0 + i * imsi_stride;
  }
  return out;
}

int band_select(std::mt19937_64& rng, int n_bands) {
  if (n_bands < 1) {
    throw ConfigError("band_select: n_bands must be >= 1");
  }
  return static_cast<int>(
      uniform_below(rng, static_cast<std::uint64_t>(n_bands)));
}

RunReport run(const Scenario& sc, const RunOptions& opt) {
  validate(sc);
  const int n = static_cast<int>(sc.ues.size());

  // Paging directory: occasion timetables are a pure function of identity,
  // so every UE can compute every peer's occasions without signalling.
  auto directory = std::make_shared<std::vector<PoSchedule>>();
  directory->reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const UeSpec& ue = sc.ues[static_cast<std::size_t>(i)];
    try {
      directory->push_back(build_po_schedule(ue.paging, ue.sl_paging,
                                             ue.identity));
    } catch (const ConfigError& e) {
      throw ConfigError("ues[" + std::to_string(i) + "]: " + e.what());
    }
  }
  SlUe::PoLookup lookup = [directory](int peer, Sf after) -> Sf {
    if (peer < 0 || peer >= static_cast<int>(directory->size())) {
      throw InvariantError("occasion lookup for unknown ue " +
                           std::to_string(peer));
    }
    const PoSchedule& sched = (*directory)[static_cast<std::size_t>(peer)];
    if (sched.po_sf.empty()) {
      return kNever;
    }
    return next_sl_po(sched, after);
  };

  std::vector<std::unique_ptr<UeRuntime>> ues;
  ues.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ues.push_back(std::make_unique<UeRuntime>(sc, i, (*directory)[static_cast<
                      std::size_t>(i)], lookup));
  }

  RunReport report;
  report.scenario = sc.name;
  report.seed = sc.seed;
  report.horizon_sf = sc.horizon_sf;
  report.t_sf_ms = sc.power.t_sf_ms;
  report.tx_sf_by_band.assign(static_cast<std::size_t>(sc.n_bands), 0);

  LatencyRecorder latency;
  std::vector<const SfPlan*> plans(static_cast<std::size_t>(n), nullptr);
  std::vector<CellStep> steps(static_cast<std::size_t>(n));
  std::vector<int> txers;
  txers.reserve(static_cast<std::size_t>(n));
  std::vector<int> band_count(static_cast<std::size_t>(sc.n_bands), 0);
  std::vector<unsigned char> collided(static_cast<std::size_t>(n), 0);
  std::vector<SlPacket> delivered;
  delivered.reserve(8);

  for (Sf sf = 0; sf < sc.horizon_sf; ++sf) {
    // Arrivals, cellular step, sidelink plan, audits, energy.
    txers.clear();
    int listeners = 0;
    for (int i = 0; i < n; ++i) {
      UeRuntime& u = *ues[static_cast<std::size_t>(i)];
      if (u.next_cell_arrival == sf) {
        u.cell.on_arrival(sf);
        u.next_cell_arrival = u.cell_arrivals.next_after(sf);
      }
      steps[static_cast<std::size_t>(i)] = u.cell.advance(sf);
      if (u.next_sl_arrival == sf) {
        u.sl.queue_message(
            pick_dst(sc.topology, i, n, u.peer_rng),
            sc.ues[static_cast<std::size_t>(i)].sl_payload_bytes, sf);
        u.next_sl_arrival = u.sl_arrivals.next_after(sf);
      }
      const SfPlan& p = u.sl.plan(sf, steps[static_cast<std::size_t>(i)]);
      plans[static_cast<std::size_t>(i)] = &p;
      audit_plan(sf, i, steps[static_cast<std::size_t>(i)], p, u);

      const CellMode mode = steps[static_cast<std::size_t>(i)].mode;
      const bool cona = in_cona(mode);
      if (cona && !u.was_cona) {
        u.cona_entries++;
      }
      u.was_cona = cona;
      if (cona) {
        u.sf_cona++;
      } else if (in_cdrx(mode)) {
        u.sf_cdrx++;
      } else {
        u.sf_idrx++;
      }

      switch (p.action) {
        case SfPlan::Action::kTx:
          u.ledger.add(Activity::kTx, p.purpose, p.tx_fraction);
          u.tx_time.emplace_back(sf, p.tx_fraction);
          report.tx_sf_by_band[static_cast<std::size_t>(p.band)]++;
          txers.push_back(i);
          break;
        case SfPlan::Action::kListen:
          u.ledger.add(Activity::kRxListen, p.purpose);
          if (in_cdrx(mode)) {
            u.listen_cdrx++;
          } else if (!cona) {
            u.listen_idrx++;
          }
          ++listeners;
          break;
        case SfPlan::Action::kSwitch:
          u.ledger.add(Activity::kSwitch, p.purpose);
          break;
        case SfPlan::Action::kSleep:
          break;
      }
    }

    // Medium: two or more transmitters on one band destroy each other's
    // packets; every surviving packet reaches every listener.
    int heard = 0;
    if (!txers.empty()) {
      std::fill(band_count.begin(), band_count.end(), 0);
      for (int t : txers) {
        band_count[static_cast<std::size_t>(
            plans[static_cast<std::size_t>(t)]->band)]++;
      }
      for (int b = 0; b < sc.n_bands; ++b) {
        if (band_count[static_cast<std::size_t>(b)] >= 2) {
          report.collision_events++;
        }
      }
      delivered.clear();
      for (int t : txers) {
        const SfPlan& p = *plans[static_cast<std::size_t>(t)];
        const bool lost = band_count[static_cast<std::size_t>(p.band)] >= 2;
        collided[static_cast<std::size_t>(t)] = lost ? 1 : 0;
        if (lost) {
          report.collided_packets += static_cast<long long>(p.packets.size());
          for (const SlPacket& pkt : p.packets) {
            if (pkt.kind == PacketKind::kData) {
              report.collided_data_tb++;
            }
          }
        } else {
          for (const SlPacket& pkt : p.packets) {
            delivered.push_back(pkt);
            delivered.back().band = p.band;
          }
        }
      }
      heard = static_cast<int>(delivered.size());
      if (!delivered.empty() && listeners > 0) {
        for (int i = 0; i < n; ++i) {
          if (plans[static_cast<std::size_t>(i)]->action !=
              SfPlan::Action::kListen) {
            continue;
          }
          CommitResult res = ues[static_cast<std::size_t>(i)]->sl.commit(
              sf, delivered);
          if (res.completed) {
            const CompletedTransfer& done = *res.completed;
            latency.record(
                static_cast<double>(done.completed_sf - done.created_at + 1) *
                sc.power.t_sf_ms);
            report.messages_completed++;
          }
        }
      }
    }

    if (opt.trace) {
      TraceRecord rec;
      rec.sf = sf;
      for (int i = 0; i < n; ++i) {
        const SfPlan& p = *plans[static_cast<std::size_t>(i)];
        const UeRuntime& u = *ues[static_cast<std::size_t>(i)];
        if (p.action == SfPlan::Action::kSleep &&
            u.prev_action == SfPlan::Action::kSleep) {
          continue;
        }
        rec.ue = i;
        rec.action = p.action;
        rec.band = p.action == SfPlan::Action::kTx ? p.band : 0;
        rec.packets.clear();
        switch (p.action) {
          case SfPlan::Action::kTx:
            rec.outcome =
                collided[static_cast<std::size_t>(i)] ? "collided"
                                                      : "delivered";
            rec.packets = p.packets;
            break;
          case SfPlan::Action::kListen:
            rec.outcome =
                heard > 0 ? "heard=" + std::to_string(heard) : "silent";
            break;
          case SfPlan::Action::kSwitch:
            rec.outcome = "turnaround";
            break;
          case SfPlan::Action::kSleep:
            rec.outcome = "sleep";
            break;
        }
        opt.trace(rec);
      }
    }
    for (int i = 0; i < n; ++i) {
      UeRuntime& u = *ues[static_cast<std::size_t>(i)];
      u.prev_action = plans[static_cast<std::size_t>(i)]->action;
      u.prev_tx_fraction = plans[static_cast<std::size_t>(i)]->tx_fraction;
    }
  }

  // Terminal accounting: every created transport block is either
  // acknowledged or still sitting in its sender's buffer, and nothing is
  // acknowledged that was never received.
  long long acked_total = 0;
  long long delivered_total = 0;
  for (int i = 0; i < n; ++i) {
    const SlUe& sl = ues[static_cast<std::size_t>(i)]->sl;
    if (sl.tbs_in_buffer() != sl.tbs_outstanding()) {
      throw InvariantError(
          "ue " + std::to_string(i) + ": transport-block accounting leak (" +
          std::to_string(sl.tbs_in_buffer()) + " buffered vs " +
          std::to_string(sl.tbs_outstanding()) + " outstanding)");
    }
    acked_total += sl.stats().tbs_acked;
    delivered_total += sl.stats().tbs_delivered;
  }
  if (acked_total > delivered_total) {
    throw InvariantError("more transport blocks acknowledged (" +
                         std::to_string(acked_total) + ") than delivered (" +
                         std::to_string(delivered_total) + ")");
  }

  const double horizon_ms =
      static_cast<double>(sc.horizon_sf) * sc.power.t_sf_ms;
  const Sf window = std::min(opt.duty_window_sf, sc.horizon_sf);
  double power_sum = 0.0;
  report.ues.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    UeRuntime& u = *ues[static_cast<std::size_t>(i)];
    UeReport& out = report.ues[static_cast<std::size_t>(i)];
    out.ue_id = i;
    out.mode = sc.ues[static_cast<std::size_t>(i)].mode;
    out.energy_mj = u.ledger.total_mj();
    for (int a = 0; a < kActivityCount; ++a) {
      out.energy_by_activity_mj[static_cast<std::size_t>(a)] =
          u.ledger.activity_mj(static_cast<Activity>(a));
    }
    for (int p = 0; p < kPurposeCount; ++p) {
      out.energy_by_purpose_mj[static_cast<std::size_t>(p)] =
          u.ledger.purpose_mj(static_cast<Purpose>(p));
    }
    out.avg_power_mw = out.energy_mj / horizon_ms * 1000.0;
    out.p_cona = static_cast<double>(u.sf_cona) /
                 static_cast<double>(sc.horizon_sf);
    out.p_cdrx = static_cast<double>(u.sf_cdrx) /
                 static_cast<double>(sc.horizon_sf);
    out.p_idrx = static_cast<double>(u.sf_idrx) /
                 static_cast<double>(sc.horizon_sf);
    out.listen_fraction_cdrx =
        u.sf_cdrx > 0 ? static_cast<double>(u.listen_cdrx) /
                            static_cast<double>(u.sf_cdrx)
                      : 0.0;
    out.listen_fraction_idrx =
        u.sf_idrx > 0 ? static_cast<double>(u.listen_idrx) /
                            static_cast<double>(u.sf_idrx)
                      : 0.0;
    out.cona_entries = u.cona_entries;
    out.duty_cycle = duty_cycle(u.tx_time, sc.horizon_sf, window);
    out.mac = u.sl.stats();
    power_sum += out.avg_power_mw;
  }
  report.avg_power_mw = power_sum / static_cast<double>(n);
  if (latency.count() > 0) {
    report.latency_avg_ms = latency.avg();
    report.latency_p99_ms = latency.percentile(99.0);
    report.latency_max_ms = latency.max();
    if (opt.keep_latency_samples) {
      report.latency_samples_ms = latency.samples();
    }
  }
  return report;
}

StateProbabilities probabilities_from(const RunReport& report) {
  if (report.ues.empty()) {
    throw ConfigError("probabilities_from: report carries no UEs");
  }
  StateProbabilities pr;
  double cona = 0.0;
  double cdrx = 0.0;
  double idrx = 0.0;
  long long beacons = 0;
  long long entries = 0;
  for (const UeReport& ue : report.ues) {
    cona += ue.p_cona;
    cdrx += ue.p_cdrx;
    idrx += ue.p_idrx;
    beacons += ue.mac.sam_u_tx;
    entries += ue.cona_entries;
  }
  const double n = static_cast<double>(report.ues.size());
  pr.p_cona = cona / n;
  pr.p_cdrx = cdrx / n;
  pr.p_idrx = idrx / n;
  pr.k_sam_u = entries > 0 ? static_cast<double>(beacons) /
                                 static_cast<double>(entries)
                           : 0.0;
  return pr;
}

}  // namespace scuba
