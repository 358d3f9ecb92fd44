// Sidelink MAC: HARQ frame geometry, payload segmentation, availability
// beacons, and the per-UE protocol state machine that plans one radio action
// per subframe (transmit, listen, switch, or sleep) around the cellular
// link's availability verdicts.
#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "scuba/cellular.hpp"
#include "scuba/metrics.hpp"
#include "scuba/paging.hpp"
#include "scuba/rng.hpp"
#include "scuba/types.hpp"

namespace scuba {

// --- HARQ configuration and frame arithmetic -------------------------------

enum class HarqScheme {
  kFixedMcs,    // grant-free, blind decoding, fixed TBS
  kGrantBased,  // control-channel grant precedes every data subframe
};

const char* to_string(HarqScheme scheme);

struct HarqConfig {
  HarqScheme scheme = HarqScheme::kFixedMcs;
  int n_harq = 4;        // parallel synchronous processes
  int n_sl_grant = 2;    // grant-to-data lead time in SFs (grant-based only)
  int mcs = 6;           // static modulation-and-coding index
  int tbs_bits = 256;    // transport block size
  int prb = 3;           // physical resource blocks per transmission
  int overhead_bytes = 19;  // cross-layer header cost per transport block
};

void validate(const HarqConfig& cfg);

// Hard cap on transport blocks per message: half the 10-bit sequence space,
// so a message never wraps onto its own live sequence numbers.
inline constexpr int kMaxTbsPerMessage = 512;

// Number of transport blocks needed to carry `payload_bytes`.
int segment_payload(int payload_bytes, const HarqConfig& cfg);

// One TX/RX cycle: n_harq TX SFs, a switch SF, n_harq RX SFs, a switch SF.
int harq_frame_length(int n_harq);

// Frame-relative data subframe for a grant sent on frame-relative SF i.
// Values >= harq_frame_length() wrap into the next frame's TX half.
int grant_to_data_sf(int grant_sf, const HarqConfig& cfg);

// Whether a grant on frame-relative SF i maps to a usable data subframe
// (one inside a TX half rather than a switching gap).
bool grant_slot_valid(int grant_sf, const HarqConfig& cfg);

// Frame-relative SF on which the receiver acknowledges data sent on
// frame-relative SF data_sf (one switch SF lies in between).
int ack_sf_for_data(int data_sf, int n_harq);

// --- Availability beacons ---------------------------------------------------

struct SamConfig {
  Sf n_sam_period = 150;      // discovery listening window
  Sf n_sam_u_interval = 20;   // busy-beacon cadence while connected-active
  Sf n_sam_d_interval = 75;   // occasion-beacon cadence while in CDRX
  double sam_len = 0.5;       // beacon length as a fraction of one SF
};

void validate(const SamConfig& cfg);

// --- On-air packets ----------------------------------------------------------

enum class PacketKind {
  kData,   // one transport block
  kGrant,  // control-channel grant announcing upcoming data
  kAck,    // per-block acknowledgment
  kSamU,   // broadcast: transmitter is busy on the cellular link
  kSamD,   // broadcast: transmitter will listen at dyn_po_sf
};

const char* to_string(PacketKind kind);

struct SlPacket {
  PacketKind kind = PacketKind::kData;
  int src = -1;
  int dst = -1;           // -1 for broadcasts
  int seq = 0;            // 10-bit rolling sequence number
  int tb_index = 0;       // position within the segmented message
  int n_sl_total = 0;     // total transport blocks in the message
  int slot_in_frame = 0;  // frame-relative SF of this transmission
  int frame_idx = 0;      // frame counter within the current attempt
  Sf dyn_po_sf = kNever;  // advertised dynamic occasion (kSamD)
  bool more_data = false; // receiver has reverse traffic queued (kAck)
  int band = 0;           // stamped by the medium
};

// --- Per-subframe radio plan -------------------------------------------------

struct SfPlan {
  enum class Action { kSleep, kListen, kTx, kSwitch };
  Action action = Action::kSleep;
  int band = 0;
  double tx_fraction = 1.0;        // beacons occupy half a subframe
  Purpose purpose = Purpose::kPaging;
  std::vector<SlPacket> packets;   // kTx only; grant+data may share an SF
};

const char* to_string(SfPlan::Action action);

struct CompletedTransfer {
  int src = -1;
  int dst = -1;
  Sf created_at = 0;
  Sf completed_sf = 0;
  int n_sl = 0;
  int attempts = 0;
};

struct CommitResult {
  std::optional<CompletedTransfer> completed;
};

// Aggregate activity counters exposed for reports and protocol audits.
struct SlUeStats {
  long long messages_queued = 0;
  long long messages_completed = 0;  // as transmitter
  long long tbs_created = 0;
  long long tbs_acked = 0;
  long long tbs_delivered = 0;       // as receiver, first copies only
  long long duplicate_tbs = 0;       // as receiver
  long long attempts = 0;            // anchored transmission attempts
  long long data_tx_sf = 0;
  long long grant_tx_sf = 0;
  long long ack_tx_sf = 0;
  long long sam_u_tx = 0;
  long long sam_d_tx = 0;
};

// --- Protocol state machine ---------------------------------------------------

// One instance per UE. The engine drives it in lock-step with the UE's
// cellular machine: queue_message() on traffic arrivals, then plan() for
// every SF, then commit() with whatever the medium delivered.
class SlUe {
 public:
  struct Params {
    int ue_id = 0;
    ScubaMode mode = ScubaMode::kNative;
    HarqConfig harq;
    SamConfig sam;
    PoSchedule schedule;     // own fixed occasions (empty in LLM)
    Sf drx_inat = 100;       // back-off after hearing a busy beacon
    Sf n_sl_inat = 0;        // mutual listen window after a session
    int n_bands = 2;
    std::uint64_t run_seed = 1;
  };

  // Returns the peer's next fixed occasion strictly after `after`, or
  // kNever when the peer keeps none (LLM).
  using PoLookup = std::function<Sf(int peer, Sf after)>;

  SlUe(const Params& params, const CellularUe* cell, PoLookup next_po);

  void queue_message(int dst, int payload_bytes, Sf created_sf);

  // Decide this SF's radio action. Must be called for every SF in order,
  // after the cellular machine has advanced.
  const SfPlan& plan(Sf sf, const CellStep& cell_step);

  // Deliver the packets this UE successfully received (it must have planned
  // kListen). Call only when `heard` is non-empty.
  CommitResult commit(Sf sf, const std::vector<SlPacket>& heard);

  const SlUeStats& stats() const { return stats_; }
  int ue_id() const { return params_.ue_id; }
  ScubaMode mode() const { return params_.mode; }
  bool in_session() const;
  long long tbs_outstanding() const;
  // Unacknowledged transport blocks actually sitting in the send queue.
  // Always equals tbs_outstanding(); the engine audits the two against each
  // other so a leaked or double-finished message cannot go unnoticed.
  long long tbs_in_buffer() const;
  int queued_messages() const { return static_cast<int>(queue_.size()); }

 private:
  enum class Phase {
    kIdle,
    kSamDiscovery,   // listening for a beacon before transmitting
    kSamBackoff,     // peer advertised busy; sleeping it off
    kWaitAnchor,     // attempt scheduled at anchor_sf (kNever = blocked)
    kConnectedSrc,
    kConnectedDst,
    kRevListen,      // expecting the peer to start a reverse session
    kSlInactivity,   // post-session mutual listening
  };

  // Transmit-side progress of one queued message; survives failed attempts.
  struct OutboundMsg {
    int dst = -1;
    int n_sl = 0;
    Sf created_at = 0;
    int base_seq = 0;
    std::vector<bool> acked;
    int acked_count = 0;
    int attempts = 0;
  };

  // Receive-side reassembly state per peer; survives aborted sessions.
  struct InboundMsg {
    int base_seq = -1;
    int n_sl = 0;
    std::vector<bool> have;
    int have_count = 0;
    bool completed = false;
  };

  struct SrcAttempt {
    Sf anchor = kNever;
    int band = 0;
    int frame_idx = 0;
    bool ack_this_frame = false;
    bool peer_more_data = false;
    int tx_in_frame = 0;
    std::vector<int> txed_tb;  // per TX slot: transport block index or -1
  };

  struct DstSession {
    int peer = -1;
    Sf anchor = kNever;
    int band = 0;
    int frame_idx = 0;
    bool decoded_this_frame = false;
    std::vector<int> ack_slot_tb;  // per frame-relative SF: TB to ack or -1
  };

  // Phase handlers, called from plan() once per SF.
  void plan_session_src(Sf sf, Availability verdict);
  void plan_session_dst(Sf sf, Availability verdict);
  void plan_wait_anchor(Sf sf, Availability verdict);
  void plan_idle_listen(Sf sf, Availability verdict);

  void start_procedure(Sf sf);
  void resolve_llm_anchor(Sf sf);
  void begin_attempt(Sf sf);
  void end_attempt_and_reanchor(Sf sf);
  void finish_transfer(Sf sf, CommitResult* result);
  void enter_post_session(Sf sf);
  void upgrade_to_dst(Sf sf, const SlPacket& pkt);
  void note_beacon(Sf sf, const SlPacket& pkt);
  bool reverse_queued_for(int peer) const;

  void track_cellular(Sf sf, const CellStep& step);
  bool sam_beacons_enabled() const;
  bool plan_sam_u(Sf sf, Availability verdict);
  bool plan_sam_d(Sf sf, Availability verdict);

  void set_plan_tx(PacketKind kind, const SlPacket& pkt, int band,
                   double fraction, Purpose purpose);
  void set_plan(SfPlan::Action action, Purpose purpose);

  int frame_len() const { return harq_frame_length(params_.harq.n_harq); }
  int data_slots_per_frame() const;
  int first_data_slot() const;
  int chain_stride() const;
  int tb_for_slot(const OutboundMsg& msg, int data_slot) const;

  Params params_;
  const CellularUe* cell_;
  PoLookup next_po_;
  std::mt19937_64 band_rng_;

  Phase phase_ = Phase::kIdle;
  std::deque<OutboundMsg> queue_;
  std::unordered_map<int, InboundMsg> inbound_;
  SrcAttempt src_;
  DstSession dst_;

  // Anchor bookkeeping outside active sessions.
  Sf wait_anchor_ = kNever;
  Sf llm_floor_ = 0;  // earliest re-anchor after a failed attempt
  Sf discovery_deadline_ = kNever;
  Sf backoff_until_ = kNever;
  Sf inactivity_left_ = 0;
  Sf rev_anchor_ = kNever;
  int rev_frames_left_ = 0;
  int rev_peer_ = -1;

  // Passive knowledge from heard beacons, per peer.
  std::unordered_map<int, Sf> last_sam_u_;
  std::unordered_map<int, Sf> heard_dyn_po_;

  // Own beacon scheduling.
  Sf sam_u_due_ = kNever;
  Sf sam_d_due_ = kNever;
  CellMode prev_cell_mode_ = CellMode::kIdrxSleep;
  std::deque<Sf> own_dyn_pos_;  // sorted pending listen obligations

  std::vector<bool> own_po_mask_;  // one hyper-frame, tiled
  int next_seq_ = 0;

  SfPlan plan_;
  Sf last_plan_sf_ = -1;
  SlUeStats stats_;
};

}  // namespace scuba
