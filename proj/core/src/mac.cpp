#include "scuba/mac.hpp"

#include <algorithm>
#include <string>

namespace scuba {

namespace {

// Positive modulus for the 10-bit rolling sequence space.
int seq_mod(int value) {
  const int m = value % 1024;
  return m < 0 ? m + 1024 : m;
}

}  // namespace

// --- HARQ arithmetic --------------------------------------------------------

const char* to_string(HarqScheme scheme) {
  switch (scheme) {
    case HarqScheme::kFixedMcs: return "fixed_mcs";
    case HarqScheme::kGrantBased: return "grant_based";
  }
  return "?";
}

const char* to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::kData: return "data";
    case PacketKind::kGrant: return "grant";
    case PacketKind::kAck: return "ack";
    case PacketKind::kSamU: return "sam_u";
    case PacketKind::kSamD: return "sam_d";
  }
  return "?";
}

const char* to_string(SfPlan::Action action) {
  switch (action) {
    case SfPlan::Action::kSleep: return "sleep";
    case SfPlan::Action::kListen: return "listen";
    case SfPlan::Action::kTx: return "tx";
    case SfPlan::Action::kSwitch: return "switch";
  }
  return "?";
}

void validate(const HarqConfig& cfg) {
  if (cfg.n_harq < 1) {
    throw ConfigError("harq.n_harq must be at least 1");
  }
  if (cfg.tbs_bits < 8) {
    throw ConfigError("harq.tbs_bits must be at least 8");
  }
  if (cfg.prb < 3) {
    throw ConfigError("harq.prb must be at least 3");
  }
  if (cfg.overhead_bytes < 0) {
    throw ConfigError("harq.overhead_bytes must be non-negative");
  }
  if (cfg.scheme == HarqScheme::kGrantBased &&
      (cfg.n_sl_grant < 1 || cfg.n_sl_grant >= cfg.n_harq)) {
    throw ConfigError(
        "harq.n_sl_grant must lie in [1, n_harq) for the grant-based scheme");
  }
}

int segment_payload(int payload_bytes, const HarqConfig& cfg) {
  const int capacity = cfg.tbs_bits / 8 - cfg.overhead_bytes;
  if (capacity <= 0) {
    throw ConfigError("transport block too small for the per-block overhead");
  }
  if (payload_bytes <= 0) {
    throw ConfigError("payload must be at least one byte");
  }
  return (payload_bytes + capacity - 1) / capacity;
}

int harq_frame_length(int n_harq) {
  if (n_harq < 1) {
    throw ConfigError("n_harq must be at least 1");
  }
  return 2 * (n_harq + 1);
}

int grant_to_data_sf(int grant_sf, const HarqConfig& cfg) {
  if (grant_sf < 0 || grant_sf >= cfg.n_harq) {
    throw ConfigError("grant subframe index outside the TX half");
  }
  if (grant_sf < cfg.n_harq - 1) {
    return grant_sf + cfg.n_sl_grant;
  }
  return grant_sf + 2 * cfg.n_harq;
}

bool grant_slot_valid(int grant_sf, const HarqConfig& cfg) {
  const int frame = harq_frame_length(cfg.n_harq);
  int k = grant_to_data_sf(grant_sf, cfg);
  if (k >= frame) {
    k -= frame;  // wraps into the following frame
  }
  return k < cfg.n_harq;
}

int ack_sf_for_data(int data_sf, int n_harq) {
  if (data_sf < 0 || data_sf >= n_harq) {
    throw ConfigError("data subframe index outside the TX half");
  }
  return data_sf + n_harq + 1;
}

void validate(const SamConfig& cfg) {
  if (cfg.n_sam_period < 1) {
    throw ConfigError("sam.n_sam_period must be positive");
  }
  if (cfg.n_sam_u_interval < 1 || cfg.n_sam_d_interval < 1) {
    throw ConfigError("sam beacon intervals must be positive");
  }
  if (cfg.n_sam_u_interval > cfg.n_sam_period / 2 ||
      cfg.n_sam_d_interval > cfg.n_sam_period / 2) {
    throw ConfigError(
        "sam beacon intervals must not exceed half the listening window");
  }
  if (!(cfg.sam_len > 0.0) || cfg.sam_len > 0.5) {
    throw ConfigError("sam.sam_len must lie in (0, 0.5]");
  }
}

// --- SlUe --------------------------------------------------------------------

SlUe::SlUe(const Params& params, const CellularUe* cell, PoLookup next_po)
    : params_(params),
      cell_(cell),
      next_po_(std::move(next_po)),
      band_rng_(make_rng(params.run_seed, static_cast<std::uint64_t>(params.ue_id),
                         RngStream::kBandSelect)) {
  validate(params_.harq);
  validate(params_.sam);
  if (cell_ == nullptr) {
    throw ConfigError("sidelink machine requires its cellular machine");
  }
  if (!next_po_) {
    throw ConfigError("sidelink machine requires an occasion lookup");
  }
  if (params_.n_bands < 1) {
    throw ConfigError("n_bands must be at least 1");
  }
  if (params_.drx_inat < 1) {
    throw ConfigError("drx_inat must be positive");
  }
  if (params_.n_sl_inat < 0) {
    throw ConfigError("n_sl_inat must be non-negative");
  }
  if (!params_.schedule.po_sf.empty()) {
    own_po_mask_.assign(kSfPerHyper, false);
    for (Sf po : params_.schedule.po_sf) {
      if (po < 0 || po >= kSfPerHyper) {
        throw ConfigError("occasion subframe outside the hyper-frame");
      }
      own_po_mask_[static_cast<std::size_t>(po)] = true;
    }
  }
}

void SlUe::queue_message(int dst, int payload_bytes, Sf created_sf) {
  if (dst == params_.ue_id) {
    throw ConfigError("message addressed to its own transmitter");
  }
  OutboundMsg msg;
  msg.dst = dst;
  msg.n_sl = segment_payload(payload_bytes, params_.harq);
  if (msg.n_sl > kMaxTbsPerMessage) {
    throw ConfigError("message exceeds half the sequence-number space");
  }
  msg.created_at = created_sf;
  msg.base_seq = next_seq_;
  next_seq_ = seq_mod(next_seq_ + msg.n_sl);
  msg.acked.assign(static_cast<std::size_t>(msg.n_sl), false);
  queue_.push_back(std::move(msg));
  stats_.messages_queued++;
  stats_.tbs_created += queue_.back().n_sl;
}

bool SlUe::in_session() const {
  return phase_ == Phase::kConnectedSrc || phase_ == Phase::kConnectedDst;
}

long long SlUe::tbs_outstanding() const {
  return stats_.tbs_created - stats_.tbs_acked;
}

long long SlUe::tbs_in_buffer() const {
  long long left = 0;
  for (const OutboundMsg& msg : queue_) {
    left += msg.n_sl - msg.acked_count;
  }
  return left;
}

int SlUe::data_slots_per_frame() const {
  if (params_.harq.scheme == HarqScheme::kGrantBased) {
    return params_.harq.n_harq - params_.harq.n_sl_grant;
  }
  return params_.harq.n_harq;
}

int SlUe::first_data_slot() const {
  return params_.harq.scheme == HarqScheme::kGrantBased ? params_.harq.n_sl_grant
                                                        : 0;
}

int SlUe::chain_stride() const { return data_slots_per_frame(); }

// Lowest unacknowledged transport block served by the given data slot; the
// slot retransmits it every frame until the acknowledgment lands.
int SlUe::tb_for_slot(const OutboundMsg& msg, int data_slot) const {
  const int offset = data_slot - first_data_slot();
  if (offset < 0) {
    return -1;
  }
  for (int tb = offset; tb < msg.n_sl; tb += chain_stride()) {
    if (!msg.acked[static_cast<std::size_t>(tb)]) {
      return tb;
    }
  }
  return -1;
}

void SlUe::set_plan(SfPlan::Action action, Purpose purpose) {
  plan_.action = action;
  plan_.purpose = purpose;
}

void SlUe::set_plan_tx(PacketKind kind, const SlPacket& pkt, int band,
                       double fraction, Purpose purpose) {
  (void)kind;
  plan_.action = SfPlan::Action::kTx;
  plan_.band = band;
  plan_.tx_fraction = fraction;
  plan_.purpose = purpose;
  plan_.packets.push_back(pkt);
}

bool SlUe::sam_beacons_enabled() const {
  return params_.mode == ScubaMode::kSam || params_.mode == ScubaMode::kLlm;
}

void SlUe::track_cellular(Sf sf, const CellStep& step) {
  const CellMode mode = step.mode;
  if (mode != prev_cell_mode_) {
    const bool was_cdrx = prev_cell_mode_ == CellMode::kCdrxOn ||
                          prev_cell_mode_ == CellMode::kCdrxOff;
    const bool was_inactivity = prev_cell_mode_ == CellMode::kConaInactivity;
    const bool is_cdrx =
        mode == CellMode::kCdrxOn || mode == CellMode::kCdrxOff;
    const bool is_idrx =
        mode == CellMode::kIdrxPo || mode == CellMode::kIdrxSleep;
    if (mode == CellMode::kConaData) {
      sam_u_due_ = kNever;  // new active phase, beacon cadence restarts
    }
    if (is_cdrx && !was_cdrx) {
      sam_d_due_ = sf;  // advertise occasions from CDRX entry onwards
    } else if (is_idrx && was_inactivity) {
      sam_d_due_ = sf;  // CDRX skipped: advertise during idle sleep instead
    } else if (!is_cdrx && !is_idrx) {
      sam_d_due_ = kNever;
    } else if (is_idrx && was_cdrx) {
      sam_d_due_ = kNever;  // occasions end with the connected state
    }
    prev_cell_mode_ = mode;
  }
}

bool SlUe::plan_sam_u(Sf sf, Availability verdict) {
  if (verdict != Availability::kSamUWindowOnly) {
    return false;
  }
  if (sam_u_due_ != kNever && sf < sam_u_due_) {
    return false;
  }
  SlPacket pkt;
  pkt.kind = PacketKind::kSamU;
  pkt.src = params_.ue_id;
  pkt.dst = -1;
  const int band =
      static_cast<int>(uniform_below(band_rng_, static_cast<std::uint64_t>(
                                                    params_.n_bands)));
  set_plan_tx(PacketKind::kSamU, pkt, band, params_.sam.sam_len, Purpose::kSam);
  sam_u_due_ = sf + params_.sam.n_sam_u_interval;
  stats_.sam_u_tx++;
  return true;
}

bool SlUe::plan_sam_d(Sf sf, Availability verdict) {
  if (verdict != Availability::kFree || sam_d_due_ == kNever ||
      sf < sam_d_due_) {
    return false;
  }
  SlPacket pkt;
  pkt.kind = PacketKind::kSamD;
  pkt.src = params_.ue_id;
  pkt.dst = -1;
  pkt.dyn_po_sf = cell_->project_next_free(sf + 2);
  const int band =
      static_cast<int>(uniform_below(band_rng_, static_cast<std::uint64_t>(
                                                    params_.n_bands)));
  set_plan_tx(PacketKind::kSamD, pkt, band, params_.sam.sam_len, Purpose::kSam);
  if (own_dyn_pos_.empty() || own_dyn_pos_.back() != pkt.dyn_po_sf) {
    own_dyn_pos_.push_back(pkt.dyn_po_sf);
  }
  sam_d_due_ = sf + params_.sam.n_sam_d_interval;
  stats_.sam_d_tx++;
  return true;
}

void SlUe::start_procedure(Sf sf) {
  const OutboundMsg& msg = queue_.front();
  switch (params_.mode) {
    case ScubaMode::kSam:
      phase_ = Phase::kSamDiscovery;
      discovery_deadline_ = sf + params_.sam.n_sam_period;
      return;
    case ScubaMode::kLlm:
      phase_ = Phase::kWaitAnchor;
      wait_anchor_ = kNever;
      resolve_llm_anchor(sf);
      return;
    case ScubaMode::kNative:
      break;
  }
  phase_ = Phase::kWaitAnchor;
  wait_anchor_ = next_po_(msg.dst, sf);
  if (wait_anchor_ == kNever) {
    // The destination keeps no fixed occasions (it listens whenever free).
    wait_anchor_ = cell_->project_next_free(sf + 1);
  }
}

void SlUe::resolve_llm_anchor(Sf sf) {
  const int dst = queue_.front().dst;
  auto dyn = heard_dyn_po_.find(dst);
  if (dyn != heard_dyn_po_.end()) {
    if (dyn->second > sf) {
      wait_anchor_ = dyn->second;
      return;
    }
    heard_dyn_po_.erase(dyn);  // stale advertisement
  }
  auto busy = last_sam_u_.find(dst);
  if (busy != last_sam_u_.end() && sf < busy->second + params_.drx_inat) {
    wait_anchor_ = kNever;  // peer announced cellular activity; hold off
    return;
  }
  // Re-project only a missed anchor; an anchor equal to the current SF is
  // the one this attempt begins on.
  if (wait_anchor_ == kNever || wait_anchor_ < sf) {
    wait_anchor_ = cell_->project_next_free(std::max(sf + 1, llm_floor_));
  }
}

void SlUe::begin_attempt(Sf sf) {
  if (sf != wait_anchor_) {
    throw InvariantError("attempt must begin exactly on its anchor");
  }
  src_.anchor = sf;
  src_.band = static_cast<int>(uniform_below(
      band_rng_, static_cast<std::uint64_t>(params_.n_bands)));
  src_.frame_idx = 0;
  src_.ack_this_frame = false;
  src_.peer_more_data = false;
  src_.tx_in_frame = 0;
  src_.txed_tb.assign(static_cast<std::size_t>(params_.harq.n_harq), -1);
  queue_.front().attempts++;
  stats_.attempts++;
  wait_anchor_ = kNever;
  llm_floor_ = 0;
  phase_ = Phase::kConnectedSrc;
}

void SlUe::end_attempt_and_reanchor(Sf sf) {
  src_.anchor = kNever;
  if (params_.mode == ScubaMode::kLlm) {
    // Re-anchor with a small random gap. Two UEs holding traffic for each
    // other would otherwise retry in lock-step, transmitting over each
    // other's deaf TX half forever; the jittered gap (spent listening) lets
    // one of them hear the other and drop into the receiver role.
    phase_ = Phase::kWaitAnchor;
    wait_anchor_ = kNever;
    llm_floor_ = sf + 2 + static_cast<Sf>(uniform_below(band_rng_, 4));
    resolve_llm_anchor(sf);
    return;
  }
  start_procedure(sf);
}

void SlUe::enter_post_session(Sf sf) {
  (void)sf;
  if (params_.n_sl_inat > 0) {
    phase_ = Phase::kSlInactivity;
    inactivity_left_ = params_.n_sl_inat;
  } else {
    phase_ = Phase::kIdle;
  }
}

bool SlUe::reverse_queued_for(int peer) const {
  return !queue_.empty() && queue_.front().dst == peer;
}

void SlUe::finish_transfer(Sf sf, CommitResult* result) {
  OutboundMsg msg = std::move(queue_.front());
  queue_.pop_front();
  stats_.messages_completed++;
  CompletedTransfer done;
  done.src = params_.ue_id;
  done.dst = msg.dst;
  done.created_at = msg.created_at;
  done.completed_sf = sf;
  done.n_sl = msg.n_sl;
  done.attempts = msg.attempts;
  result->completed = done;

  const bool reverse_expected = src_.peer_more_data;
  const Sf anchor = src_.anchor;
  const int frame_idx = src_.frame_idx;
  src_.anchor = kNever;
  if (reverse_expected) {
    // The peer drains its own buffer next; its frames start one frame after
    // the silent frame that confirms our acknowledgments arrived.
    phase_ = Phase::kRevListen;
    rev_peer_ = msg.dst;
    rev_anchor_ = anchor + static_cast<Sf>(frame_idx + 2) * frame_len();
    rev_frames_left_ = 3;
  } else {
    enter_post_session(sf);
  }
}

void SlUe::plan_session_src(Sf sf, Availability verdict) {
  OutboundMsg& msg = queue_.front();
  const int nf = frame_len();
  const int nh = params_.harq.n_harq;
  Sf rel = sf - (src_.anchor + static_cast<Sf>(src_.frame_idx) * nf);
  if (rel == nf) {
    if (!src_.ack_this_frame) {
      // A whole frame without acknowledgments: the peer is unreachable on
      // this anchor, so fall back to the discovery/occasion procedure.
      end_attempt_and_reanchor(sf);
      if (phase_ == Phase::kWaitAnchor) {
        plan_wait_anchor(sf, verdict);
      }
      return;  // discovery listening resumes on the fall-through dispatch
    }
    src_.frame_idx++;
    src_.ack_this_frame = false;
    src_.tx_in_frame = 0;
    std::fill(src_.txed_tb.begin(), src_.txed_tb.end(), -1);
    rel = 0;
  }
  if (rel < 0 || rel >= nf) {
    throw InvariantError("source frame bookkeeping out of range");
  }

  const int slot = static_cast<int>(rel);
  if (slot < nh) {
    if (verdict != Availability::kFree) {
      return;  // cellular owns this SF; the block waits for the next frame
    }
    const bool grant_based = params_.harq.scheme == HarqScheme::kGrantBased;
    // A control-channel grant may share the SF with a data block.
    if (grant_based && slot < nh - params_.harq.n_sl_grant) {
      const int announced = tb_for_slot(msg, slot + params_.harq.n_sl_grant);
      if (announced >= 0) {
        SlPacket grant;
        grant.kind = PacketKind::kGrant;
        grant.src = params_.ue_id;
        grant.dst = msg.dst;
        grant.seq = seq_mod(msg.base_seq + announced);
        grant.tb_index = announced;
        grant.n_sl_total = msg.n_sl;
        grant.slot_in_frame = slot;
        grant.frame_idx = src_.frame_idx;
        plan_.packets.push_back(grant);
        stats_.grant_tx_sf++;
      }
    }
    const int tb = tb_for_slot(msg, slot);
    if (tb >= 0) {
      SlPacket data;
      data.kind = PacketKind::kData;
      data.src = params_.ue_id;
      data.dst = msg.dst;
      data.seq = seq_mod(msg.base_seq + tb);
      data.tb_index = tb;
      data.n_sl_total = msg.n_sl;
      data.slot_in_frame = slot;
      data.frame_idx = src_.frame_idx;
      plan_.packets.push_back(data);
      src_.txed_tb[static_cast<std::size_t>(slot)] = tb;
      stats_.data_tx_sf++;
    }
    if (!plan_.packets.empty()) {
      plan_.action = SfPlan::Action::kTx;
      plan_.band = src_.band;
      plan_.tx_fraction = 1.0;
      plan_.purpose = Purpose::kTransfer;
      src_.tx_in_frame++;
    }
    return;
  }
  if (slot == nh) {
    if (verdict == Availability::kFree && src_.tx_in_frame > 0) {
      set_plan(SfPlan::Action::kSwitch, Purpose::kTransfer);
    }
    return;
  }
  if (slot <= 2 * nh) {
    const int data_slot = slot - nh - 1;
    if (src_.txed_tb[static_cast<std::size_t>(data_slot)] >= 0 &&
        verdict == Availability::kFree) {
      set_plan(SfPlan::Action::kListen, Purpose::kTransfer);
    }
    return;
  }
  // Trailing switch back to TX, in preparation for the next frame.
  if (verdict == Availability::kFree && src_.tx_in_frame > 0 &&
      msg.acked_count < msg.n_sl) {
    set_plan(SfPlan::Action::kSwitch, Purpose::kTransfer);
  }
}

void SlUe::plan_session_dst(Sf sf, Availability verdict) {
  const int nf = frame_len();
  const int nh = params_.harq.n_harq;
  Sf rel = sf - (dst_.anchor + static_cast<Sf>(dst_.frame_idx) * nf);
  if (rel == nf) {
    InboundMsg& in = inbound_[dst_.peer];
    const bool complete = in.n_sl > 0 && in.have_count == in.n_sl;
    if (!dst_.decoded_this_frame) {
      // A silent frame either confirms a finished transfer or means the
      // transmitter re-anchored; both end this session instance.
      const int peer = dst_.peer;
      dst_ = DstSession{};
      if (complete && reverse_queued_for(peer)) {
        // Drain the reverse buffer in the same connected exchange; the
        // trailing switch of the silent frame already turned the radio.
        wait_anchor_ = sf;
        begin_attempt(sf);
        plan_session_src(sf, verdict);
        return;
      }
      if (complete) {
        enter_post_session(sf);
      } else {
        phase_ = Phase::kIdle;
        if (!queue_.empty()) {
          start_procedure(sf);
        }
      }
      if (phase_ == Phase::kWaitAnchor) {
        plan_wait_anchor(sf, verdict);
      }
      return;  // other phases pick up on the fall-through dispatch
    }
    dst_.frame_idx++;
    dst_.decoded_this_frame = false;
    std::fill(dst_.ack_slot_tb.begin(), dst_.ack_slot_tb.end(), -1);
    rel = 0;
  }
  if (rel < 0 || rel >= nf) {
    throw InvariantError("destination frame bookkeeping out of range");
  }

  const int slot = static_cast<int>(rel);
  if (slot < nh) {
    if (verdict == Availability::kFree) {
      set_plan(SfPlan::Action::kListen, Purpose::kTransfer);
    }
    return;
  }
  const bool acks_pending =
      std::any_of(dst_.ack_slot_tb.begin(), dst_.ack_slot_tb.end(),
                  [](int tb) { return tb >= 0; });
  if (slot == nh) {
    if (acks_pending && verdict == Availability::kFree) {
      set_plan(SfPlan::Action::kSwitch, Purpose::kTransfer);
    }
    return;
  }
  if (slot <= 2 * nh) {
    const int tb = dst_.ack_slot_tb[static_cast<std::size_t>(slot)];
    if (tb >= 0 && verdict == Availability::kFree) {
      const InboundMsg& in = inbound_[dst_.peer];
      SlPacket ack;
      ack.kind = PacketKind::kAck;
      ack.src = params_.ue_id;
      ack.dst = dst_.peer;
      ack.seq = seq_mod(in.base_seq + tb);
      ack.tb_index = tb;
      ack.n_sl_total = in.n_sl;
      ack.slot_in_frame = slot;
      ack.frame_idx = dst_.frame_idx;
      ack.more_data = reverse_queued_for(dst_.peer);
      set_plan_tx(PacketKind::kAck, ack, dst_.band, 1.0, Purpose::kTransfer);
      stats_.ack_tx_sf++;
    }
    return;
  }
  // Trailing switch back to listening whenever acknowledgments were due this
  // frame (the radio turned to TX for them). A silent frame that confirms a
  // finished transfer instead switches to TX when this UE opens the reverse
  // exchange at the next frame boundary.
  if (verdict == Availability::kFree) {
    const InboundMsg* in = nullptr;
    auto it = inbound_.find(dst_.peer);
    if (it != inbound_.end()) {
      in = &it->second;
    }
    const bool reverse_next = !dst_.decoded_this_frame && in != nullptr &&
                              in->n_sl > 0 && in->have_count == in->n_sl &&
                              reverse_queued_for(dst_.peer);
    if (acks_pending || reverse_next) {
      set_plan(SfPlan::Action::kSwitch, Purpose::kTransfer);
    }
  }
}

void SlUe::plan_wait_anchor(Sf sf, Availability verdict) {
  if (params_.mode == ScubaMode::kLlm) {
    resolve_llm_anchor(sf);
  }
  if (wait_anchor_ == kNever) {
    if (verdict == Availability::kFree) {
      plan_idle_listen(sf, verdict);
    }
    return;
  }
  if (sf == wait_anchor_ - 1) {
    if (verdict == Availability::kFree) {
      set_plan(SfPlan::Action::kSwitch, Purpose::kTransfer);
    }
    return;
  }
  if (sf >= wait_anchor_) {
    if (sf != wait_anchor_) {
      throw InvariantError("anchor subframe was skipped");
    }
    begin_attempt(sf);
    plan_session_src(sf, verdict);
    return;
  }
  if (verdict == Availability::kFree) {
    plan_idle_listen(sf, verdict);
  }
}

void SlUe::plan_idle_listen(Sf sf, Availability verdict) {
  if (verdict != Availability::kFree) {
    return;
  }
  if (params_.mode == ScubaMode::kLlm) {
    set_plan(SfPlan::Action::kListen, Purpose::kPaging);
    return;
  }
  while (!own_dyn_pos_.empty() && own_dyn_pos_.front() < sf) {
    own_dyn_pos_.pop_front();
  }
  if (!own_dyn_pos_.empty() && own_dyn_pos_.front() == sf) {
    own_dyn_pos_.pop_front();
    set_plan(SfPlan::Action::kListen, Purpose::kPaging);
    return;
  }
  if (!own_po_mask_.empty() &&
      own_po_mask_[static_cast<std::size_t>(sf % kSfPerHyper)]) {
    set_plan(SfPlan::Action::kListen, Purpose::kPaging);
  }
}

const SfPlan& SlUe::plan(Sf sf, const CellStep& cell_step) {
  if (last_plan_sf_ >= 0 && sf != last_plan_sf_ + 1) {
    throw InvariantError("sidelink machine must advance one SF at a time");
  }
  last_plan_sf_ = sf;
  track_cellular(sf, cell_step);

  plan_.action = SfPlan::Action::kSleep;
  plan_.band = 0;
  plan_.tx_fraction = 1.0;
  plan_.purpose = Purpose::kPaging;
  plan_.packets.clear();

  const Availability verdict = cell_step.verdict;

  if (phase_ == Phase::kIdle && !queue_.empty()) {
    start_procedure(sf);
  }

  // Wall-clock transitions that must fire regardless of availability.
  if (phase_ == Phase::kSamBackoff && sf >= backoff_until_) {
    phase_ = Phase::kSamDiscovery;
    discovery_deadline_ = sf + params_.sam.n_sam_period;
  }
  if (phase_ == Phase::kSamDiscovery && sf >= discovery_deadline_) {
    // Silence for the whole window: treat the peer as idle and use its
    // fixed occasions.
    const OutboundMsg& msg = queue_.front();
    phase_ = Phase::kWaitAnchor;
    wait_anchor_ = next_po_(msg.dst, sf);
    if (wait_anchor_ == kNever) {
      wait_anchor_ = cell_->project_next_free(sf + 1);
    }
  }
  if (phase_ == Phase::kRevListen && sf >= rev_anchor_ +
      static_cast<Sf>(rev_frames_left_) * frame_len()) {
    phase_ = Phase::kIdle;
    if (!queue_.empty()) {
      start_procedure(sf);
    }
  }

  switch (phase_) {
    case Phase::kConnectedSrc:
      plan_session_src(sf, verdict);
      break;
    case Phase::kConnectedDst:
      plan_session_dst(sf, verdict);
      break;
    case Phase::kWaitAnchor:
      plan_wait_anchor(sf, verdict);
      break;
    default:
      break;
  }

  if (plan_.action == SfPlan::Action::kSleep && sam_beacons_enabled()) {
    if (!plan_sam_u(sf, verdict) && !in_session()) {
      plan_sam_d(sf, verdict);
    }
  }

  if (plan_.action == SfPlan::Action::kSleep &&
      verdict == Availability::kFree) {
    switch (phase_) {
      case Phase::kSamDiscovery:
        set_plan(SfPlan::Action::kListen, Purpose::kDiscovery);
        break;
      case Phase::kSlInactivity:
        if (inactivity_left_ > 0) {
          set_plan(SfPlan::Action::kListen, Purpose::kTransfer);
          if (--inactivity_left_ == 0) {
            phase_ = Phase::kIdle;
          }
        }
        break;
      case Phase::kRevListen:
        // Expecting the peer to open the reverse exchange: keep the radio on
        // so a late anchor (e.g. after a cellular interruption) still lands.
        set_plan(SfPlan::Action::kListen, Purpose::kTransfer);
        break;
      case Phase::kIdle:
        plan_idle_listen(sf, verdict);
        break;
      default:
        break;
    }
  }
  return plan_;
}

void SlUe::note_beacon(Sf sf, const SlPacket& pkt) {
  if (pkt.kind == PacketKind::kSamU) {
    last_sam_u_[pkt.src] = sf;
  } else if (pkt.kind == PacketKind::kSamD) {
    if (pkt.dyn_po_sf > sf) {
      heard_dyn_po_[pkt.src] = pkt.dyn_po_sf;
    }
  }
}

void SlUe::upgrade_to_dst(Sf sf, const SlPacket& pkt) {
  dst_ = DstSession{};
  dst_.peer = pkt.src;
  dst_.band = pkt.band;
  dst_.anchor = sf - pkt.slot_in_frame -
                static_cast<Sf>(pkt.frame_idx) * frame_len();
  dst_.frame_idx = pkt.frame_idx;
  dst_.ack_slot_tb.assign(static_cast<std::size_t>(frame_len()), -1);
  phase_ = Phase::kConnectedDst;
  // Any pending transmit procedure restarts after this session drains.
  wait_anchor_ = kNever;
  discovery_deadline_ = kNever;
}

CommitResult SlUe::commit(Sf sf, const std::vector<SlPacket>& heard) {
  CommitResult result;
  for (const SlPacket& pkt : heard) {
    if (pkt.kind == PacketKind::kSamU || pkt.kind == PacketKind::kSamD) {
      note_beacon(sf, pkt);
      continue;
    }
    if (pkt.dst != params_.ue_id || pkt.src == params_.ue_id) {
      continue;
    }
    if (pkt.kind == PacketKind::kAck) {
      if (phase_ != Phase::kConnectedSrc || queue_.empty() ||
          pkt.src != queue_.front().dst) {
        continue;  // stale acknowledgment from an abandoned exchange
      }
      OutboundMsg& msg = queue_.front();
      if (pkt.tb_index < 0 || pkt.tb_index >= msg.n_sl) {
        throw InvariantError("acknowledgment for an unknown transport block");
      }
      src_.ack_this_frame = true;
      src_.peer_more_data = pkt.more_data;
      if (!msg.acked[static_cast<std::size_t>(pkt.tb_index)]) {
        msg.acked[static_cast<std::size_t>(pkt.tb_index)] = true;
        msg.acked_count++;
        stats_.tbs_acked++;
        if (msg.acked_count == msg.n_sl) {
          finish_transfer(sf, &result);
        }
      }
      continue;
    }

    // Data or grant addressed to this UE.
    const bool engaged_with_src = phase_ == Phase::kConnectedDst &&
                                  dst_.peer == pkt.src;
    if (phase_ == Phase::kConnectedSrc ||
        (phase_ == Phase::kConnectedDst && !engaged_with_src)) {
      continue;  // one exchange at a time; the peer retries later
    }
    if (!engaged_with_src) {
      upgrade_to_dst(sf, pkt);
    }
    InboundMsg& in = inbound_[pkt.src];
    const int base = seq_mod(pkt.seq - pkt.tb_index);
    if (in.base_seq != base) {
      in.base_seq = base;
      in.n_sl = pkt.n_sl_total;
      in.have.assign(static_cast<std::size_t>(pkt.n_sl_total), false);
      in.have_count = 0;
      in.completed = false;
    }
    dst_.decoded_this_frame = true;
    if (pkt.kind == PacketKind::kData) {
      if (pkt.tb_index < 0 || pkt.tb_index >= in.n_sl) {
        throw InvariantError("transport block index outside its message");
      }
      if (!in.have[static_cast<std::size_t>(pkt.tb_index)]) {
        in.have[static_cast<std::size_t>(pkt.tb_index)] = true;
        in.have_count++;
        stats_.tbs_delivered++;
        if (in.have_count == in.n_sl) {
          in.completed = true;
        }
      } else {
        stats_.duplicate_tbs++;
      }
      const int ack_slot =
          ack_sf_for_data(pkt.slot_in_frame, params_.harq.n_harq);
      dst_.ack_slot_tb[static_cast<std::size_t>(ack_slot)] = pkt.tb_index;
    }
  }

  if (phase_ == Phase::kSamDiscovery && !queue_.empty()) {
    const int dst = queue_.front().dst;
    auto busy = last_sam_u_.find(dst);
    if (busy != last_sam_u_.end() && busy->second == sf) {
      phase_ = Phase::kSamBackoff;
      backoff_until_ = sf + params_.drx_inat;
      return result;
    }
    auto dyn = heard_dyn_po_.find(dst);
    if (dyn != heard_dyn_po_.end() && dyn->second > sf) {
      phase_ = Phase::kWaitAnchor;
      wait_anchor_ = dyn->second;
    }
  }
  return result;
}

}  // namespace scuba
