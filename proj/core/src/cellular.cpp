// Cellular modem state machine. Contracts in scuba/cellular.hpp.

#include "scuba/cellular.hpp"

#include <sstream>

namespace scuba {

void validate(const CellularConfig& cfg) {
  if (cfg.t_rrc < 1) throw ConfigError("cellular.t_rrc: must be >= 1");
  if (cfg.t_data < 1) throw ConfigError("cellular.t_data: must be >= 1");
  if (cfg.drx_inat < 1) throw ConfigError("cellular.drx_inat: must be >= 1");
  if (cfg.data_inat < 1) throw ConfigError("cellular.data_inat: must be >= 1");
  if (cfg.cdrx_cycle < 1) throw ConfigError("cellular.cdrx_cycle: must be >= 1");
  if (cfg.cdrx_on < 0 || cfg.cdrx_on >= cfg.cdrx_cycle) {
    std::ostringstream os;
    os << "cellular.cdrx_on: must be in [0, cdrx_cycle) (got " << cfg.cdrx_on
       << " with cycle " << cfg.cdrx_cycle << ")";
    throw ConfigError(os.str());
  }
  if (cfg.switch_every < 1) {
    throw ConfigError("cellular.switch_every: must be >= 1");
  }
}

CellularUe::CellularUe(const CellularConfig& cfg,
                       const std::vector<Sf>& idrx_po_sf)
    : cfg_(cfg), po_(kSfPerHyper, false) {
  validate(cfg);
  for (Sf sf : idrx_po_sf) {
    if (sf < 0 || sf >= kSfPerHyper) {
      throw ConfigError("cellular: paging subframe outside the hyper-frame");
    }
    po_[static_cast<std::size_t>(sf)] = true;
  }
}

bool CellularUe::is_own_po(Sf sf) const {
  return po_[static_cast<std::size_t>(sf % kSfPerHyper)];
}

void CellularUe::on_arrival(Sf sf) {
  switch (core_.mode) {
    case CellMode::kConaSetup:
      // The block after setup serves the arrival that triggered the setup;
      // anything landing during setup waits its turn.
      ++core_.pending;
      break;
    case CellMode::kConaData:
      ++core_.pending;  // served back to back after the running block
      break;
    case CellMode::kConaInactivity:
    case CellMode::kCdrxOn:
    case CellMode::kCdrxOff:
      // RRC resources are retained: data resumes without a setup phase.
      core_.mode = CellMode::kConaData;
      core_.phase_left = cfg_.t_data;
      core_.data_start = sf;
      break;
    case CellMode::kIdrxPo:
    case CellMode::kIdrxSleep:
      core_.mode = CellMode::kConaSetup;
      core_.phase_left = cfg_.t_rrc;
      break;
  }
}

CellStep CellularUe::step(Core& c, Sf sf) const {
  switch (c.mode) {
    case CellMode::kConaSetup: {
      if (--c.phase_left == 0) {
        c.mode = CellMode::kConaData;
        c.phase_left = cfg_.t_data;
        c.data_start = sf + 1;
      }
      return {CellMode::kConaSetup, Availability::kBusy};
    }
    case CellMode::kConaData: {
      const bool gap =
          (sf - c.data_start) % cfg_.switch_every == cfg_.switch_every - 1;
      if (--c.phase_left == 0) {
        if (c.pending > 0) {
          --c.pending;  // chain the next queued block; keep the gap anchor
          c.phase_left = cfg_.t_data;
        } else {
          c.mode = CellMode::kConaInactivity;
          c.phase_left = cfg_.drx_inat;
        }
      }
      return {CellMode::kConaData,
              gap ? Availability::kSamUWindowOnly : Availability::kBusy};
    }
    case CellMode::kConaInactivity: {
      if (--c.phase_left == 0) {
        if (cfg_.rai) {
          c.mode = CellMode::kIdrxSleep;  // release straight to idle
        } else {
          c.mode = CellMode::kCdrxOff;  // resolved per-SF below
          c.cdrx_anchor = sf + 1;
          c.cdrx_left = cfg_.data_inat;
        }
      }
      return {CellMode::kConaInactivity, Availability::kBusy};
    }
    case CellMode::kCdrxOn:
    case CellMode::kCdrxOff: {
      const Sf pos = (sf - c.cdrx_anchor) % cfg_.cdrx_cycle;
      const bool on = pos < cfg_.cdrx_on;
      c.mode = on ? CellMode::kCdrxOn : CellMode::kCdrxOff;
      const CellStep out{c.mode,
                         on ? Availability::kBusy : Availability::kFree};
      if (--c.cdrx_left == 0) c.mode = CellMode::kIdrxSleep;
      return out;
    }
    case CellMode::kIdrxPo:
    case CellMode::kIdrxSleep: {
      const bool po = is_own_po(sf);
      c.mode = po ? CellMode::kIdrxPo : CellMode::kIdrxSleep;
      return {c.mode, po ? Availability::kBusy : Availability::kFree};
    }
  }
  throw InvariantError("cellular: unknown mode");
}

CellStep CellularUe::advance(Sf sf) {
  if (sf < 0) throw InvariantError("cellular: negative subframe");
  if (started_ && sf != last_sf_ + 1) {
    std::ostringstream os;
    os << "cellular: advance called for SF " << sf << " after SF " << last_sf_;
    throw InvariantError(os.str());
  }
  started_ = true;
  last_sf_ = sf;
  return step(core_, sf);
}

Sf CellularUe::project_next_free(Sf from) const {
  Core tmp = core_;
  Sf sf = started_ ? last_sf_ + 1 : 0;
  if (from < sf) {
    throw InvariantError("cellular: projection into an already-evaluated SF");
  }
  // Upper bound on the distance to a free SF from any reachable state,
  // including queued data blocks that drain without further arrivals.
  const Sf bound = cfg_.t_rrc + (1 + core_.pending) * cfg_.t_data +
                   cfg_.drx_inat + cfg_.data_inat + 2 * cfg_.cdrx_cycle +
                   2 * kSfPerHyper + (from - sf);
  for (Sf guard = 0; guard < bound; ++guard) {
    const CellStep st = step(tmp, sf);
    if (sf >= from && st.verdict == Availability::kFree) return sf;
    ++sf;
  }
  // Unreachable for any validated config: CDRX and IDRX both contain free
  // subframes and every connected phase is finite.
  throw InvariantError("cellular: no free subframe within projection bound");
}

}  // namespace scuba
