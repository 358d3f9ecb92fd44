// Paging timetable arithmetic: cellular IDRX occasions and sidelink DRX
// occasions derived from the UE identity. See scuba/paging.hpp for contracts.

#include "scuba/paging.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace scuba {

namespace {

// Occasions per paging frame (Ns). Integer division is intended: densities
// below one occasion per frame clamp to 1.
int occasions_per_frame(const PagingConfig& cfg) {
  return std::max(1, cfg.n_control / cfg.t_idrx);
}

int n_min(const PagingConfig& cfg) {
  return std::min(cfg.t_idrx, cfg.n_control);
}

// Paging-frame selector n_id: the frame phase (within the IDRX cycle) this
// identity is mapped to, spread across the cycle when the paging density is
// below one frame per cycle.
int paging_frame_selector(const PagingConfig& cfg, int ue_id) {
  const int n = n_min(cfg);
  return (cfg.t_idrx / n) * (ue_id % n);
}

}  // namespace

int derive_ue_id(const UeIdentity& id) {
  if (id.beta != 1024 && id.beta != 4096 && id.beta != 16384) {
    std::ostringstream os;
    os << "identity.beta: must be 1024, 4096 or 16384 (got " << id.beta << ")";
    throw ConfigError(os.str());
  }
  return static_cast<int>(id.imsi % static_cast<std::uint64_t>(id.beta));
}

void validate(const PagingConfig& cfg) {
  if (cfg.t_idrx <= 0 || kFramesPerHyper % cfg.t_idrx != 0) {
    std::ostringstream os;
    os << "paging.t_idrx: must be a positive divisor of " << kFramesPerHyper
       << " frames (got " << cfg.t_idrx << ")";
    throw ConfigError(os.str());
  }
  if (cfg.n_control <= 0) {
    throw ConfigError("paging.n_control: must be positive");
  }
  const int ns = occasions_per_frame(cfg);
  const auto it = cfg.po_lut.find(ns);
  if (it == cfg.po_lut.end()) {
    std::ostringstream os;
    os << "paging.po_lut: no row for " << ns << " occasions per frame";
    throw ConfigError(os.str());
  }
  if (static_cast<int>(it->second.size()) != ns) {
    std::ostringstream os;
    os << "paging.po_lut: row for " << ns << " occasions must list exactly "
       << ns << " subframes (got " << it->second.size() << ")";
    throw ConfigError(os.str());
  }
  for (int sf : it->second) {
    if (sf < 0 || sf >= kSfPerFrame) {
      std::ostringstream os;
      os << "paging.po_lut: subframe index " << sf << " out of range [0, "
         << kSfPerFrame << ")";
      throw ConfigError(os.str());
    }
  }
}

void validate(const SlPagingConfig& cfg) {
  if (cfg.t_sl_drx < 0) {
    throw ConfigError("sl_paging.t_sl_drx: must be >= 0 (0 = low-latency mode)");
  }
  if (cfg.t_sl_drx > 0 && kFramesPerHyper % cfg.t_sl_drx != 0) {
    std::ostringstream os;
    os << "sl_paging.t_sl_drx: must divide " << kFramesPerHyper
       << " frames (got " << cfg.t_sl_drx << ")";
    throw ConfigError(os.str());
  }
  if (cfg.n_sl_po <= 0) {
    throw ConfigError("sl_paging.n_sl_po: must be positive");
  }
  if (cfg.n_cluster <= 0 || cfg.n_sl_po % cfg.n_cluster != 0) {
    std::ostringstream os;
    os << "sl_paging.n_cluster: must be positive and divide n_sl_po (got "
       << cfg.n_cluster << " for n_sl_po " << cfg.n_sl_po << ")";
    throw ConfigError(os.str());
  }
  if (cfg.n_dist * cfg.n_cluster < cfg.n_sl_po) {
    std::ostringstream os;
    os << "sl_paging.n_dist: clusters would overlap; need n_dist * n_cluster"
       << " >= n_sl_po (got " << cfg.n_dist << " * " << cfg.n_cluster << " < "
       << cfg.n_sl_po << ")";
    throw ConfigError(os.str());
  }
  if (cfg.n_off < 0) {
    throw ConfigError("sl_paging.n_off: must be >= 0");
  }
}

std::vector<int> compute_paging_frames(const PagingConfig& cfg, int ue_id) {
  validate(cfg);
  const int n_id = paging_frame_selector(cfg, ue_id);
  std::vector<int> frames;
  frames.reserve(kFramesPerHyper / cfg.t_idrx);
  for (int sfn = 0; sfn < kFramesPerHyper; ++sfn) {
    if (sfn % cfg.t_idrx == n_id) frames.push_back(sfn);
  }
  return frames;
}

int compute_pointing_index(const PagingConfig& cfg, int ue_id) {
  validate(cfg);
  return (ue_id / n_min(cfg)) % occasions_per_frame(cfg);
}

int lookup_po_subframe(const PagingConfig& cfg, int i_s) {
  validate(cfg);
  const int ns = occasions_per_frame(cfg);
  const auto& row = cfg.po_lut.at(ns);
  if (i_s < 0 || i_s >= static_cast<int>(row.size())) {
    std::ostringstream os;
    os << "paging.po_lut: pointing index " << i_s << " out of range for "
       << ns << " occasions per frame";
    throw ConfigError(os.str());
  }
  return row[i_s];
}

std::vector<int> compute_sl_paging_frames(const PagingConfig& cfg,
                                          const SlPagingConfig& sl,
                                          int ue_id) {
  validate(cfg);
  validate(sl);
  if (sl.t_sl_drx == 0) {
    throw ConfigError(
        "sl_paging.t_sl_drx: 0 selects low-latency mode, which has no fixed "
        "paging frames");
  }
  const int n_id = paging_frame_selector(cfg, ue_id);
  // A sidelink cycle at least as long as the cellular one keeps the selector;
  // a shorter one folds it into the shorter cycle.
  const int target = sl.t_sl_drx >= cfg.t_idrx ? n_id : n_id % sl.t_sl_drx;
  std::vector<int> frames;
  frames.reserve(kFramesPerHyper / sl.t_sl_drx);
  for (int sfn = 0; sfn < kFramesPerHyper; ++sfn) {
    if (sfn % sl.t_sl_drx == target) frames.push_back(sfn);
  }
  return frames;
}

std::vector<Sf> compute_sl_po_layout(const SlPagingConfig& sl, Sf base_sf) {
  validate(sl);
  const int per_cluster = sl.n_sl_po / sl.n_cluster;
  std::vector<Sf> layout;
  layout.reserve(sl.n_sl_po);
  for (int j = 0; j < sl.n_cluster; ++j) {
    for (int m = 0; m < per_cluster; ++m) {
      layout.push_back(base_sf + static_cast<Sf>(j) * sl.n_dist + m);
    }
  }
  return layout;
}

PoSchedule build_po_schedule(const PagingConfig& cfg, const SlPagingConfig& sl,
                             const UeIdentity& id) {
  validate(cfg);
  validate(sl);
  const int ue_id = derive_ue_id(id);

  PoSchedule sched;
  sched.i_po = lookup_po_subframe(cfg, compute_pointing_index(cfg, ue_id));
  for (int pf : compute_paging_frames(cfg, ue_id)) {
    sched.idrx_po_sf.push_back(static_cast<Sf>(pf) * kSfPerFrame + sched.i_po);
  }

  if (sl.t_sl_drx == 0) {
    // Low-latency mode: no fixed sidelink occasions.
    sched.n_off = 0;
    return sched;
  }

  sched.sl_pf = compute_sl_paging_frames(cfg, sl, ue_id);
  const std::set<Sf> own_po(sched.idrx_po_sf.begin(), sched.idrx_po_sf.end());

  // Slide the offset until no sidelink occasion lands on one of the UE's own
  // cellular paging subframes (it cannot listen to both at once).
  const int max_trials = sl.n_off + 10 * kSfPerFrame;
  for (int off = sl.n_off; off <= max_trials; ++off) {
    std::vector<Sf> layout;
    layout.reserve(sched.sl_pf.size() * sl.n_sl_po);
    for (int pf : sched.sl_pf) {
      const Sf base = static_cast<Sf>(pf) * kSfPerFrame + sched.i_po + off;
      for (Sf sf : compute_sl_po_layout(sl, base)) {
        layout.push_back(sf % kSfPerHyper);
      }
    }
    std::sort(layout.begin(), layout.end());
    if (std::adjacent_find(layout.begin(), layout.end()) != layout.end()) {
      throw ConfigError(
          "sl_paging: occasion layout overlaps itself across cycles; reduce "
          "n_sl_po/n_dist or lengthen t_sl_drx");
    }
    const bool clash = std::any_of(layout.begin(), layout.end(),
                                   [&](Sf s) { return own_po.count(s) > 0; });
    if (!clash) {
      sched.n_off = off;
      sched.po_sf = std::move(layout);
      return sched;
    }
  }
  throw ConfigError(
      "sl_paging.n_off: no offset avoids the UE's own cellular paging "
      "subframes");
}

Sf next_sl_po(const PoSchedule& sched, Sf now) {
  if (sched.po_sf.empty()) {
    throw InvariantError("next_sl_po called on an empty occasion schedule");
  }
  const Sf pos = now % kSfPerHyper;
  const Sf hyper_base = now - pos;
  auto it = std::upper_bound(sched.po_sf.begin(), sched.po_sf.end(), pos);
  if (it != sched.po_sf.end()) return hyper_base + *it;
  return hyper_base + kSfPerHyper + sched.po_sf.front();
}

}  // namespace scuba
