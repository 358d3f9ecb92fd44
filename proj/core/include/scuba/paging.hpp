// scuba/paging.hpp — cellular IDRX paging and sidelink DRX occasion arithmetic.
//
// The sidelink reuses the cellular paging machinery: a UE derives its paging
// frames and paging-occasion subframe from its identity, then places its
// sidelink listening occasions at a fixed offset from the cellular occasion so
// that peers can compute the schedule without signalling. All functions here
// are pure; schedules are expressed inside one hyper-frame (10240 SFs) and
// tiled periodically.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "scuba/types.hpp"

namespace scuba {

/// Identity inputs for paging arithmetic.
struct UeIdentity {
  std::uint64_t imsi = 0;
  /// Size of the paging identity space the IMSI is folded into.
  /// Valid values: 1024, 4096, 16384.
  int beta = 16384;
};

/// Cellular IDRX paging parameters. Cycle lengths are in radio frames.
struct PagingConfig {
  int t_idrx = 64;    ///< IDRX cycle (frames); 640 ms at the default
  int n_control = 64; ///< paging-density control parameter (frames-equivalent)
  /// Paging-occasion subframe lookup: key = Ns (occasions per paging frame),
  /// value = subframe index per pointing index i_s. FDD defaults.
  std::map<int, std::vector<int>> po_lut = default_po_lut();

  static std::map<int, std::vector<int>> default_po_lut() {
    return {{1, {9}}, {2, {4, 9}}, {4, {0, 4, 5, 9}}};
  }
};

/// Sidelink DRX parameters. The cycle is in radio frames; occasion layout is
/// in subframes.
struct SlPagingConfig {
  /// SL-DRX cycle in frames. Must divide 1024. 0 selects low-latency mode,
  /// which has no fixed occasions.
  int t_sl_drx = 128;
  int n_sl_po = 4;   ///< listening subframes per cycle
  int n_cluster = 1; ///< clusters the occasions are split into (divides n_sl_po)
  int n_dist = 4;    ///< spacing between cluster starts, in subframes
  int n_off = 1;     ///< first subframe offset tried after the cellular occasion
};

/// A UE's fully resolved paging timetable, expressed within one hyper-frame.
struct PoSchedule {
  std::vector<int> sl_pf;      ///< sidelink paging frame numbers in [0, 1024)
  int i_po = 0;                ///< cellular paging-occasion subframe index
  int n_off = 0;               ///< sidelink offset actually applied
  std::vector<Sf> po_sf;       ///< sidelink occasion SFs in [0, 10240), sorted
  std::vector<Sf> idrx_po_sf;  ///< own cellular paging SFs in [0, 10240), sorted
};

/// Folds the IMSI into the paging identity space: imsi mod beta.
/// Throws ConfigError if beta is not one of 1024/4096/16384.
int derive_ue_id(const UeIdentity& id);

/// Checks field constraints; throws ConfigError naming the offending field.
void validate(const PagingConfig& cfg);
void validate(const SlPagingConfig& cfg);

/// Frame numbers (SFN in [0, t_idrx) steps across 1024) in which the UE is
/// paged: all SFN with SFN mod t_idrx == n_id. Sorted ascending.
std::vector<int> compute_paging_frames(const PagingConfig& cfg, int ue_id);

/// Pointing index i_s selecting which occasion inside a paging frame this UE
/// monitors.
int compute_pointing_index(const PagingConfig& cfg, int ue_id);

/// Paging-occasion subframe for the given pointing index, via the LUT.
/// Throws ConfigError when the occasion density has no LUT row or i_s is out
/// of range for it.
int lookup_po_subframe(const PagingConfig& cfg, int i_s);

/// Sidelink paging frame numbers in [0, 1024): the cellular rule evaluated
/// against the SL-DRX cycle (identity folded when the sidelink cycle is
/// shorter than the cellular one). Throws ConfigError for low-latency mode
/// (t_sl_drx == 0) or when t_sl_drx does not divide 1024.
std::vector<int> compute_sl_paging_frames(const PagingConfig& cfg,
                                          const SlPagingConfig& sl, int ue_id);

/// Expands one cycle's occasion layout from its base subframe: n_cluster
/// groups of n_sl_po/n_cluster consecutive SFs, cluster starts n_dist apart.
/// E.g. n_sl_po=4: one cluster -> [base..base+3]; four clusters spaced 10
/// -> [base, base+10, base+20, base+30]. Ordered, ascending.
std::vector<Sf> compute_sl_po_layout(const SlPagingConfig& sl, Sf base_sf);

/// Builds the complete timetable: cellular occasions, sidelink frames, offset
/// selection and cluster layout. The sidelink offset starts at sl.n_off and is
/// incremented until no sidelink occasion collides with one of the UE's own
/// cellular paging subframes. In low-latency mode (t_sl_drx == 0) po_sf is
/// empty and only the cellular occasions are filled in.
PoSchedule build_po_schedule(const PagingConfig& cfg, const SlPagingConfig& sl,
                             const UeIdentity& id);

/// First sidelink occasion strictly after `now`, tiling the hyper-frame
/// forever (e.g. schedule {210}, now 211 -> 10450). Throws InvariantError on
/// an empty schedule.
Sf next_sl_po(const PoSchedule& sched, Sf now);

}  // namespace scuba
