// scuba/cellular.hpp — per-UE cellular modem state machine.
//
// The primary RAT owns the radio; the sidelink may only use subframes the
// modem leaves free. This machine tracks the connected/CDRX/IDRX lifecycle
// driven by cellular data arrivals and exposes, per subframe, what the
// sidelink is allowed to do.
#pragma once

#include <cstdint>
#include <vector>

#include "scuba/types.hpp"

namespace scuba {

/// Modem occupancy states.
///  kConaSetup      connection setup after an arrival out of IDRX
///  kConaData       active connected-mode data phase
///  kConaInactivity connected, waiting out the DRX inactivity timer
///  kCdrxOn         connected-DRX ON window (monitoring)
///  kCdrxOff        connected-DRX sleep — subframe free for the sidelink
///  kIdrxPo         idle-mode paging occasion (monitoring)
///  kIdrxSleep      idle sleep — subframe free for the sidelink
enum class CellMode : std::uint8_t {
  kConaSetup = 0,
  kConaData,
  kConaInactivity,
  kCdrxOn,
  kCdrxOff,
  kIdrxPo,
  kIdrxSleep,
};

inline const char* to_string(CellMode m) {
  switch (m) {
    case CellMode::kConaSetup: return "cona_setup";
    case CellMode::kConaData: return "cona_data";
    case CellMode::kConaInactivity: return "cona_inactivity";
    case CellMode::kCdrxOn: return "cdrx_on";
    case CellMode::kCdrxOff: return "cdrx_off";
    case CellMode::kIdrxPo: return "idrx_po";
    case CellMode::kIdrxSleep: return "idrx_sleep";
  }
  return "?";
}

/// Durations in subframes (1 ms each).
struct CellularConfig {
  Sf t_rrc = 100;        ///< connection setup time
  Sf t_data = 250;       ///< connected-mode data phase per arrival
  Sf drx_inat = 100;     ///< DRX inactivity timer after the data phase
  Sf data_inat = 10000;  ///< CDRX budget; counts down only while in CDRX
  Sf cdrx_cycle = 640;
  Sf cdrx_on = 20;       ///< ON window at the start of each CDRX cycle
  bool rai = false;      ///< release assistance: skip CDRX entirely
  int switch_every = 2;  ///< every k-th ConA-data SF is a switching gap
};

void validate(const CellularConfig& cfg);

/// One subframe's outcome.
struct CellStep {
  CellMode mode;
  Availability verdict;
};

/// Cellular modem model for one UE. advance() must be called once per
/// subframe in strictly increasing order; arrivals for a subframe must be
/// delivered with on_arrival() before that subframe's advance().
class CellularUe {
 public:
  /// `idrx_po_sf` lists the UE's paging-occasion subframes within one
  /// hyper-frame (tiled periodically). The machine starts in idle sleep.
  CellularUe(const CellularConfig& cfg, const std::vector<Sf>& idrx_po_sf);

  /// Cellular data activity at `sf` (uplink or downlink): (re)occupies the
  /// modem per the lifecycle rules. Each arrival is one data event worth
  /// t_data subframes; events landing while a data phase is already running
  /// (or being set up) queue behind it and are served back to back, so the
  /// data phase ends only once the buffer drains.
  void on_arrival(Sf sf);

  CellStep advance(Sf sf);

  /// Earliest subframe >= from whose verdict would be kFree assuming no
  /// further arrivals. Pure projection; does not disturb the machine.
  Sf project_next_free(Sf from) const;

  CellMode mode() const { return core_.mode; }

 private:
  struct Core {
    CellMode mode = CellMode::kIdrxSleep;
    Sf phase_left = 0;    // SFs remaining in setup/data/inactivity
    int pending = 0;      // queued data events behind the running block
    Sf data_start = 0;    // anchor of the switch-gap pattern
    Sf cdrx_anchor = 0;   // first SF of the current CDRX stay
    Sf cdrx_left = 0;     // remaining CDRX budget
  };

  CellStep step(Core& c, Sf sf) const;
  bool is_own_po(Sf sf) const;

  CellularConfig cfg_;
  std::vector<bool> po_;  // hyper-frame paging-occasion mask
  Core core_;
  Sf last_sf_ = -1;
  bool started_ = false;
};

}  // namespace scuba
