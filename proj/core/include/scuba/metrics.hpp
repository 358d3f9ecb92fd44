// scuba/metrics.hpp — energy accounting, latency statistics, duty cycle and
// battery-life arithmetic.
#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "scuba/types.hpp"

namespace scuba {

/// Radio power draw per activity class, and the subframe duration.
struct PowerProfile {
  double p_tx_mw = 100.0;
  double p_rx_mw = 80.0;
  double p_switch_mw = 80.0;
  double t_sf_ms = 1.0;
};

void validate(const PowerProfile& p);

/// What the radio was doing during a charged subframe. Sleep costs nothing
/// and is not recorded.
enum class Activity : std::uint8_t { kTx = 0, kRxListen, kSwitch };
inline constexpr int kActivityCount = 3;

/// Why the energy was spent. Lets reports separate the cost of moving data
/// from the standing cost of schedules and beacons.
enum class Purpose : std::uint8_t { kTransfer = 0, kPaging, kSam, kDiscovery };
inline constexpr int kPurposeCount = 4;

inline const char* to_string(Activity a) {
  switch (a) {
    case Activity::kTx: return "tx";
    case Activity::kRxListen: return "rx_listen";
    case Activity::kSwitch: return "switch";
  }
  return "?";
}

inline const char* to_string(Purpose p) {
  switch (p) {
    case Purpose::kTransfer: return "transfer";
    case Purpose::kPaging: return "paging";
    case Purpose::kSam: return "sam";
    case Purpose::kDiscovery: return "discovery";
  }
  return "?";
}

/// Per-UE energy account: millijoules by (activity, purpose).
class EnergyLedger {
 public:
  explicit EnergyLedger(const PowerProfile& profile) : profile_(profile) {}

  /// Charges one subframe (or a fraction of one, e.g. a half-SF beacon).
  void add(Activity a, Purpose p, double sf_fraction = 1.0);

  double total_mj() const;
  double activity_mj(Activity a) const;
  double purpose_mj(Purpose p) const;
  double cell_mj(Activity a, Purpose p) const;
  const PowerProfile& profile() const { return profile_; }

 private:
  PowerProfile profile_;
  std::array<std::array<double, kPurposeCount>, kActivityCount> mj_{};
};

/// Latency sample store (values in ms). Statistics use the nearest-rank
/// percentile on the sorted samples.
class LatencyRecorder {
 public:
  void record(double latency_ms) { samples_.push_back(latency_ms); }
  std::size_t count() const { return samples_.size(); }
  double avg() const;
  double percentile(double q) const;
  double max() const;
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;
};

/// Nearest-rank percentile: the ceil(q/100 * n)-th smallest sample.
/// Throws ConfigError on an empty list or q outside [0, 100].
double percentile(std::vector<double> samples, double q);

/// Largest TX-time fraction over any sliding window of `window_sf` subframes
/// (clamped to the horizon). `tx_sfs` must be sorted ascending.
double duty_cycle(const std::vector<Sf>& tx_sfs, Sf horizon_sf, Sf window_sf);

/// Weighted variant: each entry is (subframe, transmitted fraction of it),
/// for transmissions shorter than a full subframe such as half-SF beacons.
double duty_cycle(const std::vector<std::pair<Sf, double>>& tx, Sf horizon_sf,
                  Sf window_sf);

/// Days until a battery of e_b_wh is drained by the two daily energy shares.
/// Throws ConfigError if any input is negative or the daily total is zero.
double battery_life_days(double e_b_wh, double e_scuba_wh_per_day,
                         double e_cellular_wh_per_day);

}  // namespace scuba
