// Energy, latency, duty-cycle and battery metrics. Contracts in
// scuba/metrics.hpp.

#include "scuba/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scuba {

void validate(const PowerProfile& p) {
  if (p.p_tx_mw < 0 || p.p_rx_mw < 0 || p.p_switch_mw < 0) {
    throw ConfigError("power: draws must be >= 0");
  }
  if (!(p.t_sf_ms > 0)) {
    throw ConfigError("power.t_sf_ms: must be positive");
  }
}

void EnergyLedger::add(Activity a, Purpose p, double sf_fraction) {
  double mw = 0.0;
  switch (a) {
    case Activity::kTx: mw = profile_.p_tx_mw; break;
    case Activity::kRxListen: mw = profile_.p_rx_mw; break;
    case Activity::kSwitch: mw = profile_.p_switch_mw; break;
  }
  mj_[static_cast<int>(a)][static_cast<int>(p)] +=
      mw * profile_.t_sf_ms * sf_fraction * 1e-3;  // mW * ms = uJ; store mJ
}

double EnergyLedger::total_mj() const {
  double sum = 0.0;
  for (const auto& row : mj_)
    for (double v : row) sum += v;
  return sum;
}

double EnergyLedger::activity_mj(Activity a) const {
  const auto& row = mj_[static_cast<int>(a)];
  return std::accumulate(row.begin(), row.end(), 0.0);
}

double EnergyLedger::purpose_mj(Purpose p) const {
  double sum = 0.0;
  for (const auto& row : mj_) sum += row[static_cast<int>(p)];
  return sum;
}

double EnergyLedger::cell_mj(Activity a, Purpose p) const {
  return mj_[static_cast<int>(a)][static_cast<int>(p)];
}

double LatencyRecorder::avg() const {
  if (samples_.empty()) throw ConfigError("latency: no samples");
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

double LatencyRecorder::percentile(double q) const {
  return scuba::percentile(samples_, q);
}

double LatencyRecorder::max() const {
  if (samples_.empty()) throw ConfigError("latency: no samples");
  return *std::max_element(samples_.begin(), samples_.end());
}

double percentile(std::vector<double> samples, double q) {
  if (samples.empty()) throw ConfigError("percentile: empty sample list");
  if (q < 0.0 || q > 100.0) {
    std::ostringstream os;
    os << "percentile: q must be in [0, 100] (got " << q << ")";
    throw ConfigError(os.str());
  }
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * n));
  if (rank < 1) rank = 1;
  return samples[rank - 1];
}

double duty_cycle(const std::vector<Sf>& tx_sfs, Sf horizon_sf, Sf window_sf) {
  if (window_sf <= 0) throw ConfigError("duty_cycle: window must be positive");
  if (horizon_sf <= 0) throw ConfigError("duty_cycle: horizon must be positive");
  if (tx_sfs.empty()) return 0.0;
  const Sf window = std::min(window_sf, horizon_sf);
  // The densest window starts at a TX subframe: slide a two-pointer count.
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t best = 0;
  for (lo = 0; lo < tx_sfs.size(); ++lo) {
    if (hi < lo) hi = lo;
    while (hi < tx_sfs.size() && tx_sfs[hi] < tx_sfs[lo] + window) ++hi;
    best = std::max(best, hi - lo);
  }
  return static_cast<double>(best) / static_cast<double>(window);
}

double duty_cycle(const std::vector<std::pair<Sf, double>>& tx, Sf horizon_sf,
                  Sf window_sf) {
  if (window_sf <= 0) throw ConfigError("duty_cycle: window must be positive");
  if (horizon_sf <= 0) throw ConfigError("duty_cycle: horizon must be positive");
  if (tx.empty()) return 0.0;
  const Sf window = std::min(window_sf, horizon_sf);
  std::size_t hi = 0;
  double sum = 0.0;
  double best = 0.0;
  for (std::size_t lo = 0; lo < tx.size(); ++lo) {
    if (hi < lo) {
      hi = lo;
      sum = 0.0;
    }
    while (hi < tx.size() && tx[hi].first < tx[lo].first + window) {
      sum += tx[hi].second;
      ++hi;
    }
    best = std::max(best, sum);
    sum -= tx[lo].second;
  }
  return best / static_cast<double>(window);
}

double battery_life_days(double e_b_wh, double e_scuba_wh_per_day,
                         double e_cellular_wh_per_day) {
  if (e_b_wh < 0 || e_scuba_wh_per_day < 0 || e_cellular_wh_per_day < 0) {
    throw ConfigError("battery: energies must be >= 0");
  }
  const double daily = e_scuba_wh_per_day + e_cellular_wh_per_day;
  if (!(daily > 0)) {
    throw ConfigError("battery: total daily energy must be positive");
  }
  return e_b_wh / daily;
}

}  // namespace scuba
