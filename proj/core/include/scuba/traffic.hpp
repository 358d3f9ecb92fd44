// scuba/traffic.hpp — arrival processes driving cellular and sidelink data.
#pragma once

#include <cstdint>
#include <vector>

#include "scuba/rng.hpp"
#include "scuba/types.hpp"

namespace scuba {

enum class TrafficKind : std::uint8_t { kNone = 0, kPeriodic, kPoisson };

inline const char* to_string(TrafficKind k) {
  switch (k) {
    case TrafficKind::kNone: return "none";
    case TrafficKind::kPeriodic: return "periodic";
    case TrafficKind::kPoisson: return "poisson";
  }
  return "?";
}

/// One arrival process. Times are in subframes (1 ms).
struct TrafficModel {
  TrafficKind kind = TrafficKind::kPoisson;
  double mean_iat_sf = 30000.0;  ///< Poisson mean inter-arrival time
  Sf period_sf = 300000;         ///< periodic spacing
  Sf phase_sf = 0;               ///< periodic arrivals sit at phase + k*period
};

void validate(const TrafficModel& m);

/// Stateful arrival stream, deterministic per (run seed, entity, stream tag).
/// Poisson gaps are exponential, rounded up to at least one subframe;
/// periodic arrivals are a pure function of `now`.
class ArrivalStream {
 public:
  ArrivalStream(const TrafficModel& model, std::uint64_t run_seed,
                std::uint64_t entity, RngStream stream);

  /// First arrival strictly after `now` (kNever for TrafficKind::kNone).
  Sf next_after(Sf now);

 private:
  TrafficModel model_;
  std::mt19937_64 rng_;
};

/// All arrivals in (0, horizon], strictly increasing.
std::vector<Sf> generate_trace(const TrafficModel& model, Sf horizon_sf,
                               std::uint64_t run_seed, std::uint64_t entity,
                               RngStream stream);

}  // namespace scuba
