// Arrival process implementation. See scuba/traffic.hpp for contracts.

#include "scuba/traffic.hpp"

#include <cmath>
#include <sstream>

namespace scuba {

void validate(const TrafficModel& m) {
  switch (m.kind) {
    case TrafficKind::kNone:
      return;
    case TrafficKind::kPoisson:
      if (!(m.mean_iat_sf > 0.0)) {
        throw ConfigError("traffic.mean_iat_sf: must be positive");
      }
      return;
    case TrafficKind::kPeriodic:
      if (m.period_sf <= 0) {
        throw ConfigError("traffic.period_sf: must be positive");
      }
      if (m.phase_sf < 0) {
        throw ConfigError("traffic.phase_sf: must be >= 0");
      }
      return;
  }
  std::ostringstream os;
  os << "traffic.kind: unknown value " << static_cast<int>(m.kind);
  throw ConfigError(os.str());
}

ArrivalStream::ArrivalStream(const TrafficModel& model, std::uint64_t run_seed,
                             std::uint64_t entity, RngStream stream)
    : model_(model), rng_(make_rng(run_seed, entity, stream)) {
  validate(model_);
}

Sf ArrivalStream::next_after(Sf now) {
  switch (model_.kind) {
    case TrafficKind::kNone:
      return kNever;
    case TrafficKind::kPeriodic: {
      // Smallest phase + k*period strictly greater than now (k may be 0 when
      // now is still before the phase offset).
      if (now < model_.phase_sf) return model_.phase_sf;
      const Sf k = (now - model_.phase_sf) / model_.period_sf + 1;
      return model_.phase_sf + k * model_.period_sf;
    }
    case TrafficKind::kPoisson: {
      // Exponential gap, quantized up to at least one whole subframe.
      const double u = uniform_double(rng_);
      const double gap = -model_.mean_iat_sf * std::log(1.0 - u);
      const Sf q = static_cast<Sf>(std::ceil(gap));
      return now + (q < 1 ? 1 : q);
    }
  }
  throw ConfigError("traffic.kind: unknown value");
}

std::vector<Sf> generate_trace(const TrafficModel& model, Sf horizon_sf,
                               std::uint64_t run_seed, std::uint64_t entity,
                               RngStream stream) {
  if (horizon_sf < 0) throw ConfigError("horizon_sf: must be >= 0");
  ArrivalStream s(model, run_seed, entity, stream);
  std::vector<Sf> trace;
  Sf t = 0;
  while (true) {
    t = s.next_after(t);
    if (t == kNever || t > horizon_sf) break;
    trace.push_back(t);
  }
  return trace;
}

}  // namespace scuba
