// scuba/analytics.hpp — closed-form energy, power and collision models.
//
// Companion to the simulator: the same quantities the engine measures,
// expressed analytically so runs can be cross-checked term by term. Energies
// are per-message, powers are long-run averages, probabilities are per
// SL-DRX cycle.
#pragma once

#include <cstdint>

#include "scuba/types.hpp"

namespace scuba {

/// Inputs of the per-message energy forms.
struct EnergyModelInputs {
  double p_tx_mw = 100.0;
  double p_rx_mw = 80.0;
  double p_switch_mw = 80.0;
  double t_sf_ms = 1.0;
  int n_sl = 8;       ///< transport blocks per message
  int n_harq = 4;     ///< HARQ processes per frame
  int n_sl_inat = 0;  ///< post-session listen extension, SFs
};

void validate(const EnergyModelInputs& in);

/// Long-run cellular-state occupancy fractions (must sum to 1), plus the
/// expected number of availability beacons one connected block emits.
struct StateProbabilities {
  double p_cona = 0.0;
  double p_cdrx = 0.0;
  double p_idrx = 1.0;
  double k_sam_u = 12.5;  ///< expected beacons per connected block
};

void validate(const StateProbabilities& pr);

/// Inputs of the average-power forms.
struct PowerModelInputs {
  EnergyModelInputs energy;
  double r_tx_per_ms = 1.0 / 30000.0;  ///< outbound message rate
  double r_rx_per_ms = 1.0 / 30000.0;  ///< inbound message rate
  int n_sl_po = 4;        ///< fixed listening SFs per SL-DRX cycle
  Sf n_sl_drx_sf = 1280;  ///< SL-DRX cycle in SFs
  double n_sam = 0.5;     ///< beacon length as a fraction of one SF
  Sf n_sam_listen = 150;  ///< discovery listen budget before fallback
  Sf n_sam_u = 20;        ///< beacon period while connected
  Sf n_sam_d = 75;        ///< beacon period in CDRX
  double n_cdrx_free = 620.0;  ///< listen SFs per CDRX cycle (low-latency)
  double n_idrx_free = 639.0;  ///< listen SFs per IDRX cycle (low-latency)
  Sf cdrx_cycle_sf = 640;
  Sf idrx_cycle_sf = 640;
};

void validate(const PowerModelInputs& in);

/// Energy to send one n_sl-block message: transmit SFs, expected-feedback
/// listen SFs, switching gaps, and the optional post-session listen tail.
double energy_sl_tx_mj(const EnergyModelInputs& in);

/// Energy to receive one n_sl-block message: listen SFs for the transmit
/// half (at least one HARQ round), feedback transmit SFs, switching gaps,
/// and the optional listen tail.
double energy_sl_rx_mj(const EnergyModelInputs& in);

/// Average power, fixed-occasion schedule only: per-message energies at the
/// message rates (attempts only run outside connected mode) plus standing
/// occasion listening.
double power_native_mw(const PowerModelInputs& in,
                       const StateProbabilities& pr);

/// Average power with availability beacons and dynamic occasions: native
/// terms plus beacon emissions and the pre-transfer discovery listen.
double power_sam_mw(const PowerModelInputs& in, const StateProbabilities& pr);

/// Average power in low-latency mode: beacon emissions plus continuous
/// listening on all free subframes. There is no per-message discovery term:
/// the continuous listen already carries all peer knowledge.
double power_llm_mw(const PowerModelInputs& in, const StateProbabilities& pr);

/// Probability that at least one message arrives within one SL-DRX cycle
/// (Poisson arrivals with mean inter-arrival gamma_inv seconds).
double p_sl_tx(double gamma_inv_s, Sf n_sl_drx_sf, double t_sf_ms = 1.0);

/// Per-cycle data-collision probability across n_ue devices with per-cycle
/// transmit probability p_tx. Central topology: every transmitter targets
/// the same destination window. Random topology: transmitters land in the
/// tagged window with probability n_sl_po / n_sl_drx_sf each.
double p_collision(int n_ue, int n_bands, double p_tx, int n_sl_po,
                   Sf n_sl_drx_sf, Topology topology);

/// Probability a UE emits a beacon in a given subframe.
double p_sam_emission(const StateProbabilities& pr, double n_sam, Sf n_sam_u,
                      Sf n_sam_d);

/// Per-subframe beacon-collision probability across n_ue devices.
double p_sam_collision(int n_ue, int n_bands, const StateProbabilities& pr,
                       double n_sam, Sf n_sam_u, Sf n_sam_d);

/// Monte-Carlo estimate of the data-collision probability under the same
/// factored generative model as p_collision: per trial draw the number of
/// buffered transmitters ~ Binomial(n_ue, p_tx); a collision needs at least
/// two. In the random topology the conditional factor is sampled by slot
/// placement, one cohort per size k = 2..n_ue: k uniform positions in the
/// cycle, a hit when some cohort lands entirely inside the tagged
/// q_window = n_sl_po / n_sl_drx fraction. The band factor is applied
/// deterministically.
double mc_collision_probability(int n_ue, int n_bands, double p_tx,
                                double q_window, Topology topology,
                                long long trials, std::uint64_t seed);

}  // namespace scuba
