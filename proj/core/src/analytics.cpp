// Closed-form energy/power/collision models. Contracts in scuba/analytics.hpp.

#include "scuba/analytics.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "scuba/rng.hpp"

namespace scuba {

namespace {

// ceil(a/b) + 1 for positive integers: the switching-gap count of a message
// spanning ceil(n_sl / n_harq) frames.
int switch_count(int n_sl, int n_harq) {
  return (n_sl + n_harq - 1) / n_harq + 1;
}

// Ratio with the convention 0/0 = 0 (disabled feature ⇒ no cost), x/0
// rejected by validation elsewhere.
double guarded_div(double num, double den) {
  if (num == 0.0) return 0.0;
  return num / den;
}

// P(at least 2 successes) for Binomial(n, p), summed in log space so the
// binomial coefficients stay finite for n in the tens of thousands.
double binom_at_least_two(int n, double p) {
  if (n < 2 || p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
  double sum = 0.0;
  for (int k = 2; k <= n; ++k) {
    const double logc = lgn - std::lgamma(static_cast<double>(k) + 1.0) -
                        std::lgamma(static_cast<double>(n - k) + 1.0);
    sum += std::exp(logc + k * lp + (n - k) * lq);
  }
  return sum < 1.0 ? sum : 1.0;
}

}  // namespace

void validate(const EnergyModelInputs& in) {
  if (in.p_tx_mw < 0 || in.p_rx_mw < 0 || in.p_switch_mw < 0) {
    throw ConfigError("energy_model: power draws must be >= 0");
  }
  if (!(in.t_sf_ms > 0)) throw ConfigError("energy_model.t_sf_ms: must be > 0");
  if (in.n_sl < 1) throw ConfigError("energy_model.n_sl: must be >= 1");
  if (in.n_harq < 1) throw ConfigError("energy_model.n_harq: must be >= 1");
  if (in.n_sl_inat < 0) throw ConfigError("energy_model.n_sl_inat: must be >= 0");
}

void validate(const StateProbabilities& pr) {
  if (pr.p_cona < 0 || pr.p_cona > 1 || pr.p_cdrx < 0 || pr.p_cdrx > 1 ||
      pr.p_idrx < 0 || pr.p_idrx > 1) {
    throw ConfigError("state_probabilities: fractions must be in [0, 1]");
  }
  const double sum = pr.p_cona + pr.p_cdrx + pr.p_idrx;
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "state_probabilities: fractions must sum to 1 (got " << sum << ")";
    throw ConfigError(os.str());
  }
  if (pr.k_sam_u < 0) {
    throw ConfigError("state_probabilities.k_sam_u: must be >= 0");
  }
}

void validate(const PowerModelInputs& in) {
  validate(in.energy);
  if (in.r_tx_per_ms < 0 || in.r_rx_per_ms < 0) {
    throw ConfigError("power_model: message rates must be >= 0");
  }
  if (in.n_sl_po < 0) throw ConfigError("power_model.n_sl_po: must be >= 0");
  if (in.n_sl_drx_sf < 0) {
    throw ConfigError("power_model.n_sl_drx_sf: must be >= 0");
  }
  if (in.n_sl_po > 0 && in.n_sl_drx_sf > 0 && in.n_sl_po > in.n_sl_drx_sf) {
    throw ConfigError("power_model.n_sl_po: exceeds the SL-DRX cycle");
  }
  if (in.n_sam < 0 || in.n_sam > 1) {
    throw ConfigError("power_model.n_sam: beacon length must be in [0, 1] SF");
  }
  if (in.n_sam_listen < 0 || in.n_sam_u < 0 || in.n_sam_d < 0) {
    throw ConfigError("power_model: beacon timing fields must be >= 0");
  }
  if (in.n_cdrx_free < 0 || in.n_idrx_free < 0) {
    throw ConfigError("power_model: free-SF counts must be >= 0");
  }
  if (in.cdrx_cycle_sf < 1 || in.idrx_cycle_sf < 1) {
    throw ConfigError("power_model: cycle lengths must be >= 1");
  }
}

double energy_sl_tx_mj(const EnergyModelInputs& in) {
  validate(in);
  const double uj =
      in.t_sf_ms * (in.p_tx_mw * in.n_sl + in.p_rx_mw * in.n_sl +
                    in.p_switch_mw * switch_count(in.n_sl, in.n_harq) +
                    in.p_rx_mw * in.n_sl_inat);
  return uj * 1e-3;
}

double energy_sl_rx_mj(const EnergyModelInputs& in) {
  validate(in);
  const int listen_sf = in.n_harq + std::max(0, in.n_sl - in.n_harq);
  const double uj =
      in.t_sf_ms * (in.p_rx_mw * listen_sf + in.p_tx_mw * in.n_sl +
                    in.p_switch_mw * switch_count(in.n_sl, in.n_harq) +
                    in.p_rx_mw * in.n_sl_inat);
  return uj * 1e-3;
}

namespace {

// Standing fixed-occasion listening power (mW): n_sl_po SFs per SL-DRX
// cycle whenever the modem is not connected.
double occasion_listen_mw(const PowerModelInputs& in,
                          const StateProbabilities& pr) {
  if (in.n_sl_po == 0) return 0.0;
  if (in.n_sl_drx_sf <= 0) {
    throw ConfigError(
        "power_model.n_sl_drx_sf: a fixed-occasion model needs a positive "
        "SL-DRX cycle (0 selects low-latency mode)");
  }
  // Fraction of subframes spent listening times the listen draw; the
  // subframe duration cancels.
  return (pr.p_cdrx + pr.p_idrx) * in.energy.p_rx_mw * in.n_sl_po /
         static_cast<double>(in.n_sl_drx_sf);
}

}  // namespace

double power_native_mw(const PowerModelInputs& in,
                       const StateProbabilities& pr) {
  validate(in);
  validate(pr);
  // Per-message energies in uJ (mW*ms) so that energy * rate is mW directly.
  const double e_tx_uj = energy_sl_tx_mj(in.energy) * 1e3;
  const double e_rx_uj = energy_sl_rx_mj(in.energy) * 1e3;
  const double events = in.r_tx_per_ms * (1.0 - pr.p_cona) * e_tx_uj +
                        in.r_rx_per_ms * (1.0 - pr.p_cona) * e_rx_uj;
  return events + occasion_listen_mw(in, pr);
}

double power_sam_mw(const PowerModelInputs& in, const StateProbabilities& pr) {
  validate(in);
  validate(pr);
  const double e_tx_uj = energy_sl_tx_mj(in.energy) * 1e3;
  const double e_rx_uj = energy_sl_rx_mj(in.energy) * 1e3;

  // Standing beacon emissions: every n_sam_u SFs while connected, every
  // n_sam_d SFs in CDRX.
  const double beacon_mw =
      pr.p_cona * guarded_div(in.energy.p_tx_mw * in.n_sam,
                              static_cast<double>(in.n_sam_u)) +
      pr.p_cdrx * guarded_div(in.energy.p_tx_mw * in.n_sam,
                              static_cast<double>(in.n_sam_d));

  // Pre-transfer discovery listen, charged per outbound message: expected
  // listen time depends on the peer's state — mid-connection the sender
  // waits out the block (beacons every n_sam_u, then the inactivity gap);
  // in CDRX the next dynamic occasion arrives within n_sam_d; in IDRX the
  // full budget elapses before the fixed-occasion fallback.
  const double discovery_uj =
      pr.p_idrx * in.energy.p_rx_mw * in.energy.t_sf_ms *
      (pr.p_cona * (pr.k_sam_u * static_cast<double>(in.n_sam_u) +
                    static_cast<double>(in.n_sam_d)) /
           2.0 +
       pr.p_cdrx * static_cast<double>(in.n_sam_d) / 2.0 +
       pr.p_idrx * static_cast<double>(in.n_sam_listen));

  const double events =
      in.r_tx_per_ms * ((1.0 - pr.p_cona) * e_tx_uj + discovery_uj) +
      in.r_rx_per_ms * (1.0 - pr.p_cona) * e_rx_uj;

  return events + beacon_mw + occasion_listen_mw(in, pr);
}

double power_llm_mw(const PowerModelInputs& in, const StateProbabilities& pr) {
  validate(in);
  validate(pr);
  const double e_tx_uj = energy_sl_tx_mj(in.energy) * 1e3;
  const double e_rx_uj = energy_sl_rx_mj(in.energy) * 1e3;

  const double beacon_mw =
      pr.p_cona * guarded_div(in.energy.p_tx_mw * in.n_sam,
                              static_cast<double>(in.n_sam_u)) +
      pr.p_cdrx * guarded_div(in.energy.p_tx_mw * in.n_sam,
                              static_cast<double>(in.n_sam_d));

  // Continuous listening on every free subframe of both DRX cycles.
  const double listen_mw =
      pr.p_cdrx * in.energy.p_rx_mw * in.n_cdrx_free /
          static_cast<double>(in.cdrx_cycle_sf) +
      pr.p_idrx * in.energy.p_rx_mw * in.n_idrx_free /
          static_cast<double>(in.idrx_cycle_sf);

  const double events = in.r_tx_per_ms * (1.0 - pr.p_cona) * e_tx_uj +
                        in.r_rx_per_ms * (1.0 - pr.p_cona) * e_rx_uj;

  return events + beacon_mw + listen_mw;
}

double p_sl_tx(double gamma_inv_s, Sf n_sl_drx_sf, double t_sf_ms) {
  if (n_sl_drx_sf < 0) throw ConfigError("p_sl_tx: cycle must be >= 0");
  if (!(t_sf_ms > 0)) throw ConfigError("p_sl_tx: t_sf_ms must be > 0");
  if (n_sl_drx_sf == 0) return 0.0;
  if (std::isinf(gamma_inv_s)) return 0.0;
  if (!(gamma_inv_s > 0)) {
    throw ConfigError("p_sl_tx: mean inter-arrival must be positive");
  }
  const double cycle_s = static_cast<double>(n_sl_drx_sf) * t_sf_ms / 1000.0;
  return 1.0 - std::exp(-cycle_s / gamma_inv_s);
}

double p_collision(int n_ue, int n_bands, double p_tx, int n_sl_po,
                   Sf n_sl_drx_sf, Topology topology) {
  if (n_ue < 0) throw ConfigError("p_collision: n_ue must be >= 0");
  if (n_bands < 1) throw ConfigError("p_collision: n_bands must be >= 1");
  if (p_tx < 0.0 || p_tx > 1.0) {
    throw ConfigError("p_collision: p_tx must be in [0, 1]");
  }
  if (n_ue < 2 || p_tx == 0.0) return 0.0;

  const double p_a = binom_at_least_two(n_ue, p_tx);

  double p_b_given_a = 1.0;  // central: one shared destination window
  if (topology == Topology::kRandomPeers) {
    if (n_sl_po < 0 || n_sl_drx_sf <= 0 || n_sl_po > n_sl_drx_sf) {
      throw ConfigError(
          "p_collision: random topology needs 0 <= n_sl_po <= n_sl_drx_sf "
          "with a positive cycle");
    }
    const double q =
        static_cast<double>(n_sl_po) / static_cast<double>(n_sl_drx_sf);
    // Power sum over the transmitter count: all of them inside the tagged
    // occasion window.
    double sum = 0.0;
    if (q > 0.0) {
      const double lq = std::log(q);
      for (int k = 2; k <= n_ue; ++k) {
        const double term = std::exp(k * lq);
        sum += term;
        if (term < 1e-300) break;
      }
    }
    p_b_given_a = sum < 1.0 ? sum : 1.0;
  }

  const double p_c = p_a * p_b_given_a / static_cast<double>(n_bands);
  return p_c < 1.0 ? p_c : 1.0;
}

double p_sam_emission(const StateProbabilities& pr, double n_sam, Sf n_sam_u,
                      Sf n_sam_d) {
  validate(pr);
  if (n_sam < 0 || n_sam > 1) {
    throw ConfigError("p_sam_emission: beacon length must be in [0, 1] SF");
  }
  if (n_sam_u < 0 || n_sam_d < 0) {
    throw ConfigError("p_sam_emission: beacon periods must be >= 0");
  }
  return pr.p_cona *
             guarded_div(n_sam, static_cast<double>(n_sam_u)) +
         pr.p_cdrx * guarded_div(n_sam, static_cast<double>(n_sam_d));
}

double p_sam_collision(int n_ue, int n_bands, const StateProbabilities& pr,
                       double n_sam, Sf n_sam_u, Sf n_sam_d) {
  if (n_ue < 0) throw ConfigError("p_sam_collision: n_ue must be >= 0");
  if (n_bands < 1) throw ConfigError("p_sam_collision: n_bands must be >= 1");
  const double p = p_sam_emission(pr, n_sam, n_sam_u, n_sam_d);
  return binom_at_least_two(n_ue, p) / static_cast<double>(n_bands);
}

double mc_collision_probability(int n_ue, int n_bands, double p_tx,
                                double q_window, Topology topology,
                                long long trials, std::uint64_t seed) {
  if (n_ue < 0) throw ConfigError("mc_collision: n_ue must be >= 0");
  if (n_bands < 1) throw ConfigError("mc_collision: n_bands must be >= 1");
  if (p_tx < 0.0 || p_tx > 1.0) {
    throw ConfigError("mc_collision: p_tx must be in [0, 1]");
  }
  if (q_window < 0.0 || q_window > 1.0) {
    throw ConfigError("mc_collision: q_window must be in [0, 1]");
  }
  if (trials < 1) throw ConfigError("mc_collision: trials must be >= 1");
  if (n_ue < 2 || p_tx == 0.0) return 0.0;

  auto rng = make_rng(seed, 0, RngStream::kMonteCarlo);
  std::binomial_distribution<int> transmitters(n_ue, p_tx);
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) {
    if (transmitters(rng) < 2) continue;
    if (topology == Topology::kRandomPeers) {
      // Conditional factor, sampled the way the closed form counts it: for
      // each cohort size, place that many transmissions uniformly in the
      // cycle and look for a cohort entirely inside the tagged window.
      bool cohort_in_window = false;
      for (int k = 2; k <= n_ue && !cohort_in_window; ++k) {
        bool all_in_window = true;
        for (int i = 0; i < k; ++i) {
          if (uniform_double(rng) >= q_window) {
            all_in_window = false;
            break;
          }
        }
        cohort_in_window = all_in_window;
      }
      if (!cohort_in_window) continue;
    }
    ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials) /
         static_cast<double>(n_bands);
}

}  // namespace scuba
