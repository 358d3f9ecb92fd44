// Scenario document I/O: a human-editable JSON format with layered defaults
// (built-in common settings <- file <- per-entry overrides), strict unknown-key
// rejection with full field paths, and emission of the fully resolved scenario
// so a manifest can reproduce a run bit-exactly.
#pragma once

#include <string>

#include "scuba/engine.hpp"

namespace scuba {

/// Parses a scenario document. Every field is optional and defaults to the
/// built-in common settings; unknown keys and type mismatches are rejected
/// with the full field path (e.g. "ues[1].sl_paging: unknown key 'cycle'").
/// The returned scenario has already passed validate(). Throws ConfigError.
///
/// Document layout (all keys optional unless noted):
///   name, seed, horizon_sf, n_bands, topology ("central_dst"|"random_peers"),
///   power {p_tx_mw, p_rx_mw, p_switch_mw, t_sf_ms},
///   ue_defaults {<ue fields>}          template for every UE,
///   ue_count, imsi_start, imsi_stride  replicate the template N times, or
///   ues [{<ue fields>}, ...]           explicit list; each entry overrides
///                                      the template and must carry "imsi".
/// UE fields: imsi, beta, mode ("native"|"sam"|"llm"),
///   paging {t_idrx, n_control, po_lut {"<occasions>": [subframes...]}},
///   sl_paging {t_sl_drx, n_sl_po, n_cluster, n_dist, n_off},
///   cellular {t_rrc, t_data, drx_inat, data_inat, cdrx_cycle, cdrx_on, rai,
///             switch_every},
///   cell_traffic / sl_traffic {kind ("none"|"periodic"|"poisson"),
///                              mean_iat_sf, period_sf, phase_sf},
///   sl_payload_bytes, n_sl_inat,
///   harq {scheme ("fixed_mcs"|"grant_based"), n_harq, n_sl_grant, mcs,
///         tbs_bits, prb, overhead_bytes},
///   sam {n_sam_period, n_sam_u_interval, n_sam_d_interval, sam_len}.
Scenario scenario_from_json(const std::string& text);

/// scenario_from_json over the contents of `path`. Unreadable file -> a
/// ConfigError naming the path.
Scenario scenario_from_file(const std::string& path);

/// Serializes every field of the resolved scenario (explicit "ues" list, no
/// template shorthand). scenario_from_json(scenario_to_json(s)) == s.
std::string scenario_to_json(const Scenario& sc);

}  // namespace scuba
