// Reference-result targets. Contracts in scuba/reproduce.hpp.

#include "scuba/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "scuba/analytics.hpp"
#include "scuba/engine.hpp"
#include "scuba/metrics.hpp"
#include "scuba/svg.hpp"

namespace scuba {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

CheckRow band_row(std::string label, std::string unit, double reference,
                  double computed, double lo, double hi) {
  CheckRow r;
  r.label = std::move(label);
  r.unit = std::move(unit);
  r.reference = reference;
  r.computed = computed;
  r.lo = lo;
  r.hi = hi;
  r.pass = std::isfinite(computed) && computed >= lo && computed <= hi;
  return r;
}

/// Band of ±tol (relative) around the reference.
CheckRow rel_row(std::string label, std::string unit, double reference,
                 double computed, double tol) {
  return band_row(std::move(label), std::move(unit), reference, computed,
                  reference * (1.0 - tol), reference * (1.0 + tol));
}

Sf scaled_sf(const ReproduceOptions& opts, double sf) {
  return std::max<Sf>(static_cast<Sf>(sf * opts.scale), 10000);
}

long long scaled_trials(const ReproduceOptions& opts, double trials) {
  return std::max<long long>(static_cast<long long>(trials * opts.scale),
                             1000);
}

// The four cellular traffic cases the reference tables cover. Session
// length selects the connected-mode data duration and CDRX budget; the
// traffic model selects Poisson(30 s) or periodic(5 min) arrivals.
struct CellCase {
  const char* name;
  bool long_sessions;
  bool periodic;
};
constexpr CellCase kCellCases[4] = {
    {"poisson cellular, short sessions", false, false},
    {"poisson cellular, long sessions", true, false},
    {"periodic cellular, short sessions", false, true},
    {"periodic cellular, long sessions", true, true},
};

/// One UE of a transfer pair: sidelink Poisson(30 s) both ways, cellular
/// traffic per the case. Periodic phases are staggered half a period so the
/// two modems do not lock their connected windows together.
UeSpec pair_ue(std::uint64_t imsi, ScubaMode mode, int t_sl_drx_frames,
               const CellCase& cc, int idx) {
  UeSpec s;
  s.identity.imsi = imsi;
  s.mode = mode;
  s.sl_paging.t_sl_drx = t_sl_drx_frames;
  if (cc.long_sessions) {
    s.cellular.t_data = 5000;
    s.cellular.data_inat = 5000;
  }
  if (cc.periodic) {
    s.cell_traffic.kind = TrafficKind::kPeriodic;
    s.cell_traffic.period_sf = 300000;
    s.cell_traffic.phase_sf = idx == 0 ? 0 : 150000;
  } else {
    s.cell_traffic.kind = TrafficKind::kPoisson;
    s.cell_traffic.mean_iat_sf = 30000;
  }
  s.sl_traffic.kind = TrafficKind::kPoisson;
  s.sl_traffic.mean_iat_sf = 30000;
  return s;
}

Scenario pair_scenario(const std::string& name, std::uint64_t seed,
                       Sf horizon, ScubaMode mode, int t_sl_drx_frames,
                       const CellCase& cc) {
  Scenario sc;
  sc.name = name;
  sc.seed = seed;
  sc.horizon_sf = horizon;
  sc.ues = {pair_ue(5, mode, t_sl_drx_frames, cc, 0),
            pair_ue(17, mode, t_sl_drx_frames, cc, 1)};
  return sc;
}

/// R² of the least-squares line through (x, y).
double linear_fit_r2(const std::vector<double>& x,
                     const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) return 0.0;
  const double b = (n * sxy - sx * sy) / denom;
  const double a = (sy - b * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = a + b * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return ss_tot == 0 ? 0.0 : 1.0 - ss_res / ss_tot;
}

// The divisor-valid listening cycles the trend figures sweep, in frames.
const std::vector<int> kCycleFrames = {32, 64, 128, 256, 512, 1024};

double cycle_seconds(int frames) { return frames * 10.24 / 1024.0; }

// ---------------------------------------------------------------------------
// llm power table
// ---------------------------------------------------------------------------

TargetResult run_table7(const ReproduceOptions& opts) {
  TargetResult res;
  res.target = "table7";
  // Published values: simulated and analytic average power per case.
  const double ref_sim[4] = {78.2, 67.0, 79.8, 78.6};
  const double ref_ana[4] = {78.6, 67.0, 80.1, 78.9};

  std::ostringstream csv;
  csv << "case,avg_power_mw,analytic_mw,reference_sim_mw,"
         "reference_analytic_mw,p_cona,p_cdrx,p_idrx,messages_completed\n";
  for (int i = 0; i < 4; ++i) {
    const CellCase& cc = kCellCases[i];
    const Scenario sc =
        pair_scenario("llm-power", 310 + static_cast<std::uint64_t>(i),
                      scaled_sf(opts, 1e7), ScubaMode::kLlm, 0, cc);
    const RunReport r = run(sc);
    const StateProbabilities pr = probabilities_from(r);
    const double ana = power_llm_mw(PowerModelInputs{}, pr);
    const std::string base = std::string("llm power, ") + cc.name;
    res.rows.push_back(
        rel_row(base + ": simulated", "mW", ref_sim[i], r.avg_power_mw, 0.10));
    res.rows.push_back(band_row(base + ": simulated minus analytic", "mW", 0.0,
                                r.avg_power_mw - ana, -1.0, 1.0));
    csv << cc.name << ',' << num(r.avg_power_mw) << ',' << num(ana) << ','
        << num(ref_sim[i]) << ',' << num(ref_ana[i]) << ',' << num(pr.p_cona)
        << ',' << num(pr.p_cdrx) << ',' << num(pr.p_idrx) << ','
        << r.messages_completed << '\n';
  }
  res.artifacts.push_back({"table7.csv", csv.str()});
  return res;
}

// ---------------------------------------------------------------------------
// llm latency table
// ---------------------------------------------------------------------------

TargetResult run_table6(const ReproduceOptions& opts) {
  TargetResult res;
  res.target = "table6";
  // Published latency cells (average, 99th percentile) in ms, and the check
  // tolerances. The long-session tails get a wider band for their
  // heavy-tailed variance.
  const double ref_avg[4] = {28.2, 1392.0, 20.6, 108.9};
  const double ref_p99[4] = {340.8, 14110.0, 38.0, 3717.0};
  const double tol_avg[4] = {0.20, 0.25, 0.15, 0.25};
  const double tol_p99[4] = {0.20, 0.25, 0.20, 0.25};

  std::ostringstream csv;
  csv << "case,latency_avg_ms,latency_p99_ms,latency_max_ms,"
         "reference_avg_ms,reference_p99_ms,messages_completed\n";
  for (int i = 0; i < 4; ++i) {
    const CellCase& cc = kCellCases[i];
    const Scenario sc =
        pair_scenario("llm-latency", 210 + static_cast<std::uint64_t>(i),
                      scaled_sf(opts, 1.6e8), ScubaMode::kLlm, 0, cc);
    const RunReport r = run(sc);
    const std::string base = std::string("llm latency, ") + cc.name;
    res.rows.push_back(band_row(base + ": completed messages", "", kNan,
                                static_cast<double>(r.messages_completed),
                                1e4, kInf));
    res.rows.push_back(
        rel_row(base + ": average", "ms", ref_avg[i], r.latency_avg_ms,
                tol_avg[i]));
    res.rows.push_back(
        rel_row(base + ": 99th percentile", "ms", ref_p99[i],
                r.latency_p99_ms, tol_p99[i]));
    csv << cc.name << ',' << num(r.latency_avg_ms) << ','
        << num(r.latency_p99_ms) << ',' << num(r.latency_max_ms) << ','
        << num(ref_avg[i]) << ',' << num(ref_p99[i]) << ','
        << r.messages_completed << '\n';
  }
  res.artifacts.push_back({"table6.csv", csv.str()});
  return res;
}

// ---------------------------------------------------------------------------
// power/latency versus listening cycle (short and long cellular sessions)
// ---------------------------------------------------------------------------

struct CyclePoint {
  double cycle_s;
  double power_mw;
  double latency_avg_ms;
  double latency_p99_ms;
};

struct CycleCurve {
  std::string name;  // e.g. "native poisson"
  ScubaMode mode;
  const CellCase* cc;
  std::vector<CyclePoint> points;
};

/// Sweeps the four mode x traffic curves over the listening cycles.
/// `p99_heavy_idx` (cycle index, or -1) marks the Poisson-traffic point that
/// needs the long `heavy_horizon` for a stable tail percentile.
std::vector<CycleCurve> sweep_cycles(bool long_sessions, std::uint64_t base,
                                     Sf horizon, Sf sam_horizon,
                                     int p99_heavy_idx, Sf heavy_horizon) {
  std::vector<CycleCurve> curves;
  const ScubaMode modes[2] = {ScubaMode::kNative, ScubaMode::kSam};
  for (int m = 0; m < 2; ++m) {
    for (int t = 0; t < 2; ++t) {
      // kCellCases rows 0/2 are the short-session Poisson/periodic cases,
      // rows 1/3 the long-session ones.
      const CellCase& cc = kCellCases[(t == 0 ? 0 : 2) + (long_sessions ? 1 : 0)];
      CycleCurve curve;
      curve.name = std::string(m == 0 ? "native " : "sam ") +
                   (t == 0 ? "poisson" : "periodic");
      curve.mode = modes[m];
      curve.cc = &cc;
      for (std::size_t j = 0; j < kCycleFrames.size(); ++j) {
        Sf h = modes[m] == ScubaMode::kSam ? sam_horizon : horizon;
        if (static_cast<int>(j) == p99_heavy_idx && t == 0) h = heavy_horizon;
        const Scenario sc = pair_scenario(
            "cycle-sweep", base + 10 * static_cast<std::uint64_t>(2 * m + t) + j,
            h, modes[m], kCycleFrames[j], cc);
        const RunReport r = run(sc);
        curve.points.push_back({cycle_seconds(kCycleFrames[j]),
                                r.avg_power_mw, r.latency_avg_ms,
                                r.latency_p99_ms});
      }
      curves.push_back(std::move(curve));
    }
  }
  return curves;
}

std::string cycle_csv(const std::vector<CycleCurve>& curves) {
  std::ostringstream csv;
  csv << "curve,cycle_s,avg_power_mw,latency_avg_ms,latency_p99_ms\n";
  for (const CycleCurve& c : curves)
    for (const CyclePoint& p : c.points)
      csv << c.name << ',' << num(p.cycle_s) << ',' << num(p.power_mw) << ','
          << num(p.latency_avg_ms) << ',' << num(p.latency_p99_ms) << '\n';
  return csv.str();
}

std::string cycle_power_svg(const std::vector<CycleCurve>& curves,
                            const std::string& title) {
  SvgPlotSpec spec;
  spec.title = title;
  spec.x_label = "listening cycle (s)";
  spec.y_label = "average power (mW)";
  for (const CycleCurve& c : curves) {
    SvgSeries s;
    s.label = c.name;
    for (const CyclePoint& p : c.points) s.points.push_back({p.cycle_s, p.power_mw});
    spec.series.push_back(std::move(s));
  }
  return render_svg(spec);
}

std::string cycle_latency_svg(const std::vector<CycleCurve>& curves,
                              const std::string& title, bool with_p99) {
  SvgPlotSpec spec;
  spec.title = title;
  spec.x_label = "listening cycle (s)";
  spec.y_label = "latency (ms)";
  for (const CycleCurve& c : curves) {
    SvgSeries s;
    s.label = c.name + " avg";
    for (const CyclePoint& p : c.points)
      s.points.push_back({p.cycle_s, p.latency_avg_ms});
    spec.series.push_back(std::move(s));
    if (with_p99) {
      SvgSeries tail;
      tail.label = c.name + " p99";
      for (const CyclePoint& p : c.points)
        tail.points.push_back({p.cycle_s, p.latency_p99_ms});
      tail.draw_line = false;
      spec.series.push_back(std::move(tail));
    }
  }
  return render_svg(spec);
}

/// Smallest drop between adjacent points; negative if the series ever rises.
double min_adjacent_drop(const std::vector<CyclePoint>& pts) {
  double worst = kInf;
  for (std::size_t i = 1; i < pts.size(); ++i)
    worst = std::min(worst, pts[i - 1].power_mw - pts[i].power_mw);
  return worst;
}

TargetResult run_fig10(const ReproduceOptions& opts) {
  TargetResult res;
  res.target = "fig10";
  const std::vector<CycleCurve> curves =
      sweep_cycles(/*long_sessions=*/false, 1000, scaled_sf(opts, 3e7),
                   scaled_sf(opts, 1e7), -1, 0);
  // curves[0]=native poisson, [1]=native periodic, [2]=sam poisson,
  // [3]=sam periodic.
  for (int t = 0; t < 2; ++t) {
    const CycleCurve& nat = curves[static_cast<std::size_t>(t)];
    const char* traffic = t == 0 ? "poisson" : "periodic";
    res.rows.push_back(band_row(
        std::string("native power strictly decreasing with the cycle, ") +
            traffic + " cellular: smallest step",
        "mW", kNan, min_adjacent_drop(nat.points), 1e-9, kInf));
    std::vector<double> x, y;
    for (const CyclePoint& p : nat.points) {
      x.push_back(p.cycle_s);
      y.push_back(p.latency_avg_ms);
    }
    res.rows.push_back(band_row(
        std::string("native average latency linear in the cycle, ") + traffic +
            " cellular: R-squared",
        "", kNan, linear_fit_r2(x, y), 0.95, 1.0));
  }
  res.artifacts.push_back({"fig10.csv", cycle_csv(curves)});
  res.artifacts.push_back(
      {"fig10_power.svg",
       cycle_power_svg(curves, "Power vs listening cycle, short sessions")});
  res.artifacts.push_back(
      {"fig10_latency.svg",
       cycle_latency_svg(curves, "Latency vs listening cycle, short sessions",
                         false)});
  return res;
}

TargetResult run_fig11(const ReproduceOptions& opts) {
  TargetResult res;
  res.target = "fig11";
  const int heavy_idx = static_cast<int>(kCycleFrames.size()) - 1;
  const std::vector<CycleCurve> curves =
      sweep_cycles(/*long_sessions=*/true, 1100, scaled_sf(opts, 4e7),
                   scaled_sf(opts, 4e7), heavy_idx, scaled_sf(opts, 1.6e8));
  const CyclePoint& nat = curves[0].points.back();   // native poisson, 10.24 s
  const CyclePoint& sam = curves[2].points.back();   // sam poisson, 10.24 s
  const double gain =
      nat.latency_p99_ms > 0
          ? 100.0 * (1.0 - sam.latency_p99_ms / nat.latency_p99_ms)
          : 0.0;
  res.rows.push_back(band_row(
      "sam tail-latency gain over native at the 10.24 s cycle, poisson "
      "cellular, long sessions",
      "%", 23.0, gain, 20.0, 100.0));
  res.artifacts.push_back({"fig11.csv", cycle_csv(curves)});
  res.artifacts.push_back(
      {"fig11_power.svg",
       cycle_power_svg(curves, "Power vs listening cycle, long sessions")});
  res.artifacts.push_back(
      {"fig11_latency.svg",
       cycle_latency_svg(curves, "Latency vs listening cycle, long sessions",
                         true)});
  return res;
}

// ---------------------------------------------------------------------------
// data-collision probability versus device count
// ---------------------------------------------------------------------------

TargetResult run_fig12(const ReproduceOptions& opts) {
  TargetResult res;
  res.target = "fig12";
  const std::vector<int> n_grid = {2, 5, 10, 20, 50, 100, 200, 500, 1000};

  // Analytic curves per listening cycle, both topologies.
  std::ostringstream csv;
  csv << "topology,cycle_s,n_ue,p_collision\n";
  SvgPlotSpec central, random;
  central.title = "Data-collision probability, one shared destination";
  random.title = "Data-collision probability, random peers";
  for (SvgPlotSpec* s : {&central, &random}) {
    s->x_label = "devices";
    s->y_label = "collision probability";
    s->log_x = true;
    s->log_y = true;
  }
  for (int frames : kCycleFrames) {
    const Sf cycle_sf = static_cast<Sf>(frames) * 10;
    const double p_tx = p_sl_tx(30.0, cycle_sf);
    for (Topology topo : {Topology::kCentralDst, Topology::kRandomPeers}) {
      SvgSeries series;
      char label[32];
      std::snprintf(label, sizeof label, "%.4g s", cycle_seconds(frames));
      series.label = label;
      for (int n : n_grid) {
        const double pc = p_collision(n, 2, p_tx, 4, cycle_sf, topo);
        csv << (topo == Topology::kCentralDst ? "central" : "random") << ','
            << num(cycle_seconds(frames)) << ',' << n << ',' << num(pc)
            << '\n';
        if (pc > 0) series.points.push_back({static_cast<double>(n), pc});
      }
      (topo == Topology::kCentralDst ? central : random)
          .series.push_back(std::move(series));
    }
  }

  // Monte-Carlo cross-checks at the default 1.28 s cycle.
  const Sf def_cycle = 1280;
  const double p_tx = p_sl_tx(30.0, def_cycle);
  const double q_window = 4.0 / static_cast<double>(def_cycle);
  const long long trials = scaled_trials(opts, 1e7);
  std::ostringstream mc_csv;
  mc_csv << "topology,n_ue,analytic,monte_carlo,sigma,trials\n";
  int seed_idx = 0;
  for (Topology topo : {Topology::kCentralDst, Topology::kRandomPeers}) {
    const char* tname =
        topo == Topology::kCentralDst ? "central destination" : "random peers";
    for (int n : {2, 10, 50, 100}) {
      const double analytic = p_collision(n, 2, p_tx, 4, def_cycle, topo);
      const double mc = mc_collision_probability(
          n, 2, p_tx, q_window, topo, trials,
          1200 + static_cast<std::uint64_t>(seed_idx++));
      // Score test: the estimator's spread under the analytic probability,
      // so a zero-hit Monte-Carlo run still yields a finite z.
      const double p_raw = std::min(analytic * 2.0, 1.0);
      const double sigma =
          std::sqrt(p_raw * (1.0 - p_raw) / static_cast<double>(trials)) / 2.0;
      const double z = sigma > 0 ? std::abs(analytic - mc) / sigma
                                 : (analytic == mc ? 0.0 : kInf);
      char label[96];
      std::snprintf(label, sizeof label,
                    "analytic vs monte-carlo gap, %s, %d devices (z-score)",
                    tname, n);
      res.rows.push_back(band_row(label, "sigma", kNan, z, 0.0, 3.0));
      mc_csv << (topo == Topology::kCentralDst ? "central" : "random") << ','
             << n << ',' << num(analytic) << ',' << num(mc) << ','
             << num(sigma) << ',' << trials << '\n';
    }
  }
  for (int n : {2, 10, 50, 100}) {
    const double pc =
        p_collision(n, 2, p_tx, 4, def_cycle, Topology::kRandomPeers);
    char label[96];
    std::snprintf(label, sizeof label,
                  "random-peer collision probability, %d devices", n);
    res.rows.push_back(band_row(label, "", kNan, pc, 0.0, 1e-4));
  }

  res.artifacts.push_back({"fig12.csv", csv.str()});
  res.artifacts.push_back({"fig12_monte_carlo.csv", mc_csv.str()});
  res.artifacts.push_back({"fig12_central.svg", render_svg(central)});
  res.artifacts.push_back({"fig12_random.svg", render_svg(random)});
  return res;
}

// ---------------------------------------------------------------------------
// beacon-collision probability versus device count
// ---------------------------------------------------------------------------

TargetResult run_fig14(const ReproduceOptions& opts) {
  TargetResult res;
  res.target = "fig14";
  // Occupancy probabilities measured from availability-message runs.
  StateProbabilities probs[2];  // [0]=short sessions, [1]=long sessions
  for (int k = 0; k < 2; ++k) {
    const CellCase& cc = kCellCases[k == 0 ? 0 : 1];  // poisson cellular
    const Scenario sc =
        pair_scenario("sam-occupancy", 1400 + static_cast<std::uint64_t>(k),
                      scaled_sf(opts, 1e7), ScubaMode::kSam, 128, cc);
    probs[k] = probabilities_from(run(sc));
  }

  const std::vector<int> n_grid = {10, 20, 50, 100, 200, 500, 1000};
  SvgPlotSpec plot;
  plot.title = "Beacon-collision probability vs devices";
  plot.x_label = "devices";
  plot.y_label = "collision probability";
  plot.log_x = true;
  plot.log_y = true;
  std::ostringstream csv;
  csv << "case,busy_beacon_interval_sf,n_ue,p_collision\n";
  for (int k = 0; k < 2; ++k) {
    for (Sf n_sam_u : {Sf{20}, Sf{75}}) {
      SvgSeries series;
      series.label = std::string(k == 0 ? "short" : "long") + " sessions, " +
                     num(static_cast<double>(n_sam_u)) + " ms busy interval";
      for (int n : n_grid) {
        const double pc = p_sam_collision(n, 2, probs[k], 0.5, n_sam_u, 75);
        csv << (k == 0 ? "short" : "long") << ',' << n_sam_u << ',' << n << ','
            << num(pc) << '\n';
        if (pc > 0) series.points.push_back({static_cast<double>(n), pc});
      }
      plot.series.push_back(std::move(series));
    }
  }

  // The published comparison: tightening the busy-mode beacon spacing from
  // 75 ms to 20 ms buys up to ~3x more beacon collisions under long
  // sessions. Evaluated at a 500-device network where the ratio is in its
  // plateau between the quadratic small-n regime and saturation.
  const int n_ref = 500;
  const double p20 = p_sam_collision(n_ref, 2, probs[1], 0.5, 20, 75);
  const double p75 = p_sam_collision(n_ref, 2, probs[1], 0.5, 75, 75);
  res.rows.push_back(band_row(
      "beacon-collision ratio, 20 ms vs 75 ms busy-mode spacing, long "
      "sessions, 500 devices",
      "x", 3.0, p75 > 0 ? p20 / p75 : kInf, 2.0, 3.5));

  res.artifacts.push_back({"fig14.csv", csv.str()});
  res.artifacts.push_back({"fig14.svg", render_svg(plot)});
  return res;
}

// ---------------------------------------------------------------------------
// battery life
// ---------------------------------------------------------------------------

TargetResult run_battery(const ReproduceOptions&) {
  TargetResult res;
  res.target = "battery";
  // 5 Wh battery; the cellular-only reference (200-byte reports every two
  // hours at 164 dB coupling loss) drains it in 328.5 days, which calibrates
  // the cellular share. The sidelink share counts the per-transfer energies
  // at the configured message rate.
  const double e_b_wh = 5.0;
  const double ref_days = 328.5;
  const double e_cell = e_b_wh / ref_days;
  const EnergyModelInputs energy;
  const double wh_per_msg =
      (energy_sl_tx_mj(energy) + energy_sl_rx_mj(energy)) / 3.6e6;

  const auto days_for = [&](double messages_per_day) {
    return battery_life_days(e_b_wh, messages_per_day * wh_per_msg, e_cell);
  };
  res.rows.push_back(rel_row("battery life, cellular only", "days", ref_days,
                             days_for(0.0), 0.001));
  res.rows.push_back(rel_row(
      "battery life, with sidelink transfers every 30 s", "days", 279.0,
      days_for(86400.0 / 30.0), 0.05));
  res.rows.push_back(rel_row(
      "battery life, with sidelink transfers every 2 h", "days", 328.3,
      days_for(12.0), 0.005));

  std::ostringstream csv;
  csv << "message_iat_s,messages_per_day,battery_days\n";
  for (double iat : {30.0, 60.0, 300.0, 900.0, 3600.0, 7200.0}) {
    const double per_day = 86400.0 / iat;
    csv << num(iat) << ',' << num(per_day) << ',' << num(days_for(per_day))
        << '\n';
  }
  res.artifacts.push_back({"battery.csv", csv.str()});
  return res;
}

}  // namespace

const std::vector<std::string>& reproduce_target_names() {
  static const std::vector<std::string> kNames = {
      "table6", "table7", "fig10", "fig11", "fig12", "fig14", "battery"};
  return kNames;
}

TargetResult reproduce_target(const std::string& name,
                              const ReproduceOptions& opts) {
  if (opts.scale <= 0 || !std::isfinite(opts.scale)) {
    throw ConfigError("reproduce: scale must be positive");
  }
  if (name == "table6") return run_table6(opts);
  if (name == "table7") return run_table7(opts);
  if (name == "fig10") return run_fig10(opts);
  if (name == "fig11") return run_fig11(opts);
  if (name == "fig12") return run_fig12(opts);
  if (name == "fig14") return run_fig14(opts);
  if (name == "battery") return run_battery(opts);
  throw ConfigError("reproduce: unknown target '" + name +
                    "' (expected one of table6, table7, fig10, fig11, fig12, "
                    "fig14, battery)");
}

std::string render_text_table(const TargetResult& result) {
  std::ostringstream os;
  os << "target: " << result.target << '\n';
  char line[256];
  std::snprintf(line, sizeof line, "%-78s %10s %12s  %-26s %s\n", "check",
                "reference", "computed", "band", "verdict");
  os << line;
  for (const CheckRow& r : result.rows) {
    char ref[32];
    if (std::isnan(r.reference)) {
      std::snprintf(ref, sizeof ref, "-");
    } else {
      std::snprintf(ref, sizeof ref, "%.6g", r.reference);
    }
    char band[64];
    std::snprintf(band, sizeof band, "[%.6g, %.6g]", r.lo, r.hi);
    const std::string label =
        r.unit.empty() ? r.label : r.label + " (" + r.unit + ")";
    std::snprintf(line, sizeof line, "%-78s %10s %12.6g  %-26s %s\n",
                  label.c_str(), ref, r.computed, band,
                  r.pass ? "pass" : "FAIL");
    os << line;
  }
  int passed = 0;
  for (const CheckRow& r : result.rows) passed += r.pass ? 1 : 0;
  os << "result: " << (result.pass() ? "PASS" : "FAIL") << " (" << passed
     << '/' << result.rows.size() << " checks)\n";
  return os.str();
}

}  // namespace scuba
