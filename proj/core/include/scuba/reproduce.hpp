// scuba/reproduce.hpp — canned reference-result targets.
//
// Each target re-derives one published reference result (a latency or power
// table, a trend figure, or the battery-life estimate) from pinned scenarios
// and seeds, compares the outcome against the expected value bands, and
// returns both the check rows and any plot/CSV artifacts. Everything is
// deterministic: same build + same options => byte-identical results.
#pragma once

#include <string>
#include <vector>

#include "scuba/types.hpp"

namespace scuba {

/// One comparison row: `computed` must land inside [lo, hi]. `reference` is
/// the published value the band was derived from (NaN when the check is a
/// pure bound, e.g. an R² threshold).
struct CheckRow {
  std::string label;
  std::string unit;
  double reference = 0.0;
  double computed = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

/// A file payload produced by a target (CSV data or an SVG plot).
struct Artifact {
  std::string name;  ///< suggested file name, e.g. "llm_power.csv"
  std::string content;
};

struct TargetResult {
  std::string target;
  std::vector<CheckRow> rows;
  std::vector<Artifact> artifacts;

  bool pass() const {
    for (const CheckRow& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

struct ReproduceOptions {
  /// Scales simulation horizons and Monte Carlo trial counts. 1.0 runs the
  /// full-fidelity targets; small values give quick structural smoke runs
  /// whose check rows are statistically meaningless but whose shape and
  /// determinism match the real thing.
  double scale = 1.0;
};

/// Known target names, in canonical order.
const std::vector<std::string>& reproduce_target_names();

/// Runs one target by name. Unknown names throw ConfigError.
TargetResult reproduce_target(const std::string& name,
                              const ReproduceOptions& opts = {});

/// Fixed-width text rendering of the check rows (one line per row plus a
/// header and a verdict footer). Deterministic.
std::string render_text_table(const TargetResult& result);

}  // namespace scuba
