#include "fdb/golden.hpp"

#include <cmath>

#include "fdb/run.hpp"

namespace fdb {

bool GoldenCheck::pass() const {
  if (!(std::abs(computed - expected) <= tolerance)) return false;
  if (!sign_required) return true;
  if (expected == 0.0) return std::abs(computed) < 0.005;
  return (computed > 0.0) == (expected > 0.0);
}

std::vector<GoldenCheck> check_against_golden(const Config& cfg) {
  std::vector<GoldenCheck> out;
  const auto base = load_golden_base(cfg.path("golden", "base"));
  const auto sens = load_golden_sensitivities(cfg.path("golden", "sensitivities"));
  const auto scenarios = load_scenarios(cfg);

  for (const auto& y : load_years(cfg)) {
    const BoundsReport bn = bounds_report(y.balance, y.params, y.curve, y.vols);
    const BoundsReport pct = bn.in_percent_of_mv0();
    const auto g = base.find(y.year);
    if (g != base.end()) {
      auto add = [&](const std::map<std::string, double>& m, const BoundsReport& r,
                     const std::string& unit, double tol) {
        const std::pair<const char*, double> items[] = {
            {"lb", r.lb}, {"ub", r.ub}, {"fdb_hat", r.fdb_hat}, {"ii", r.ii}, {"cog", r.cog}};
        for (const auto& [key, value] : items) {
          if (auto it = m.find(key); it != m.end()) {
            out.push_back({y.year + " " + key + " " + unit, value, it->second, tol});
          }
        }
      };
      add(g->second.bn, bn, "bn", kBaseTolBn);
      add(g->second.pct, pct, "pct", kBaseTolPct);
    }
    if (!scenarios.empty() && y.balance.fdb_reported) {
      for (const auto& row : sensitivity_grid(y.balance, y.params, y.curve, y.vols, scenarios)) {
        const auto it = sens.find({row.scenario, y.year});
        if (it == sens.end()) continue;
        const std::string tag = y.year + " " + row.scenario + " drel_";
        out.push_back({tag + "fdb", row.drel_fdb, it->second.drel_fdb, kSensitivityTol, true});
        out.push_back({tag + "lb", row.drel_lb, it->second.drel_lb, kSensitivityTol, true});
        out.push_back({tag + "ub", row.drel_ub, it->second.drel_ub, kSensitivityTol, true});
      }
    }
  }

  if (cfg.has("golden", "calibration")) {
    const auto cal = load_golden_calibration(cfg.path("golden", "calibration"));
    const TaxContext tax{cfg.number("calibration", "tax_rate")};
    std::vector<double> gphs;
    for (const auto& r : run_calibration(cfg)) {
      const auto it = cal.find(r.year);
      if (it == cal.end()) continue;
      const auto& g = it->second;
      out.push_back({r.year + " gamma pct", 100.0 * r.gamma, g.gamma_pct, kGammaTolPct});
      out.push_back({r.year + " nph pct", 100.0 * r.nph.value, g.nph_pct, kShareTolPct});
      // The published nph carries more digits than the one-decimal filing
      // items, so the gph map is checked on the published nph.
      out.push_back({r.year + " gph pct (published nph)",
                     100.0 * gph_from_nph(g.nph_pct / 100.0, tax), g.gph_pct, kShareTolPct});
      gphs.push_back(out.back().computed);
    }
    if (cfg.has("golden", "average_gph_pct") && !gphs.empty()) {
      out.push_back({"average gph pct", average_gph(gphs), cfg.number("golden", "average_gph_pct"),
                     kAverageGphTolPct});
    }
  }
  return out;
}

}  // namespace fdb
