#include "fdb/sensitivity.hpp"

#include <cmath>

#include "fdb/errors.hpp"
#include "text.hpp"

namespace fdb {

ScenarioTransform parse_transform(std::string_view text) {
  text = detail::trim(text);
  if (text == "base" || text == "identity") {
    return {"base", [](EstimationParams&, VolCurve&) {}};
  }
  const auto pos = text.find_first_of("*=");
  if (pos == std::string_view::npos) {
    throw DataError("scenario '" + std::string(text) + "' must look like name*factor or name=value");
  }
  const std::string name(detail::trim(text.substr(0, pos)));
  const bool scale = text[pos] == '*';
  const std::string raw(detail::trim(text.substr(pos + 1)));
  double v = 0.0;
  if (!detail::parse_double(raw, v) || !std::isfinite(v)) {
    throw DataError("scenario '" + std::string(text) + "' has a non-numeric argument");
  }
  const std::string label = name + (scale ? "_x" : "_") + raw;

  if (scale) {
    if (name == "iv") return {label, [v](EstimationParams&, VolCurve& vols) { vols = vols.scaled(v); }};
    if (name == "rho") return {label, [v](EstimationParams& p, VolCurve&) { p.rho *= v; }};
    if (name == "gamma") return {label, [v](EstimationParams& p, VolCurve&) { p.gamma *= v; }};
    if (name == "theta") return {label, [v](EstimationParams& p, VolCurve&) { p.theta *= v; }};
    if (name == "sigma") return {label, [v](EstimationParams& p, VolCurve&) { p.runoff.sigma *= v; }};
    if (name == "nu") return {label, [v](EstimationParams& p, VolCurve&) { p.nu *= v; }};
    if (name == "gph") return {label, [v](EstimationParams& p, VolCurve&) { p.gph *= v; }};
  } else {
    if (name == "d") return {label, [v](EstimationParams& p, VolCurve&) { p.runoff.d = v; }};
    if (name == "h") return {label, [v](EstimationParams& p, VolCurve&) { p.runoff.h = v; }};
    if (name == "gph") return {label, [v](EstimationParams& p, VolCurve&) { p.gph = v; }};
    if (name == "cv") {
      return {label, [v](EstimationParams& p, VolCurve&) { p.cv = CvProduct::constant(v, p.T()); }};
    }
    if (name == "T") {
      if (v != std::floor(v)) throw DataError("scenario T must be an integer");
      return {label, [v](EstimationParams& p, VolCurve&) { p.set_horizon(static_cast<int>(v)); }};
    }
  }
  throw DataError("unknown scenario parameter '" + name + "'");
}

std::vector<SensitivityRow> sensitivity_grid(const BalanceSheet& bs, const EstimationParams& p,
                                             const DiscountCurve& curve, const VolCurve& vols,
                                             const std::vector<ScenarioTransform>& scenarios) {
  if (!bs.fdb_reported || !(*bs.fdb_reported != 0.0)) {
    throw DataError(bs.label + ": sensitivities need a non-zero reported FDB");
  }
  const BoundsReport base = bounds_report(bs, p, curve, vols);
  const double unit = 100.0 / *bs.fdb_reported;

  std::vector<SensitivityRow> rows;
  rows.reserve(scenarios.size());
  for (const auto& sc : scenarios) {
    EstimationParams q = p;
    VolCurve v = vols;
    sc.apply(q, v);
    SensitivityRow row{sc.label, bounds_report(bs, q, curve, v)};
    row.drel_fdb = unit * (row.report.fdb_hat - base.fdb_hat);
    row.drel_lb = unit * (row.report.lb - base.lb);
    row.drel_ub = unit * (row.report.ub - base.ub);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fdb
