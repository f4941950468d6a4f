#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fdb/bounds.hpp"

namespace fdb {

// A named perturbation of the estimation inputs.
struct ScenarioTransform {
  std::string label;
  std::function<void(EstimationParams&, VolCurve&)> apply;
};

// Parses "<param>*<factor>" or "<param>=<value>". Scalable parameters:
// iv, rho, gamma, theta, sigma, nu, gph. Settable: d, h, T, cv, gph.
// "base" is the identity. Labels use "x" for scaling, e.g. "iv_x0.5", "d_10".
ScenarioTransform parse_transform(std::string_view text);

struct SensitivityRow {
  std::string scenario;
  BoundsReport report;
  // Changes against the unperturbed run, in percent of the reported FDB.
  double drel_fdb = 0.0, drel_lb = 0.0, drel_ub = 0.0;
};

/// Runs each scenario in the given order. Needs bs.fdb_reported.
std::vector<SensitivityRow> sensitivity_grid(const BalanceSheet& bs, const EstimationParams& p,
                                             const DiscountCurve& curve, const VolCurve& vols,
                                             const std::vector<ScenarioTransform>& scenarios);

}  // namespace fdb
