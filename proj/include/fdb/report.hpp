#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fdb/almsim.hpp"
#include "fdb/bounds.hpp"
#include "fdb/run.hpp"
#include "fdb/sensitivity.hpp"

namespace fdb {

enum class Format { csv, markdown };

Format parse_format(const std::string& s);

/// Two decimals, fixed notation.
std::string fixed2(double x);

// One row per report: year, LP0, SF0, UG0, GB, FDB, FDB_hat, LB, UB, eps, delta, II, COG.
void write_base_table(std::ostream& out, const std::vector<BoundsReport>& reports, Format fmt);

// One row per scenario: FDB_hat, LB, UB, eps, delta in % of MV0, then the
// three changes in % of the reported FDB.
void write_sensitivity_table(std::ostream& out, const std::string& year,
                             const std::vector<SensitivityRow>& rows, Format fmt);

void write_calibration_table(std::ostream& out, const std::vector<CalibrationRow>& rows,
                             double average_gph, Format fmt);

struct SimulationSummary {
  sim::SimValuation valuation;
  double dbsf_residual = 0.0;
  double ibp_residual = 0.0;
  double worst_martingale_ratio = 0.0;  // max |mean - P| / SE over t with SE > 0
  sim::Estimate no_leakage, representation, profit_share;
  sim::BracketResult bracket;
  sim::AssumptionDiagnostics assumptions;
};

void write_simulation_summary(std::ostream& out, const SimulationSummary& s, Format fmt);

}  // namespace fdb
