#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fdb/almsim.hpp"
#include "fdb/bounds.hpp"
#include "fdb/calibration.hpp"
#include "fdb/config.hpp"
#include "fdb/sensitivity.hpp"

namespace fdb {

// Everything needed to value one reporting date.
struct YearInputs {
  std::string year;
  BalanceSheet balance;
  EstimationParams params;
  DiscountCurve curve;
  VolCurve vols;
};

YearInputs load_year(const Config& cfg, const std::string& year);
std::vector<YearInputs> load_years(const Config& cfg);
std::vector<ScenarioTransform> load_scenarios(const Config& cfg);

struct CalibrationRow {
  std::string year;
  double gamma = 0.0;
  NphEstimate nph;
  double gph = 0.0;
};
std::vector<CalibrationRow> run_calibration(const Config& cfg);

struct SimulationSetup {
  sim::RateModel model;
  sim::LedgerConfig ledger;
};
SimulationSetup load_simulation(const Config& cfg);
std::uint64_t parse_seed(const std::string& text);

// Published tables bundled with the data.
struct GoldenBaseRow {
  std::map<std::string, double> bn;   // keys: fdb_hat, lb, ub, eps, delta, ii, cog
  std::map<std::string, double> pct;  // same keys plus lp0, sf0, ug0, gb, fdb
};
std::map<std::string, GoldenBaseRow> load_golden_base(const std::filesystem::path& file);

struct GoldenSensitivity {
  double drel_fdb = 0.0, drel_lb = 0.0, drel_ub = 0.0;
};
// Keyed by (scenario label, year).
std::map<std::pair<std::string, std::string>, GoldenSensitivity> load_golden_sensitivities(
    const std::filesystem::path& file);

struct GoldenCalibration {
  double gamma_pct = 0.0, nph_pct = 0.0, gph_pct = 0.0;
};
std::map<std::string, GoldenCalibration> load_golden_calibration(const std::filesystem::path& file);

}  // namespace fdb
