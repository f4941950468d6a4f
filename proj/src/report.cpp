#include "fdb/report.hpp"

#include <cstdio>
#include <ostream>

#include "fdb/errors.hpp"

namespace fdb {

namespace {

using Row = std::vector<std::string>;

void write_table(std::ostream& out, const Row& header, const std::vector<Row>& rows, Format fmt) {
  auto line = [&](const Row& r) {
    if (fmt == Format::csv) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    } else {
      out << "|";
      for (const auto& c : r) out << ' ' << c << " |";
    }
    out << '\n';
  };
  line(header);
  if (fmt == Format::markdown) {
    out << "|";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? " ---: |" : " --- |");
    out << '\n';
  }
  for (const auto& r : rows) line(r);
}

std::string opt2(const std::optional<double>& x) { return x ? fixed2(*x) : ""; }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string est(const sim::Estimate& e) { return fixed2(e.mean) + " (" + sci(e.se) + ")"; }

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "md" || s == "markdown") return Format::markdown;
  throw DataError("format must be csv or md");
}

std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  const std::string out = buf;
  return out == "-0.00" ? "0.00" : out;
}

void write_base_table(std::ostream& out, const std::vector<BoundsReport>& reports, Format fmt) {
  const Row header{"year", "LP0", "SF0", "UG0",  "GB",    "FDB", "FDB_hat",
                   "LB",   "UB",  "eps", "delta", "II_hat", "COG_hat"};
  std::vector<Row> rows;
  for (const auto& r : reports) {
    rows.push_back({r.label, fixed2(r.lp0), fixed2(r.sf0), fixed2(r.ug0), fixed2(r.gb),
                    opt2(r.fdb_reported), fixed2(r.fdb_hat), fixed2(r.lb), fixed2(r.ub),
                    fixed2(r.epsilon), opt2(r.delta), fixed2(r.ii), fixed2(r.cog)});
  }
  write_table(out, header, rows, fmt);
}

void write_sensitivity_table(std::ostream& out, const std::string& year,
                             const std::vector<SensitivityRow>& rows, Format fmt) {
  const Row header{"scenario", "year",     "FDB_hat_pct", "LB_pct",  "UB_pct",
                   "eps_pct",  "delta_pct", "drel_FDB",   "drel_LB", "drel_UB"};
  std::vector<Row> body;
  for (const auto& s : rows) {
    const BoundsReport p = s.report.in_percent_of_mv0();
    body.push_back({s.scenario, year, fixed2(p.fdb_hat), fixed2(p.lb), fixed2(p.ub),
                    fixed2(p.epsilon), opt2(p.delta), fixed2(s.drel_fdb), fixed2(s.drel_lb),
                    fixed2(s.drel_ub)});
  }
  write_table(out, header, body, fmt);
}

void write_calibration_table(std::ostream& out, const std::vector<CalibrationRow>& rows,
                             double average_gph, Format fmt) {
  const Row header{"year", "gamma_pct", "nph_pct", "nph_capped", "gph_pct"};
  std::vector<Row> body;
  for (const auto& r : rows) {
    body.push_back({r.year, fixed2(100.0 * r.gamma), fixed2(100.0 * r.nph.value),
                    r.nph.capped ? "yes" : "no", fixed2(100.0 * r.gph)});
  }
  body.push_back({"average", "", "", "", fixed2(100.0 * average_gph)});
  write_table(out, header, body, fmt);
}

void write_simulation_summary(std::ostream& out, const SimulationSummary& s, Format fmt) {
  const auto& v = s.valuation;
  std::vector<Row> rows{
      {"FDB", est(v.fdb)},
      {"GB", est(v.gb)},
      {"BE", est(v.be)},
      {"VIF", est(v.vif)},
      {"TAX", est(v.tax)},
      {"COG", est(v.cog)},
      {"I", est(v.term_i)},
      {"II", est(v.term_ii)},
      {"III", est(v.term_iii)},
      {"B_T^-1 MV_T", est(v.terminal_mv)},
      {"max DB+SF evolution residual", sci(s.dbsf_residual)},
      {"max summation by parts residual", sci(s.ibp_residual)},
      {"worst martingale deviation in SE", fixed2(s.worst_martingale_ratio)},
      {"no-leakage residual", sci(s.no_leakage.mean) + " (" + sci(s.no_leakage.se) + ")"},
      {"representation residual",
       sci(s.representation.mean) + " (" + sci(s.representation.se) + ")"},
      {"profit share residual", sci(s.profit_share.mean) + " (" + sci(s.profit_share.se) + ")"},
      {"LB (no SF deduction)", fixed2(s.bracket.lb)},
      {"UB (no SF deduction)", fixed2(s.bracket.ub)},
      {"FDB inside bounds", s.bracket.inside ? "yes" : "no"},
      {"declaration shortfalls", std::to_string(s.bracket.declaration_shortfalls)},
      {"max LP run-off gap", sci(s.assumptions.max_lp_runoff_gap)},
      {"DB share above sigma_t from year", std::to_string(s.assumptions.db_share_exceeded_at)},
      {"max SF share gap", sci(s.assumptions.max_sf_share_gap)},
      {"terminal SF + LP + UG", sci(s.assumptions.terminal_balance)},
  };
  write_table(out, {"quantity", "value (se)"}, rows, fmt);
}

}  // namespace fdb
