#include "fdb/run.hpp"

#include <fstream>

#include "fdb/errors.hpp"
#include "text.hpp"

namespace fdb {

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& file,
                                               std::vector<std::string>& header) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  header.clear();
  while (std::getline(in, line)) {
    auto s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    std::vector<std::string> cells;
    for (auto c : detail::split(s, ',')) cells.emplace_back(c);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) throw DataError(file.string() + ": ragged row");
    rows.push_back(std::move(cells));
  }
  return rows;
}

double cell_number(const std::string& s, const std::filesystem::path& file) {
  double v = 0.0;
  if (!detail::parse_double(s, v)) throw DataError(file.string() + ": bad number '" + s + "'");
  return v;
}

BlackForward parse_black_forward(const std::string& s) {
  if (s == "simple") return BlackForward::simple;
  if (s == "difference") return BlackForward::difference;
  throw DataError("black_forward must be 'simple' or 'difference'");
}

RunoffParams load_runoff(const Config& cfg, const std::string& sec) {
  RunoffParams r;
  r.allow_fractional = cfg.boolean(sec, "fractional_runoff", false);
  r.h = cfg.number(sec, "h");
  r.d = cfg.number(sec, "d");
  r.T = cfg.integer(sec, "T");
  r.sigma = cfg.number(sec, "sigma");
  r.validate();
  return r;
}

// A single value, or a list for years 1, 2, ... whose last entry extends to T.
Eigen::ArrayXd rate_sequence(const Config& cfg, const std::string& sec, const std::string& key,
                             int T) {
  const auto items = cfg.list(sec, key);
  if (items.empty()) throw DataError("[" + sec + "] " + key + " is empty");
  if (static_cast<int>(items.size()) > T) {
    throw DataError("[" + sec + "] " + key + " lists more years than the horizon");
  }
  std::vector<double> v;
  for (const auto& it : items) {
    double x = 0.0;
    if (!detail::parse_double(it, x)) throw DataError("[" + sec + "] " + key + " is not numeric");
    v.push_back(x);
  }
  Eigen::ArrayXd out = constant_rate(v.back(), T);
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i) + 1] = v[i];
  out[0] = v.front();
  return out;
}

}  // namespace

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("seed must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

YearInputs load_year(const Config& cfg, const std::string& year) {
  const std::string ys = "year." + year;
  const std::string es = "estimation";

  BalanceSheet bs;
  bs.label = year;
  bs.lp0 = cfg.number(ys, "lp0");
  bs.sf0 = cfg.number(ys, "sf0");
  bs.ug0 = cfg.number(ys, "ug0");
  bs.gb = cfg.number(ys, "gb");
  if (cfg.has(ys, "fdb_reported")) bs.fdb_reported = cfg.number(ys, "fdb_reported");
  bs.validate();

  EstimationParams p;
  p.runoff = load_runoff(cfg, es);
  p.gph = cfg.number(es, "gph");
  p.nu = cfg.number(es, "nu");
  const bool theta_auto = !cfg.has(es, "theta") || cfg.text(es, "theta") == "auto";
  p.theta = theta_auto ? bs.sf0 / bs.lp0 : cfg.number(es, "theta");
  p.rho = rate_sequence(cfg, ys, "rho", p.T());
  p.gamma = rate_sequence(cfg, ys, "gamma", p.T());
  p.cv = CvProduct::constant(cfg.number_or(es, "cv_product", 0.0), p.T());
  p.article91 = cfg.boolean(es, "article91", true);
  p.black_forward = parse_black_forward(cfg.has(es, "black_forward") ? cfg.text(es, "black_forward")
                                                                     : "simple");

  DiscountCurve curve = load_curve(cfg.path(ys, "curve"));
  VolCurve vols = load_vol_curve(cfg.path(es, "iv_file"));
  p.validate(curve);
  return {year, bs, p, std::move(curve), std::move(vols)};
}

std::vector<YearInputs> load_years(const Config& cfg) {
  std::vector<YearInputs> out;
  for (const auto& y : cfg.list("run", "years")) out.push_back(load_year(cfg, y));
  if (out.empty()) throw DataError("[run] years is empty");
  return out;
}

std::vector<ScenarioTransform> load_scenarios(const Config& cfg) {
  std::vector<ScenarioTransform> out;
  if (!cfg.has("sensitivity", "scenarios")) return out;
  for (const auto& s : cfg.list("sensitivity", "scenarios")) out.push_back(parse_transform(s));
  return out;
}

std::vector<CalibrationRow> run_calibration(const Config& cfg) {
  const TaxContext tax{cfg.number("calibration", "tax_rate")};
  std::vector<CalibrationRow> out;
  for (const auto& y : cfg.list("run", "years")) {
    const std::string sec = "calibration." + y;
    MarketAggregates agg{cfg.number(sec, "a"), cfg.number(sec, "b"), cfg.number(sec, "c"),
                         cfg.number(sec, "d"), cfg.number(sec, "e"), cfg.number(sec, "f")};
    ParticipationItems items{cfg.number(sec, "pa"), cfg.number(sec, "pb"), cfg.number(sec, "pc")};
    CalibrationRow row{y, gamma_from_market(agg), nph(items), 0.0};
    row.gph = gph_from_nph(row.nph.value, tax);
    out.push_back(row);
  }
  return out;
}

SimulationSetup load_simulation(const Config& cfg) {
  const std::string ss = "simulator";
  const YearInputs y = load_year(cfg, cfg.text(ss, "year"));
  SimulationSetup s;
  s.model.curve = y.curve;
  s.model.vol = cfg.number(ss, "vol");
  s.model.seed = parse_seed(cfg.text(ss, "seed"));
  s.model.paths = cfg.integer(ss, "paths");

  auto& L = s.ledger;
  L.lp0 = y.balance.lp0;
  L.sf0 = y.balance.sf0;
  L.ug0 = y.balance.ug0;
  L.gph = y.params.gph;
  L.tax_rate = cfg.number(ss, "tax_rate");
  L.nu = y.params.nu;
  L.theta = y.params.theta;
  L.runoff = y.params.runoff;
  L.rho = y.params.rho;
  L.gamma = y.params.gamma;
  const std::string decl = cfg.has(ss, "declaration") ? cfg.text(ss, "declaration")
                                                      : "target_surplus_fund";
  if (decl == "target_surplus_fund") {
    L.declaration = sim::Declaration::target_surplus_fund;
  } else if (decl == "no_direct_declaration") {
    L.declaration = sim::Declaration::no_direct_declaration;
  } else {
    throw DataError("unknown declaration rule '" + decl + "'");
  }
  L.sf_loss_absorption = cfg.boolean(ss, "sf_loss_absorption", false);
  L.terminal_settlement = cfg.boolean(ss, "terminal_settlement", true);
  L.validate(s.model.curve);
  return s;
}

std::map<std::string, GoldenBaseRow> load_golden_base(const std::filesystem::path& file) {
  std::vector<std::string> header;
  const auto rows = read_csv(file, header);
  std::map<std::string, GoldenBaseRow> out;
  for (const auto& r : rows) {
    auto& target = r[0] == "bn" ? out[r[1]].bn : out[r[1]].pct;
    for (std::size_t i = 2; i < r.size(); ++i) {
      if (!r[i].empty()) target[header[i]] = cell_number(r[i], file);
    }
  }
  return out;
}

std::map<std::pair<std::string, std::string>, GoldenSensitivity> load_golden_sensitivities(
    const std::filesystem::path& file) {
  std::vector<std::string> header;
  const auto rows = read_csv(file, header);
  std::map<std::pair<std::string, std::string>, GoldenSensitivity> out;
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw DataError(file.string() + ": missing column " + name);
  };
  const auto f = col("drel_fdb"), l = col("drel_lb"), u = col("drel_ub");
  for (const auto& r : rows) {
    out[{r[0], r[1]}] = {cell_number(r[f], file), cell_number(r[l], file),
                         cell_number(r[u], file)};
  }
  return out;
}

std::map<std::string, GoldenCalibration> load_golden_calibration(
    const std::filesystem::path& file) {
  std::vector<std::string> header;
  const auto rows = read_csv(file, header);
  std::map<std::string, GoldenCalibration> out;
  for (const auto& r : rows) {
    out[r[0]] = {cell_number(r[1], file), cell_number(r[2], file), cell_number(r[3], file)};
  }
  return out;
}

}  // namespace fdb
