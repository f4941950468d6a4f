// Command line front end: bounds tables, golden checks, simulator validation
// and parameter calibration from a single config file.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "fdb/almsim.hpp"
#include "fdb/errors.hpp"
#include "fdb/golden.hpp"
#include "fdb/report.hpp"
#include "fdb/run.hpp"

namespace {

enum Exit { kOk = 0, kDataError = 1, kInvariant = 2, kGoldenBreach = 3 };

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string seed;
  int paths = 0;
  bool no_art91 = false;
  std::string trajectories;
  int trajectory_paths = 10;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw fdb::DataError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

fdb::Config load(const Options& o) {
  fdb::Config cfg = fdb::Config::load(o.config);
  if (o.no_art91) cfg.set("estimation", "article91", "false");
  if (!o.seed.empty()) cfg.set("simulator", "seed", o.seed);
  if (o.paths > 0) cfg.set("simulator", "paths", std::to_string(o.paths));
  return cfg;
}

int cmd_run(const Options& o) {
  const fdb::Config cfg = load(o);
  const auto fmt = fdb::parse_format(o.format);
  const auto years = fdb::load_years(cfg);
  Output out(o.out);
  auto& os = out.stream();

  std::vector<fdb::BoundsReport> bn, pct;
  for (const auto& y : years) {
    bn.push_back(fdb::bounds_report(y.balance, y.params, y.curve, y.vols));
    pct.push_back(bn.back().in_percent_of_mv0());
  }
  os << (fmt == fdb::Format::markdown ? "## Base case, EUR bn\n\n" : "# base case, bn\n");
  fdb::write_base_table(os, bn, fmt);
  os << (fmt == fdb::Format::markdown ? "\n## Base case, % of MV0\n\n" : "# base case, pct of MV0\n");
  fdb::write_base_table(os, pct, fmt);

  const auto scenarios = fdb::load_scenarios(cfg);
  if (!scenarios.empty()) {
    for (const auto& y : years) {
      if (!y.balance.fdb_reported) continue;
      os << (fmt == fdb::Format::markdown ? "\n## Sensitivities " + y.year + "\n\n"
                                          : "# sensitivities " + y.year + "\n");
      fdb::write_sensitivity_table(
          os, y.year, fdb::sensitivity_grid(y.balance, y.params, y.curve, y.vols, scenarios), fmt);
    }
  }
  return kOk;
}

int cmd_check(const Options& o) {
  const fdb::Config cfg = load(o);
  Output out(o.out);
  auto& os = out.stream();
  int failures = 0;
  for (const auto& c : fdb::check_against_golden(cfg)) {
    const bool ok = c.pass();
    failures += ok ? 0 : 1;
    os << (ok ? "PASS " : "FAIL ") << c.item << ": computed " << fdb::fixed2(c.computed)
       << ", published " << fdb::fixed2(c.expected) << ", tolerance " << c.tolerance << '\n';
  }
  os << failures << " breach(es)\n";
  return failures ? kGoldenBreach : kOk;
}

int cmd_simulate(const Options& o) {
  const fdb::Config cfg = load(o);
  const auto fmt = fdb::parse_format(o.format);
  const auto setup = fdb::load_simulation(cfg);
  const auto ledger = fdb::sim::simulate_paths(setup.model, setup.ledger);

  fdb::SimulationSummary s;
  s.valuation = fdb::sim::value(ledger);
  s.dbsf_residual = fdb::sim::dbsf_residual(ledger);
  s.ibp_residual = fdb::sim::ibp_residual(ledger);
  bool martingale_ok = true;
  for (const auto& m : fdb::sim::martingale_check(ledger, setup.model.curve)) {
    const double dev = std::abs(m.discount.mean - m.target);
    if (m.discount.se > 1e-12) {
      s.worst_martingale_ratio = std::max(s.worst_martingale_ratio, dev / m.discount.se);
    }
    martingale_ok = martingale_ok && dev <= 3.0 * m.discount.se + 1e-12;
  }
  s.no_leakage = fdb::sim::no_leakage_residual(ledger);
  s.representation = fdb::sim::verify_representation(ledger);
  s.profit_share = fdb::sim::profit_share_residual(ledger);
  const auto bounds = fdb::sim::matching_bounds(setup.model, setup.ledger, s.valuation.gb.mean);
  s.bracket = fdb::sim::verify_bracketing(ledger, bounds);
  s.assumptions = fdb::sim::assumption_diagnostics(ledger, setup.ledger);

  Output out(o.out);
  fdb::write_simulation_summary(out.stream(), s, fmt);
  if (!o.trajectories.empty()) {
    std::ofstream traj(o.trajectories);
    if (!traj) throw fdb::DataError("cannot write " + o.trajectories);
    fdb::sim::write_trajectories(traj, ledger, o.trajectory_paths);
  }

  auto within = [](const fdb::sim::Estimate& e) { return std::abs(e.mean) <= 3.0 * e.se + 1e-9; };
  const bool identities = s.dbsf_residual <= 1e-10 && s.ibp_residual <= 1e-9 && martingale_ok &&
                          within(s.no_leakage) && within(s.representation) &&
                          (setup.ledger.sf_loss_absorption || within(s.profit_share));
  const bool conforming = s.bracket.declaration_shortfalls == 0;
  if (!identities) {
    std::cerr << "simulation identities violated\n";
    return kInvariant;
  }
  if (conforming && !s.bracket.inside) {
    std::cerr << "simulated FDB outside the bounds on a conforming configuration\n";
    return kInvariant;
  }
  if (!conforming) {
    std::cerr << "note: declaration rule falls short of nu ph* in "
              << s.bracket.declaration_shortfalls << " path-years; bounds need not hold\n";
  }
  return kOk;
}

int cmd_calibrate(const Options& o) {
  const fdb::Config cfg = load(o);
  const auto fmt = fdb::parse_format(o.format);
  const auto rows = fdb::run_calibration(cfg);
  std::vector<double> gphs;
  for (const auto& r : rows) {
    gphs.push_back(r.gph);
    if (r.nph.capped) std::cerr << "warning: nph for " << r.year << " capped at 1\n";
  }
  Output out(o.out);
  fdb::write_calibration_table(out.stream(), rows, fdb::average_gph(gphs), fmt);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on future discretionary benefits of with-profit life business"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("config", o.config, "Configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "md"}));
  };
  auto* run = app.add_subcommand("run", "Base-case bounds and sensitivity tables");
  common(run);
  run->add_flag("--no-art91", o.no_art91, "Keep SF0 inside the bounds");
  auto* check = app.add_subcommand("check", "Compare results with the published tables");
  common(check);
  check->add_flag("--no-art91", o.no_art91, "Keep SF0 inside the bounds");
  auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo ledger and its identity checks");
  common(simulate);
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--paths", o.paths, "Number of paths")->check(CLI::PositiveNumber);
  simulate->add_option("--trajectories", o.trajectories, "Dump per-path ledgers to this CSV");
  simulate->add_option("--trajectory-paths", o.trajectory_paths, "Paths in the dump");
  auto* calibrate = app.add_subcommand("calibrate", "gamma, nph and gph from market aggregates");
  common(calibrate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kDataError;
  }

  try {
    if (*run) return cmd_run(o);
    if (*check) return cmd_check(o);
    if (*simulate) return cmd_simulate(o);
    if (*calibrate) return cmd_calibrate(o);
  } catch (const fdb::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariant;
  } catch (const fdb::DataError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}
