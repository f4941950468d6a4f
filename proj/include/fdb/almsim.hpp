#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "fdb/bounds.hpp"
#include "fdb/curves.hpp"
#include "fdb/runoff.hpp"

namespace fdb::sim {

// One-factor normal model for the one-year rate F_t, t = 0..T-1.
// F_0 is read off the curve; later rates are a per-year drift plus vol times a
// Gaussian random walk. The drift of each year is solved on the simulated
// sample so that the mean of B_t^{-1} reproduces P(0,t).
struct RateModel {
  DiscountCurve curve = DiscountCurve::from_maturities(Eigen::VectorXd::Ones(1));
  double vol = 0.005;
  std::uint64_t seed = 1;
  int paths = 10000;
};

enum class Declaration {
  target_surplus_fund,    // declare nu ph* and release SF towards theta LP
  no_direct_declaration,  // nu_t = 0: only surplus fund releases are declared
};

struct LedgerConfig {
  double lp0 = 0.0, sf0 = 0.0, ug0 = 0.0;
  double gph = 0.755;
  double tax_rate = 0.299;  // splits 1 - gph between tax and shareholders
  double nu = 0.75;
  double theta = 0.0;
  RunoffParams runoff;
  Eigen::ArrayXd rho;    // 0..T
  Eigen::ArrayXd gamma;  // 0..T
  Declaration declaration = Declaration::target_surplus_fund;
  bool sf_loss_absorption = false;  // exploratory only; breaks the profit sharing identity
  // At T pay out SF and all declared bonuses and realize the remaining UG,
  // so that SF_T = LP_T = UG_T = 0 on every path.
  bool terminal_settlement = true;

  void validate(const DiscountCurve& curve) const;
};

// Aggregate ledger, one row per path and one column per year 0..T.
// Stocks are end-of-year values; flows in column t belong to the year (t-1, t].
struct Ledger {
  int paths = 0;
  int T = 0;
  double lp0 = 0.0, sf0 = 0.0, ug0 = 0.0, gph = 0.0, nu = 0.0;
  Eigen::ArrayXd drift;  // solved drift per year, entry t applies to F_t

  Eigen::ArrayXXd F;     // F_t, known at t
  Eigen::ArrayXXd Binv;  // 1 / B_t
  Eigen::ArrayXXd BV, UG, MV, V, DBle0, DB, SF, LP;
  Eigen::ArrayXXd roa, gs, ph_star, ph, sg_star, sh, tax;
  Eigen::ArrayXXd guaranteed;  // gbf + co - pr on the mathematical reserve
  Eigen::ArrayXXd gbf_le0;     // benefits paid from bonuses declared before valuation
  Eigen::ArrayXXd decl;        // eta SF_{t-1} + nu_t ph*
  Eigen::ArrayXXd direct;      // nu_t ph*, the part declared straight from the year's surplus
  Eigen::ArrayXXd absorbed;    // losses charged to SF under loss absorption
};

Ledger simulate_paths(const RateModel& model, const LedgerConfig& config);

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

/// Sample mean and standard error of a per-path quantity.
Estimate estimate(const Eigen::Ref<const Eigen::ArrayXd>& samples);

struct SimValuation {
  Estimate fdb, gb, be, vif, tax, cog, ph_star;
  Estimate term_i, term_ii, term_iii;
  Estimate terminal_mv;  // B_T^{-1} MV_T
};

SimValuation value(const Ledger& ledger);

// Per-path values behind `value`, useful for residuals.
struct PathValues {
  Eigen::ArrayXd fdb, gb, vif, tax, cog, ph_star, term_i, term_ii, term_iii, terminal_mv;
};
PathValues path_values(const Ledger& ledger);

/// Largest path-wise deviation from the DB + SF evolution equation.
double dbsf_residual(const Ledger& ledger);
/// Largest path-wise deviation from the summation-by-parts identity for DB + SF.
double ibp_residual(const Ledger& ledger);

struct MartingalePoint {
  int t;
  Estimate discount;  // mean of B_t^{-1}
  double target;      // P(0,t)
};
std::vector<MartingalePoint> martingale_check(const Ledger& ledger, const DiscountCurve& curve);

/// MV0 - (BE + VIF + TAX + E[B_T^{-1} MV_T]).
Estimate no_leakage_residual(const Ledger& ledger);
/// FDB - (SF0 + gph (LP0 + UG0 - GB) + gph COG - I - II - III).
Estimate verify_representation(const Ledger& ledger);
/// PH* - gph (VIF + PH* + TAX) - gph COG.
Estimate profit_share_residual(const Ledger& ledger);

/// Bounds computed with the same inputs the simulator used. The vol curve
/// matches the variance of F_{s-1}, which is fixed one year before payment.
BoundsReport matching_bounds(const RateModel& model, const LedgerConfig& config, double gb);

struct BracketResult {
  Estimate fdb;
  double lb = 0.0, ub = 0.0;
  bool inside = false;         // lb - 3 se <= fdb <= ub + 3 se
  long declaration_shortfalls = 0;  // (path, year) pairs with direct declaration below nu ph*
};
BracketResult verify_bracketing(const Ledger& ledger, const BoundsReport& bounds);

// How closely a simulated ledger follows the modelling assumptions behind the bounds.
struct AssumptionDiagnostics {
  double max_lp_runoff_gap = 0.0;  // max_t |E[LP_t] / (l_t LP0) - 1| for t < T
  int db_share_exceeded_at = -1;   // first t with E[DB_t] > sigma_t E[LP_t], -1 if none
  double max_sf_share_gap = 0.0;   // max_t |E[SF_t] / E[LP_t] - theta| for t < T
  long declaration_shortfalls = 0;
  double terminal_balance = 0.0;   // max over paths of |SF_T| + |LP_T| + |UG_T|
};
AssumptionDiagnostics assumption_diagnostics(const Ledger& ledger, const LedgerConfig& config);

/// E[B_s^{-1} (F_{s-1} - k)^+] on the simulated paths.
Estimate discounted_caplet(const Ledger& ledger, int s, double strike);

/// CSV dump of the first `max_paths` paths.
void write_trajectories(std::ostream& out, const Ledger& ledger, int max_paths);

}  // namespace fdb::sim
