#include "fdb/almsim.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "fdb/errors.hpp"

namespace fdb::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Standard normal shocks, one row per path. Row p depends only on (seed, p).
Eigen::ArrayXXd draw_shocks(std::uint64_t seed, int paths, int T) {
  Eigen::ArrayXXd z = Eigen::ArrayXXd::Zero(paths, T + 1);
  for (int p = 0; p < paths; ++p) {
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(p))));
    std::normal_distribution<double> normal;
    for (int t = 1; t < T; ++t) z(p, t) = normal(gen);
  }
  return z;
}

// Finds a with mean(w / (1 + a + x)) = target by Newton's method.
double solve_drift(const Eigen::ArrayXd& w, const Eigen::ArrayXd& x, double target, double guess) {
  double a = guess;
  for (int it = 0; it < 100; ++it) {
    const Eigen::ArrayXd gross = 1.0 + a + x;
    if ((gross <= 1e-6).any()) {
      throw InvariantError("simulated gross rate 1 + F_t is not positive; rate vol too high");
    }
    const double f = (w / gross).mean() - target;
    const double df = -(w / gross.square()).mean();
    const double step = f / df;
    a -= step;
    if (std::abs(step) < 1e-15) return a;
  }
  throw InvariantError("drift calibration did not converge");
}

Eigen::ArrayXd row_sum(const Eigen::ArrayXXd& flows, int from, int to) {
  return flows.middleCols(from, to - from + 1).rowwise().sum();
}

}  // namespace

void LedgerConfig::validate(const DiscountCurve& curve) const {
  runoff.validate();
  const int T = runoff.T;
  if (T > curve.horizon()) throw DataError("simulation horizon exceeds curve horizon");
  if (rho.size() != T + 1 || gamma.size() != T + 1) {
    throw DataError("rho and gamma need one entry per year 0..T");
  }
  if (!(lp0 > 0.0) || sf0 < 0.0) throw DataError("simulation needs LP0 > 0 and SF0 >= 0");
  if (!(gph > 0.0 && gph < 1.0)) throw DataError("gph must lie in (0,1)");
  if (!(nu >= 0.0 && nu <= 1.0)) throw DataError("nu must lie in [0,1]");
  if (!(tax_rate >= 0.0 && tax_rate < 1.0)) throw DataError("tax rate must lie in [0,1)");
  if (!(theta >= 0.0)) throw DataError("theta must be non-negative");
}

Ledger simulate_paths(const RateModel& model, const LedgerConfig& c) {
  c.validate(model.curve);
  if (model.paths < 1) throw DataError("simulation needs at least one path");
  if (model.paths == 1 && model.vol != 0.0) throw DataError("a single path needs zero rate vol");
  if (!(model.vol >= 0.0)) throw DataError("rate vol must be non-negative");

  const int n = model.paths;
  const int T = c.runoff.T;
  const auto& P = model.curve;

  Ledger L;
  L.paths = n;
  L.T = T;
  L.lp0 = c.lp0;
  L.sf0 = c.sf0;
  L.ug0 = c.ug0;
  L.gph = c.gph;
  L.nu = c.nu;
  L.drift = Eigen::ArrayXd::Zero(T + 1);
  for (auto* a : {&L.F, &L.Binv, &L.BV, &L.UG, &L.MV, &L.V, &L.DBle0, &L.DB, &L.SF, &L.LP,
                  &L.roa, &L.gs, &L.ph_star, &L.ph, &L.sg_star, &L.sh, &L.tax, &L.guaranteed,
                  &L.gbf_le0, &L.decl, &L.direct, &L.absorbed}) {
    a->setZero(n, T + 1);
  }

  const Eigen::ArrayXd lh = l_profile(c.runoff, Basis::liabilities);
  const Eigen::ArrayXd ld = l_profile(c.runoff, Basis::unrealized_gains);
  // Guaranteed reserves run off deterministically; bonuses declared before
  // valuation fade out over the first h years as new declarations take over.
  Eigen::ArrayXd v(T + 1), dle0(T + 1);
  for (int t = 0; t <= T; ++t) {
    v[t] = (1.0 - c.runoff.sigma) * lh[t] * c.lp0;
    dle0[t] = c.runoff.sigma * lh[t] * c.lp0 * std::max(1.0 - t / c.runoff.h, 0.0);
  }
  const double gsh = (1.0 - c.gph) * (1.0 - c.tax_rate);
  const double gtax = (1.0 - c.gph) * c.tax_rate;
  const double nu_t = c.declaration == Declaration::target_surplus_fund ? c.nu : 0.0;

  L.Binv.col(0).setOnes();
  L.BV.col(0).setConstant(c.lp0 + c.sf0);
  L.UG.col(0).setConstant(c.ug0);
  L.MV.col(0).setConstant(c.lp0 + c.sf0 + c.ug0);
  L.V.col(0).setConstant(v[0]);
  L.DBle0.col(0).setConstant(dle0[0]);
  L.SF.col(0).setConstant(c.sf0);
  L.LP.col(0).setConstant(c.lp0);

  const Eigen::ArrayXXd z = draw_shocks(model.seed, n, T);
  Eigen::ArrayXd walk = Eigen::ArrayXd::Zero(n);
  L.drift[0] = forward_simple(P, 1);
  L.F.col(0).setConstant(L.drift[0]);

  for (int t = 1; t <= T; ++t) {
    const Eigen::ArrayXd f_prev = L.F.col(t - 1);
    L.Binv.col(t) = L.Binv.col(t - 1) / (1.0 + f_prev);

    // Book return: forward yield on book value plus the planned UG realization.
    // With terminal settlement whatever UG is left is realized at T.
    const bool settle = c.terminal_settlement && t == T;
    const Eigen::ArrayXd ug_cash =
        settle ? Eigen::ArrayXd((1.0 + f_prev) * L.UG.col(t - 1))
               : Eigen::ArrayXd::Constant(n, (ld[t - 1] - ld[t]) * c.ug0 / P(t));
    L.roa.col(t) = f_prev * L.BV.col(t - 1) + ug_cash;
    L.UG.col(t) = (1.0 + f_prev) * L.UG.col(t - 1) - ug_cash;

    const Eigen::ArrayXd gs =
        L.roa.col(t) - c.rho[t] * v[t - 1] + c.gamma[t] * L.LP.col(t - 1);
    const Eigen::ArrayXd gs_pos = gs.max(0.0);
    const Eigen::ArrayXd gs_neg = (-gs).max(0.0);
    L.gs.col(t) = gs;
    L.ph_star.col(t) = c.gph * gs_pos;
    L.tax.col(t) = gtax * gs_pos;
    Eigen::ArrayXd sh = gsh * gs_pos - gs_neg;

    // Every declaration vintage leaves DB at the same rate 1 - l_t/l_{t-1}.
    const double leave = 1.0 - lh[t] / lh[t - 1];
    const Eigen::ArrayXd paid = leave * L.DB.col(t - 1);
    L.sg_star.col(t) = std::min(c.gamma[t], leave) * L.DB.col(t - 1);
    L.ph.col(t) = paid - L.sg_star.col(t);
    const Eigen::ArrayXd db_minus = L.DB.col(t - 1) - paid;

    L.guaranteed.col(t).setConstant((1.0 + c.rho[t] - c.gamma[t]) * v[t - 1] - v[t]);
    L.gbf_le0.col(t).setConstant((1.0 - c.gamma[t]) * dle0[t - 1] - dle0[t]);

    // Release from SF so that SF_t lands on theta LP_t where possible.
    const Eigen::ArrayXd sf_prev = L.SF.col(t - 1);
    const Eigen::ArrayXd avail = sf_prev + (1.0 - nu_t) * L.ph_star.col(t);
    const Eigen::ArrayXd lp_rest = v[t] + dle0[t] + db_minus + nu_t * L.ph_star.col(t);
    const Eigen::ArrayXd release =
        settle ? avail
               : Eigen::ArrayXd(((avail - c.theta * lp_rest) / (1.0 + c.theta)).max(0.0).min(sf_prev));
    L.direct.col(t) = nu_t * L.ph_star.col(t);
    L.decl.col(t) = L.direct.col(t) + release;
    Eigen::ArrayXd sf = avail - release;
    if (c.sf_loss_absorption) {
      L.absorbed.col(t) = gs_neg.min(sf);
      sf -= L.absorbed.col(t);
      sh += L.absorbed.col(t);
    }
    L.sh.col(t) = sh;
    L.SF.col(t) = sf;
    L.DB.col(t) = db_minus + L.decl.col(t);
    if (settle) {
      L.ph.col(t) += L.DB.col(t);
      L.DB.col(t).setZero();
    }
    for (const auto& [name, col] : {std::pair{"SF", &L.SF}, std::pair{"DB", &L.DB}}) {
      Eigen::Index path = 0;
      if (col->col(t).minCoeff(&path) < -1e-12) {
        std::ostringstream msg;
        msg << name << " turned negative on path " << path << " at t=" << t;
        throw InvariantError(msg.str());
      }
    }
    L.V.col(t).setConstant(v[t]);
    L.DBle0.col(t).setConstant(dle0[t]);
    L.LP.col(t) = v[t] + dle0[t] + L.DB.col(t);

    const Eigen::ArrayXd out =
        L.guaranteed.col(t) + L.gbf_le0.col(t) + L.ph.col(t) + L.sh.col(t) + L.tax.col(t);
    L.BV.col(t) = L.BV.col(t - 1) + L.roa.col(t) - out;
    L.MV.col(t) = L.BV.col(t) + L.UG.col(t);

    const double gap = (L.BV.col(t) - L.LP.col(t) - L.SF.col(t)).abs().maxCoeff();
    if (gap > 1e-9 * (1.0 + L.BV.col(t).abs().maxCoeff())) {
      std::ostringstream msg;
      msg << "book value drifted from LP + SF by " << gap << " at t=" << t;
      throw InvariantError(msg.str());
    }

    if (t < T) {
      walk += model.vol * z.col(t);
      L.drift[t] = solve_drift(L.Binv.col(t), walk, P(t + 1), P(t) / P(t + 1) - 1.0);
      L.F.col(t) = L.drift[t] + walk;
    }
  }
  return L;
}

Estimate estimate(const Eigen::Ref<const Eigen::ArrayXd>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = x.mean();
  const double var = x.size() > 1 ? (x - mean).square().sum() / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

PathValues path_values(const Ledger& L) {
  const int T = L.T;
  auto pv = [&](const Eigen::ArrayXXd& flow) {
    return row_sum(L.Binv.rightCols(T) * flow.rightCols(T), 0, T - 1);
  };
  PathValues v;
  v.fdb = pv(L.ph);
  v.gb = pv(L.guaranteed + L.gbf_le0);
  v.vif = pv(L.sh);
  v.tax = pv(L.tax);
  v.cog = pv((-L.gs).max(0.0));
  v.ph_star = pv(L.ph_star);
  const Eigen::ArrayXd binv_T = L.Binv.col(T);
  v.term_i = binv_T * (L.DB.col(T) + L.SF.col(T) +
                       L.gph * (L.UG.col(T) + L.V.col(T) + L.DBle0.col(T)));
  v.term_ii = (1.0 - L.gph) * row_sum(L.Binv * L.sg_star, 2, T);
  v.term_iii = (1.0 - L.gph) *
               row_sum(L.F.leftCols(T) * L.Binv.rightCols(T) *
                           (L.DB.leftCols(T) + L.SF.leftCols(T)), 0, T - 1);
  v.terminal_mv = binv_T * L.MV.col(T);
  return v;
}

SimValuation value(const Ledger& L) {
  const PathValues v = path_values(L);
  SimValuation r;
  r.fdb = estimate(v.fdb);
  r.gb = estimate(v.gb);
  r.be = estimate(v.gb + v.fdb);
  r.vif = estimate(v.vif);
  r.tax = estimate(v.tax);
  r.cog = estimate(v.cog);
  r.ph_star = estimate(v.ph_star);
  r.term_i = estimate(v.term_i);
  r.term_ii = estimate(v.term_ii);
  r.term_iii = estimate(v.term_iii);
  r.terminal_mv = estimate(v.terminal_mv);
  return r;
}

double dbsf_residual(const Ledger& L) {
  const int T = L.T;
  const Eigen::ArrayXXd stock = L.DB + L.SF;
  const Eigen::ArrayXXd change = stock.rightCols(T) - stock.leftCols(T);
  const Eigen::ArrayXXd flows = L.ph_star - L.ph - L.sg_star - L.absorbed;
  return (change - flows.rightCols(T)).abs().maxCoeff();
}

double ibp_residual(const Ledger& L) {
  const int T = L.T;
  const Eigen::ArrayXXd stock = L.DB + L.SF;
  const Eigen::ArrayXd lhs =
      row_sum(L.Binv.rightCols(T) * (stock.rightCols(T) - stock.leftCols(T)), 0, T - 1);
  const Eigen::ArrayXd rhs =
      L.Binv.col(T) * stock.col(T) - stock.col(0) +
      row_sum(stock.leftCols(T) * L.F.leftCols(T) * L.Binv.rightCols(T), 0, T - 1);
  return (lhs - rhs).abs().maxCoeff();
}

std::vector<MartingalePoint> martingale_check(const Ledger& L, const DiscountCurve& curve) {
  std::vector<MartingalePoint> out;
  for (int t = 0; t <= L.T; ++t) out.push_back({t, estimate(L.Binv.col(t)), curve(t)});
  return out;
}

Estimate no_leakage_residual(const Ledger& L) {
  const PathValues v = path_values(L);
  const double mv0 = L.lp0 + L.sf0 + L.ug0;
  return estimate(mv0 - (v.gb + v.fdb + v.vif + v.tax + v.terminal_mv));
}

Estimate verify_representation(const Ledger& L) {
  const PathValues v = path_values(L);
  const Eigen::ArrayXd rep = L.sf0 + L.gph * (L.lp0 + L.ug0 - v.gb) + L.gph * v.cog - v.term_i -
                             v.term_ii - v.term_iii;
  return estimate(v.fdb - rep);
}

Estimate profit_share_residual(const Ledger& L) {
  const PathValues v = path_values(L);
  return estimate(v.ph_star - L.gph * (v.vif + v.ph_star + v.tax) - L.gph * v.cog);
}

BoundsReport matching_bounds(const RateModel& model, const LedgerConfig& c, double gb) {
  const int T = c.runoff.T;
  BalanceSheet bs{"simulated", c.lp0, c.sf0, c.ug0, gb, std::nullopt};
  EstimationParams p;
  p.gph = c.gph;
  p.theta = c.theta;
  p.nu = c.nu;
  p.runoff = c.runoff;
  p.rho = c.rho;
  p.gamma = c.gamma;
  p.cv = CvProduct::constant(0.0, T);
  p.article91 = false;
  p.black_forward = BlackForward::simple;
  std::vector<VolPillar> pillars;
  for (int t = 1; t <= T; ++t) {
    pillars.push_back({static_cast<double>(t), model.vol * std::sqrt((t - 1.0) / t)});
  }
  return bounds_report(bs, p, model.curve, VolCurve(std::move(pillars)));
}

BracketResult verify_bracketing(const Ledger& L, const BoundsReport& b) {
  BracketResult r;
  r.fdb = estimate(path_values(L).fdb);
  r.lb = b.lb_raw;
  r.ub = b.ub_raw;
  r.inside = r.lb - 3.0 * r.fdb.se <= r.fdb.mean && r.fdb.mean <= r.ub + 3.0 * r.fdb.se;
  const Eigen::ArrayXXd shortfall = L.nu * L.ph_star - L.direct;
  r.declaration_shortfalls = (shortfall > 1e-12 * (1.0 + L.ph_star.abs())).count();
  return r;
}

AssumptionDiagnostics assumption_diagnostics(const Ledger& L, const LedgerConfig& c) {
  AssumptionDiagnostics d;
  const Eigen::ArrayXd lh = l_profile(c.runoff, Basis::liabilities);
  for (int t = 0; t < L.T; ++t) {
    const double lp = L.LP.col(t).mean();
    d.max_lp_runoff_gap = std::max(d.max_lp_runoff_gap, std::abs(lp / (lh[t] * L.lp0) - 1.0));
    d.max_sf_share_gap = std::max(d.max_sf_share_gap, std::abs(L.SF.col(t).mean() / lp - c.theta));
    if (d.db_share_exceeded_at < 0 &&
        L.DB.col(t).mean() > sigma_t(c.runoff, t) * lp * (1.0 + 1e-9) + 1e-12) {
      d.db_share_exceeded_at = t;
    }
  }
  const Eigen::ArrayXXd shortfall = L.nu * L.ph_star - L.direct;
  d.declaration_shortfalls = (shortfall > 1e-12 * (1.0 + L.ph_star.abs())).count();
  d.terminal_balance =
      (L.SF.col(L.T).abs() + L.LP.col(L.T).abs() + L.UG.col(L.T).abs()).maxCoeff();
  return d;
}

Estimate discounted_caplet(const Ledger& L, int s, double k) {
  if (s < 1 || s > L.T) throw std::out_of_range("caplet year outside [1,T]");
  return estimate(L.Binv.col(s) * (L.F.col(s - 1) - k).max(0.0));
}

void write_trajectories(std::ostream& out, const Ledger& L, int max_paths) {
  out << "path,t,F,Binv,BV,MV,UG,V,DBle0,DB,SF,LP,roa,gs,ph_star,ph,sg_star,sh,tax,decl\n";
  const int n = std::min(max_paths, L.paths);
  for (int p = 0; p < n; ++p) {
    for (int t = 0; t <= L.T; ++t) {
      out << p << ',' << t;
      for (const auto* a : {&L.F, &L.Binv, &L.BV, &L.MV, &L.UG, &L.V, &L.DBle0, &L.DB, &L.SF,
                            &L.LP, &L.roa, &L.gs, &L.ph_star, &L.ph, &L.sg_star, &L.sh, &L.tax,
                            &L.decl}) {
        out << ',' << (*a)(p, t);
      }
      out << '\n';
    }
  }
}

}  // namespace fdb::sim
