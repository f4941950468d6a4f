#include "fdb/bounds.hpp"

#include <cmath>
#include <sstream>

#include "fdb/errors.hpp"

namespace fdb {

void BalanceSheet::validate() const {
  for (double x : {lp0, sf0, ug0, gb}) {
    if (!std::isfinite(x)) throw DataError(label + ": non-finite balance sheet entry");
  }
  if (!(lp0 > 0.0)) throw DataError(label + ": LP0 must be positive");
  if (sf0 < 0.0) throw DataError(label + ": SF0 must be non-negative");
  if (gb < 0.0) throw DataError(label + ": GB must be non-negative");
  if (!(mv0() > 0.0)) throw DataError(label + ": MV0 must be positive");
}

BalanceSheet BalanceSheet::scaled(double lambda) const {
  BalanceSheet b = *this;
  b.lp0 *= lambda;
  b.sf0 *= lambda;
  b.ug0 *= lambda;
  b.gb *= lambda;
  if (b.fdb_reported) *b.fdb_reported *= lambda;
  return b;
}

CvProduct::CvProduct(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols() || values_.rows() < 2) {
    throw DataError("cv product must be a square (T+1)x(T+1) matrix");
  }
  if ((values_.array() < 0.0).any()) throw DataError("cv product entries must be non-negative");
}

CvProduct CvProduct::constant(double value, int T) {
  return CvProduct(Eigen::MatrixXd::Constant(T + 1, T + 1, value));
}

double CvProduct::operator()(int s, int t) const {
  if (s < 0 || t < 0 || s >= values_.rows() || t >= values_.cols()) {
    throw std::out_of_range("cv product index outside horizon");
  }
  return values_(s, t);
}

bool CvProduct::is_constant() const {
  return (values_.array() == values_(0, 0)).all();
}

CvProduct CvProduct::resized(int T) const {
  if (!is_constant()) throw DataError("cannot change the horizon of a non-constant cv product");
  return constant(values_(0, 0), T);
}

Eigen::ArrayXd constant_rate(double value, int T) {
  return Eigen::ArrayXd::Constant(T + 1, value);
}

void EstimationParams::validate(const DiscountCurve& curve) const {
  runoff.validate();
  const int n = T() + 1;
  if (!(gph > 0.0 && gph < 1.0)) throw DataError("gph must lie in (0,1)");
  if (!(nu > 0.0 && nu < 1.0)) throw DataError("nu must lie in (0,1)");
  if (!(theta >= 0.0)) throw DataError("theta must be non-negative");
  if (rho.size() != n || gamma.size() != n) {
    throw DataError("rho and gamma need one entry per year 0..T");
  }
  if (T() > curve.horizon()) {
    throw DataError("run-off horizon T=" + std::to_string(T()) + " exceeds curve horizon " +
                    std::to_string(curve.horizon()));
  }
  cv(T(), T());  // range check
}

void EstimationParams::set_horizon(int T) {
  auto extend = [T](const Eigen::ArrayXd& a, const char* name) {
    if (a.size() > 1 && !(a.tail(a.size() - 1) == a[1]).all()) {
      throw DataError(std::string("cannot change the horizon of a non-constant ") + name);
    }
    return constant_rate(a.size() > 1 ? a[1] : 0.0, T);
  };
  rho = extend(rho, "rho");
  gamma = extend(gamma, "gamma");
  cv = cv.resized(T);
  runoff.T = T;
}

OptionStrip option_strip(const BalanceSheet& bs, const EstimationParams& p,
                         const DiscountCurve& curve, const VolCurve& vols) {
  const int T = p.T();
  OptionStrip o;
  for (auto* a : {&o.strike, &o.forward, &o.vol, &o.discount, &o.caplet, &o.floorlet}) {
    a->setZero(T + 1);
  }
  for (int s = 1; s <= T; ++s) {
    o.strike[s] = strike(s, curve, p.runoff, bs.ug0, bs.lp0, p.theta, p.rho[s], p.gamma[s]);
    o.forward[s] = p.black_forward == BlackForward::simple ? forward_simple(curve, s)
                                                           : forward_diff(curve, s);
    o.vol[s] = vol_at(vols, s);
    o.discount[s] = curve(s);
    auto q = caplet_floorlet<double>(s, o.forward[s], o.strike[s], o.vol[s], o.discount[s]);
    o.caplet[s] = q.caplet;
    o.floorlet[s] = q.floorlet;
  }
  return o;
}

namespace {

double ii_hat_impl(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve) {
  double sum = 0.0;
  for (int t = 2; t <= p.T(); ++t) {
    sum += p.gamma[t] * sigma_t(p.runoff, t) * curve(t) *
           l_factor(p.runoff, t - 1, Basis::liabilities);
  }
  return (1.0 - p.gph) * sum * bs.lp0;
}

// Book value of the option on the gross surplus of year t, per unit of option price.
double option_notional(const BalanceSheet& bs, const EstimationParams& p, int t) {
  return (1.0 + p.theta) * l_factor(p.runoff, t - 1, Basis::liabilities) * bs.lp0;
}

double cog_hat_impl(const BalanceSheet& bs, const EstimationParams& p, const OptionStrip& o) {
  double sum = 0.0;
  for (int t = 1; t <= p.T(); ++t) sum += o.floorlet[t] * option_notional(bs, p, t);
  return sum;
}

double iii_lb_impl(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
                   const OptionStrip& o) {
  const int T = p.T();
  const double f0 = forward_simple(curve, 1);
  double sf_part = f0 / (1.0 + f0) * bs.sf0;
  for (int t = 1; t <= T - 1; ++t) {
    sf_part += p.theta * (curve(t) - curve(t + 1)) *
               l_factor(p.runoff, t - 1, Basis::liabilities) * bs.lp0;
  }
  double option_part = 0.0;
  for (int t = 1; t <= T - 1; ++t) {
    option_part += (1.0 - p.cv(0, t)) * (1.0 - forward_discount(curve, t, t + 1)) * o.caplet[t] *
                   option_notional(bs, p, t);
  }
  return (1.0 - p.gph) * sf_part + p.gph * (1.0 - p.gph) * option_part;
}

double iii_ub_impl(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
                   const OptionStrip& o) {
  const int T = p.T();
  double single = 0.0;
  for (int t = 1; t <= T - 1; ++t) {
    single += (1.0 + p.cv(0, t)) * (1.0 - forward_discount(curve, t, t + 1)) * o.caplet[t] *
              option_notional(bs, p, t);
  }
  double carried = 0.0;
  for (int t = 2; t <= T - 1; ++t) {
    for (int s = 1; s <= t - 1; ++s) {
      const double kept = 1.0 - p.nu * (1.0 - l_factor(p.runoff, t - s, Basis::liabilities));
      carried += kept * (1.0 + p.cv(s, t)) *
                 (forward_discount(curve, s, t) - forward_discount(curve, s, t + 1)) *
                 o.caplet[s] * option_notional(bs, p, s);
    }
  }
  return (1.0 - p.gph) * (1.0 - curve(T)) * bs.sf0 + p.gph * (1.0 - p.gph) * (single + carried);
}

void check_inputs(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve) {
  bs.validate();
  p.validate(curve);
}

}  // namespace

double ii_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve) {
  check_inputs(bs, p, curve);
  return ii_hat_impl(bs, p, curve);
}

double cog_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
               const VolCurve& vols) {
  check_inputs(bs, p, curve);
  return cog_hat_impl(bs, p, option_strip(bs, p, curve, vols));
}

double iii_lb_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
                  const VolCurve& vols) {
  check_inputs(bs, p, curve);
  return iii_lb_impl(bs, p, curve, option_strip(bs, p, curve, vols));
}

double iii_ub_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
                  const VolCurve& vols) {
  check_inputs(bs, p, curve);
  return iii_ub_impl(bs, p, curve, option_strip(bs, p, curve, vols));
}

BoundsReport bounds_report(const BalanceSheet& bs, const EstimationParams& p,
                           const DiscountCurve& curve, const VolCurve& vols) {
  check_inputs(bs, p, curve);
  const OptionStrip o = option_strip(bs, p, curve, vols);

  BoundsReport r;
  r.label = bs.label;
  r.mv0 = bs.mv0();
  r.lp0 = bs.lp0;
  r.sf0 = bs.sf0;
  r.ug0 = bs.ug0;
  r.gb = bs.gb;
  r.fdb_reported = bs.fdb_reported;

  r.ii = ii_hat_impl(bs, p, curve);
  r.cog = cog_hat_impl(bs, p, o);
  r.iii_lb = iii_lb_impl(bs, p, curve, o);
  r.iii_ub = iii_ub_impl(bs, p, curve, o);

  const double base = bs.sf0 + p.gph * (bs.lp0 + bs.ug0 - bs.gb);
  r.lb_raw = base - r.ii - r.iii_ub;
  r.ub_raw = base + p.gph * r.cog - r.iii_lb;
  if (r.lb_raw > r.ub_raw) {
    std::ostringstream msg;
    msg << bs.label << ": lower bound " << r.lb_raw << " exceeds upper bound " << r.ub_raw;
    throw InvariantError(msg.str());
  }

  r.article91 = p.article91;
  const double shift = p.article91 ? bs.sf0 : 0.0;
  r.lb = r.lb_raw - shift;
  r.ub = r.ub_raw - shift;
  r.fdb_hat = 0.5 * (r.lb + r.ub);
  r.epsilon = 0.5 * (r.ub - r.lb);
  if (bs.fdb_reported) r.delta = r.fdb_hat - *bs.fdb_reported;
  return r;
}

BoundsReport BoundsReport::in_percent_of_mv0() const {
  if (percent_of_mv0) return *this;
  BoundsReport r = *this;
  const double k = 100.0 / mv0;
  for (double* x : {&r.lp0, &r.sf0, &r.ug0, &r.gb, &r.ii, &r.iii_lb, &r.iii_ub, &r.cog, &r.lb_raw,
                    &r.ub_raw, &r.lb, &r.ub, &r.fdb_hat, &r.epsilon}) {
    *x *= k;
  }
  if (r.fdb_reported) *r.fdb_reported *= k;
  if (r.delta) *r.delta *= k;
  r.percent_of_mv0 = true;
  return r;
}

}  // namespace fdb
