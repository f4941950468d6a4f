#include "fdb/two_bond.hpp"

#include <algorithm>

#include "fdb/errors.hpp"

namespace fdb::sim {

namespace {

struct Bond {
  double notional;
  double coupon;

  double market_at_t(double f_t) const { return (1.0 + coupon) * notional / (1.0 + f_t); }
  double market_before(double f_prev, double f_t) const {
    return (coupon * notional + market_at_t(f_t)) / (1.0 + f_prev);
  }
  double book(double market) const { return std::min(notional, market); }
};

struct YearEnd {
  double cash = 0.0;  // coupons and sale proceeds received at t
  double book = 0.0;
  double market = 0.0;
};

YearEnd year_end(const Bond& a1, const Bond& a2, double f_t, BondDecision decision) {
  YearEnd y;
  y.cash = a1.coupon * a1.notional + a2.coupon * a2.notional;
  y.book = a2.book(a2.market_at_t(f_t));
  y.market = a2.market_at_t(f_t);
  if (decision == BondDecision::sell_a1) {
    y.cash += a1.market_at_t(f_t);
  } else {
    y.book += a1.book(a1.market_at_t(f_t));
    y.market += a1.market_at_t(f_t);
  }
  return y;
}

}  // namespace

RoaDecomposition two_bond_example(double K, double N, double f_prev, double f_t,
                                  BondDecision decision) {
  if (!(N > 0.0)) throw DataError("two-bond example needs N > 0");
  if (K < f_prev) throw DataError("two-bond example needs K >= F_{t-1}");
  const Bond a{N / 2.0, K};

  const double mv_prev = 2.0 * a.market_before(f_prev, f_t);
  if (mv_prev < N) throw DataError("two-bond example needs MV_{t-1} >= N");
  const double bv_prev = 2.0 * a.book(a.market_before(f_prev, f_t));
  const double ug_prev = mv_prev - bv_prev;

  const YearEnd predicted = year_end(a, a, f_t, BondDecision::hold);
  const YearEnd actual = year_end(a, a, f_t, decision);

  const double roa_predicted = predicted.cash + predicted.book - bv_prev;
  const double ug_predicted = predicted.market - predicted.book;

  RoaDecomposition r;
  r.roa = actual.cash + actual.book - bv_prev;
  r.forward_yield = f_prev * bv_prev;
  r.ug_realization = f_prev * ug_prev - (ug_predicted - ug_prev);
  r.unpredicted = r.roa - roa_predicted;
  return r;
}

}  // namespace fdb::sim
