#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "fdb/bounds.hpp"
#include "fdb/errors.hpp"
#include "fdb/sensitivity.hpp"
#include "support.hpp"

using namespace fdb;
using doctest::Approx;

namespace {

// Straight-line re-evaluation of the estimator from its definitions, sharing
// nothing with the library beyond the curve values.
struct Oracle {
  double ii, cog, iii_lb, iii_ub, lb, ub;
};

Oracle oracle(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
              double vol_scale, double cv) {
  const int T = p.runoff.T;
  std::vector<double> P(T + 1), lh(T + 1), ld(T + 1);
  for (int t = 0; t <= T; ++t) {
    P[t] = curve(t);
    lh[t] = t == T ? 0.0 : std::pow(2.0, -t / p.runoff.h);
    ld[t] = t == T ? 0.0 : std::pow(2.0, -t / p.runoff.d);
  }
  const double th = p.theta, g = p.gph, lp0 = bs.lp0;
  auto iv = [&](int t) {
    const double bp = t >= 21 ? 50.0 : 10.0 + 40.0 * (t - 1) / 20.0;
    return vol_scale * bp * 1e-4;
  };
  std::vector<double> call(T + 1), put(T + 1);
  for (int s = 1; s <= T; ++s) {
    const double fwd = P[s - 1] / P[s] - 1.0;
    const double k = -(ld[s - 1] - ld[s]) / P[s] / lh[s - 1] * bs.ug0 / ((1 + th) * lp0) +
                     ((1 - p.runoff.sigma) * p.rho[s] - p.gamma[s]) / (1 + th);
    const double sd = iv(s) * std::sqrt(double(s));
    const double x = (fwd - k) / sd;
    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi);
    call[s] = P[s] * ((fwd - k) * 0.5 * std::erfc(-x / std::sqrt(2.0)) + sd * phi);
    put[s] = P[s] * ((k - fwd) * 0.5 * std::erfc(x / std::sqrt(2.0)) + sd * phi);
  }
  Oracle o{};
  for (int t = 2; t <= T; ++t) {
    const double sig = t <= p.runoff.h ? t * p.runoff.sigma / p.runoff.h : p.runoff.sigma;
    o.ii += (1 - g) * p.gamma[t] * sig * P[t] * lh[t - 1] * lp0;
  }
  for (int t = 1; t <= T; ++t) o.cog += put[t] * (1 + th) * lh[t - 1] * lp0;

  const double f0 = P[0] / P[1] - 1.0;
  double a = f0 / (1 + f0) * bs.sf0, b = 0.0, c = 0.0;
  for (int t = 1; t <= T - 1; ++t) {
    a += th * (P[t] - P[t + 1]) * lh[t - 1] * lp0;
    b += (1 - cv) * (1 - P[t + 1] / P[t]) * call[t] * (1 + th) * lh[t - 1] * lp0;
    c += (1 + cv) * (1 - P[t + 1] / P[t]) * call[t] * (1 + th) * lh[t - 1] * lp0;
  }
  for (int t = 2; t <= T - 1; ++t) {
    for (int s = 1; s < t; ++s) {
      c += (1 - p.nu * (1 - lh[t - s])) * (1 + cv) * (P[t] / P[s] - P[t + 1] / P[s]) * call[s] *
           (1 + th) * lh[s - 1] * lp0;
    }
  }
  o.iii_lb = (1 - g) * a + g * (1 - g) * b;
  o.iii_ub = (1 - g) * (1 - P[T]) * bs.sf0 + g * (1 - g) * c;
  const double base = bs.sf0 + g * (lp0 + bs.ug0 - bs.gb) - (p.article91 ? bs.sf0 : 0.0);
  o.lb = base - o.ii - o.iii_ub;
  o.ub = base + g * o.cog - o.iii_lb;
  return o;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("library matches the straight-line oracle") {
  for (const char* year : {"2017", "2018", "2019"}) {
    CAPTURE(year);
    YearInputs y = test::base_year(year);
    for (double scale : {0.5, 1.0, 1.5}) {
      for (double cv : {0.0, 0.3}) {
        y.params.cv = CvProduct::constant(cv, y.params.T());
        const BoundsReport r = bounds_report(y.balance, y.params, y.curve, y.vols.scaled(scale));
        const Oracle o = oracle(y.balance, y.params, y.curve, scale, cv);
        CHECK(r.ii == Approx(o.ii).epsilon(1e-12));
        CHECK(r.cog == Approx(o.cog).epsilon(1e-12));
        CHECK(r.iii_lb == Approx(o.iii_lb).epsilon(1e-12));
        CHECK(r.iii_ub == Approx(o.iii_ub).epsilon(1e-12));
        CHECK(r.lb == Approx(o.lb).epsilon(1e-12));
        CHECK(r.ub == Approx(o.ub).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("report invariants") {
  const YearInputs y = test::base_year("2018");
  const BoundsReport r = bounds_report(y.balance, y.params, y.curve, y.vols);
  CHECK(r.lb <= r.fdb_hat);
  CHECK(r.fdb_hat <= r.ub);
  CHECK(r.epsilon == Approx(0.5 * (r.ub - r.lb)));
  CHECK(r.fdb_hat == Approx(0.5 * (r.ub + r.lb)));
  CHECK(r.ii >= 0.0);
  CHECK(r.cog >= 0.0);
  CHECK(r.iii_lb <= r.iii_ub);
  REQUIRE(r.delta);
  CHECK(*r.delta == Approx(r.fdb_hat - 46.2));
  CHECK(r.ii == Approx(ii_hat(y.balance, y.params, y.curve)));
  CHECK(r.cog == Approx(cog_hat(y.balance, y.params, y.curve, y.vols)));
  CHECK(r.iii_lb == Approx(iii_lb_hat(y.balance, y.params, y.curve, y.vols)));
  CHECK(r.iii_ub == Approx(iii_ub_hat(y.balance, y.params, y.curve, y.vols)));

  const BoundsReport pct = r.in_percent_of_mv0();
  CHECK(pct.percent_of_mv0);
  CHECK(pct.fdb_hat == Approx(100.0 * r.fdb_hat / y.balance.mv0()));
  CHECK(pct.in_percent_of_mv0().lb == pct.lb);
}

TEST_CASE("surplus fund deduction shifts both bounds") {
  YearInputs y = test::base_year("2017");
  const BoundsReport with = bounds_report(y.balance, y.params, y.curve, y.vols);
  y.params.article91 = false;
  const BoundsReport without = bounds_report(y.balance, y.params, y.curve, y.vols);
  CHECK(without.lb - with.lb == Approx(y.balance.sf0).epsilon(1e-12));
  CHECK(without.ub - with.ub == Approx(y.balance.sf0).epsilon(1e-12));
  CHECK(without.epsilon == Approx(with.epsilon).epsilon(1e-12));
  CHECK(with.lb_raw == without.lb_raw);
}

TEST_CASE("degenerate inputs") {
  YearInputs y = test::base_year("2017");
  SUBCASE("no technical gains") {
    y.params.gamma.setZero();
    CHECK(ii_hat(y.balance, y.params, y.curve) == 0.0);
  }
  SUBCASE("zero vols with floorlets out of the money") {
    y.balance.ug0 = 10.0;  // keeps every strike below its forward
    y.params.rho.setZero();
    y.params.gamma = constant_rate(0.05, y.params.T());
    const VolCurve zero({{1.0, 0.0}});
    const OptionStrip o = option_strip(y.balance, y.params, y.curve, zero);
    for (int s = 1; s <= y.params.T(); ++s) REQUIRE(o.forward[s] >= o.strike[s]);
    CHECK(cog_hat(y.balance, y.params, y.curve, zero) == 0.0);
  }
  SUBCASE("nothing left for the lower term") {
    y.balance.sf0 = 0.0;
    y.params.theta = 0.0;
    y.params.rho = constant_rate(1.0, y.params.T());  // strikes far above any forward
    y.params.gamma.setZero();
    const VolCurve zero({{1.0, 0.0}});
    CHECK(iii_lb_hat(y.balance, y.params, y.curve, zero) == 0.0);
    y.balance.sf0 = 5.0;
    CHECK(iii_ub_hat(y.balance, y.params, y.curve, zero) ==
          Approx((1 - y.params.gph) * (1 - y.curve(50)) * 5.0).epsilon(1e-14));
  }
  SUBCASE("flat curve at par leaves only caplet terms") {
    const DiscountCurve flat = test::flat_curve(0.0, 60);
    CHECK(iii_lb_hat(y.balance, y.params, flat, y.vols) == 0.0);  // 1 - P(t,t+1) vanishes as well
  }
}

TEST_CASE("higher direct declaration share lowers the upper term") {
  YearInputs y = test::base_year("2019");
  y.params.nu = 0.99;
  const double high = iii_ub_hat(y.balance, y.params, y.curve, y.vols);
  y.params.nu = 0.01;
  const double low = iii_ub_hat(y.balance, y.params, y.curve, y.vols);
  CHECK(high <= low);
}

TEST_CASE("coefficient of variation widens the interval") {
  YearInputs y = test::base_year("2017");
  double prev_width = -1.0, prev_lb = 1e300, prev_ub = -1e300;
  for (double cv : {0.0, 0.1, 0.25, 0.5, 1.0}) {
    y.params.cv = CvProduct::constant(cv, y.params.T());
    const BoundsReport r = bounds_report(y.balance, y.params, y.curve, y.vols);
    CHECK(r.ub - r.lb > prev_width);
    CHECK(r.lb <= prev_lb);
    CHECK(r.ub >= prev_ub);
    prev_width = r.ub - r.lb;
    prev_lb = r.lb;
    prev_ub = r.ub;
  }
  CHECK_THROWS_AS(CvProduct::constant(-0.1, 5), DataError);
}

TEST_CASE("homogeneous of degree one in the balance sheet") {
  const YearInputs y = test::base_year("2019");
  const BoundsReport r = bounds_report(y.balance, y.params, y.curve, y.vols);
  for (double lambda : {0.1, 7.3}) {
    const BoundsReport s = bounds_report(y.balance.scaled(lambda), y.params, y.curve, y.vols);
    for (auto [a, b] : {std::pair{s.lb, r.lb}, {s.ub, r.ub}, {s.fdb_hat, r.fdb_hat},
                        {s.ii, r.ii}, {s.cog, r.cog}, {s.iii_lb, r.iii_lb}, {s.iii_ub, r.iii_ub}}) {
      CHECK(std::abs(a - lambda * b) <= 1e-9 * std::max(1.0, std::abs(lambda * b)));
    }
    const BoundsReport sp = s.in_percent_of_mv0(), rp = r.in_percent_of_mv0();
    CHECK(std::abs(sp.fdb_hat - rp.fdb_hat) <= 1e-9);
    CHECK(std::abs(sp.lb - rp.lb) <= 1e-9);
  }
}

TEST_CASE("crossed bounds are an invariant violation") {
  YearInputs y = test::base_year("2017");
  y.balance.sf0 = 0.01;
  y.params.gamma.setZero();
  y.params.theta = 5.0;
  CHECK_THROWS_AS(bounds_report(y.balance, y.params, y.curve, y.vols), InvariantError);
}

TEST_CASE("input validation") {
  YearInputs y = test::base_year("2017");
  SUBCASE("horizon beyond the curve") {
    y.params.set_horizon(61);
    CHECK_THROWS_AS(bounds_report(y.balance, y.params, y.curve, y.vols), DataError);
  }
  SUBCASE("participation outside (0,1)") {
    y.params.gph = 1.0;
    CHECK_THROWS_AS(bounds_report(y.balance, y.params, y.curve, y.vols), DataError);
  }
  SUBCASE("non-positive LP0") {
    y.balance.lp0 = 0.0;
    CHECK_THROWS_AS(bounds_report(y.balance, y.params, y.curve, y.vols), DataError);
  }
  SUBCASE("short rate sequence") {
    y.params.rho = constant_rate(0.02, 10);
    CHECK_THROWS_AS(bounds_report(y.balance, y.params, y.curve, y.vols), DataError);
  }
}

TEST_CASE("sensitivity grid") {
  const YearInputs y = test::base_year("2017");
  std::vector<ScenarioTransform> sc;
  for (const char* s : {"base", "nu*1.25", "nu*0.75", "iv*1.5", "d=10", "T=40", "cv=0.2"}) {
    sc.push_back(parse_transform(s));
  }
  const auto rows = sensitivity_grid(y.balance, y.params, y.curve, y.vols, sc);
  REQUIRE(rows.size() == sc.size());
  CHECK(rows[0].scenario == "base");
  CHECK(rows[0].drel_fdb == 0.0);
  CHECK(rows[0].drel_lb == 0.0);
  CHECK(rows[0].drel_ub == 0.0);
  CHECK(rows[1].scenario == "nu_x1.25");
  CHECK(rows[1].drel_ub == 0.0);
  CHECK(rows[2].drel_ub == 0.0);
  CHECK(rows[1].drel_lb > 0.0);
  CHECK(rows[3].scenario == "iv_x1.5");
  CHECK(rows[3].drel_ub > 0.0);
  CHECK(rows[4].scenario == "d_10");
  CHECK(rows[6].drel_ub > 0.0);
  CHECK(rows[6].drel_lb < 0.0);

  const double unit = 100.0 / 48.6;
  const BoundsReport base = bounds_report(y.balance, y.params, y.curve, y.vols);
  CHECK(rows[3].drel_lb == Approx(unit * (rows[3].report.lb - base.lb)));

  CHECK_THROWS_AS(parse_transform("vega*2"), DataError);
  CHECK_THROWS_AS(parse_transform("iv"), DataError);
  CHECK_THROWS_AS(parse_transform("iv*abc"), DataError);
  CHECK_THROWS_AS(parse_transform("T=40.5"), DataError);

  BalanceSheet unreported = y.balance;
  unreported.fdb_reported.reset();
  CHECK_THROWS_AS(sensitivity_grid(unreported, y.params, y.curve, y.vols, sc), DataError);
}

}
