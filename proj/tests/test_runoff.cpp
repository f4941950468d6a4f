#include <cmath>

#include <doctest.h>

#include "fdb/runoff.hpp"

using namespace fdb;
using doctest::Approx;

TEST_SUITE("runoff") {

TEST_CASE("half-life profile") {
  RunoffParams p;
  CHECK(l_factor(p, 0, Basis::liabilities) == 1.0);
  CHECK(l_factor(p, 10, Basis::liabilities) == 0.5);
  CHECK(l_factor(p, 8, Basis::unrealized_gains) == 0.5);
  CHECK(l_factor(p, 50, Basis::liabilities) == 0.0);
  CHECK_THROWS(l_factor(p, 51, Basis::liabilities));
  CHECK_THROWS(l_factor(p, -1, Basis::liabilities));

  const Eigen::ArrayXd l = l_profile(p, Basis::liabilities);
  CHECK(l.size() == 51);
  for (int t = 1; t < p.T; ++t) CHECK(l[t] < l[t - 1]);
}

TEST_CASE("profile depends on t only through t/h") {
  RunoffParams a, b;
  a.h = 10;
  b.h = 20;
  CHECK(l_factor(a, 5, Basis::liabilities) == Approx(l_factor(b, 10, Basis::liabilities)).epsilon(1e-15));
  CHECK(l_factor(a, 7, Basis::liabilities) == Approx(l_factor(b, 14, Basis::liabilities)).epsilon(1e-15));
}

TEST_CASE("declared bonus share ramps to sigma") {
  RunoffParams p;
  CHECK(sigma_t(p, 0) == 0.0);
  CHECK(sigma_t(p, 5) == Approx(0.10));
  CHECK(sigma_t(p, 15) == Approx(0.20));
  double prev = 0.0;
  for (int t = 0; t <= p.T; ++t) {
    CHECK(sigma_t(p, t) >= prev);
    CHECK(sigma_t(p, t) <= p.sigma + 1e-15);
    prev = sigma_t(p, t);
  }
}

TEST_CASE("payout fractions") {
  RunoffParams p;
  const double first = 1.0 - std::exp2(-0.1);
  CHECK(mu(p, 1, 2) == Approx(first).epsilon(1e-12));
  CHECK(mu(p, 5, 6) == Approx(first).epsilon(1e-12));
  CHECK(first == Approx(0.066967).epsilon(1e-5));
  CHECK(mu(p, 1, p.T) == Approx(std::exp2(-(p.T - 2) / 10.0)).epsilon(1e-12));

  for (double h : {3.0, 10.0, 12.0, 40.0}) {
    p.h = h;
    for (int k = 0; k <= p.T - 1; ++k) {
      double sum = 0.0;
      for (int s = k; s <= p.T - 1; ++s) {
        const double m = mu(p, k, s + 1);
        CHECK(m >= 0.0);
        CHECK(m <= 1.0);
        sum += m;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS(mu(p, 3, 3));
  CHECK_THROWS(mu(p, 0, p.T + 1));
}

TEST_CASE("parameter validation") {
  RunoffParams p;
  CHECK_NOTHROW(p.validate());
  p.h = 10.5;
  CHECK_THROWS_AS(p.validate(), DataError);
  p.allow_fractional = true;
  CHECK_NOTHROW(p.validate());
  p.h = 0.0;
  CHECK_THROWS_AS(p.validate(), DataError);
  p.h = 10;
  p.sigma = 1.2;
  CHECK_THROWS_AS(p.validate(), DataError);
}

}
