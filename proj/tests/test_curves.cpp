#include <sstream>

#include <doctest.h>

#include "fdb/curves.hpp"
#include "fdb/errors.hpp"
#include "support.hpp"

using namespace fdb;
using doctest::Approx;

TEST_SUITE("curves") {

TEST_CASE("bundled curves load with the unit node prepended") {
  const DiscountCurve c17 = load_curve(test::data_path("eiopa_2017.csv"));
  CHECK(c17.horizon() == 60);
  CHECK(c17(0) == 1.0);
  CHECK(c17(1) == 1.003);
  CHECK(c17(10) == 0.920);
  CHECK(c17(60) == 0.167);
  CHECK_THROWS_AS(c17(61), std::out_of_range);
  CHECK(c17.truncated(50).horizon() == 50);
}

TEST_CASE("single-point curve") {
  std::istringstream in("t,P\n1,1.0\n");
  const DiscountCurve c = load_curve(in);
  CHECK(c.horizon() == 1);
  CHECK(c(0) == 1.0);
  CHECK(c(1) == 1.0);
}

TEST_CASE("malformed curve files are rejected with their location") {
  auto fails_with = [](const std::string& text, const std::string& fragment) {
    std::istringstream in(text);
    try {
      load_curve(in, "mem.csv");
    } catch (const DataError& e) {
      const std::string what = e.what();
      CHECK_MESSAGE(what.find(fragment) != std::string::npos, what);
      return;
    }
    FAIL("no error for: " << text);
  };
  fails_with("t,P\n1,1.0\n3,0.9\n", "mem.csv:3");
  fails_with("t,P\n2,0.99\n", "mem.csv:2");
  fails_with("t,P\n1,0.99\n2,-0.5\n", "mem.csv:3");
  fails_with("t,P\n1,0.99\n2,0\n", "mem.csv:3");
  fails_with("maturity,price\n1,0.99\n", "mem.csv:1");
  fails_with("t,P\n1,abc\n", "mem.csv:2");
  fails_with("t,P\n", "mem.csv");
  CHECK_THROWS_AS(load_curve(test::data_path("no_such_curve.csv")), DataError);
}

TEST_CASE("comments and blank lines are skipped") {
  std::istringstream in("# source\nt,P\n\n1,0.99\n# mid\n2,0.98\n");
  CHECK(load_curve(in).horizon() == 2);
}

TEST_CASE("forward rates") {
  const DiscountCurve c17 = load_curve(test::data_path("eiopa_2017.csv"));
  const DiscountCurve c18 = load_curve(test::data_path("eiopa_2018.csv"));
  const DiscountCurve c19 = load_curve(test::data_path("eiopa_2019.csv"));

  CHECK(forward_diff(c17, 1) == Approx(-0.003).epsilon(1e-12));
  CHECK(forward_diff(c19, 30) == Approx(0.023).epsilon(1e-12));
  CHECK(forward_simple(c17, 1) == Approx(-0.0029910269192421346).epsilon(1e-12));
  CHECK(forward_simple(c18, 2) == 0.0);

  const DiscountCurve flat = test::flat_curve(0.0, 10);
  for (int s = 1; s <= 10; ++s) {
    CHECK(forward_diff(flat, s) == 0.0);
    CHECK(forward_simple(flat, s) == 0.0);
  }
  CHECK_THROWS(forward_simple(c17, 0));
  CHECK_THROWS(forward_simple(c17, 61));
}

TEST_CASE("forward discount factors") {
  const DiscountCurve c17 = load_curve(test::data_path("eiopa_2017.csv"));
  CHECK(forward_discount(c17, 7, 7) == 1.0);
  CHECK(forward_discount(c17, 0, 20) == Approx(0.758).epsilon(1e-12));
  CHECK(forward_discount(c17, 10, 20) == Approx(0.8239130434782609).epsilon(1e-12));
  CHECK_THROWS(forward_discount(c17, 20, 10));
}

TEST_CASE("vol curve interpolation") {
  const VolCurve closed = load_vol_curve(test::data_path("iv_closed_form.csv"));
  CHECK(vol_at(closed, 1) == Approx(0.0010).epsilon(1e-12));
  CHECK(vol_at(closed, 11) == Approx(0.003380952380952381).epsilon(1e-12));
  CHECK(vol_at(closed, 40) == Approx(0.0050).epsilon(1e-12));
  CHECK_THROWS(vol_at(closed, 0.5));

  const VolCurve pillars = load_vol_curve(test::data_path("iv_pillars.csv"));
  CHECK(vol_at(pillars, 1) == Approx(0.0010).epsilon(1e-12));
  CHECK(vol_at(pillars, 11) == Approx(0.0030).epsilon(1e-12));
  CHECK(vol_at(pillars, 21) == Approx(0.0050).epsilon(1e-12));
  CHECK(vol_at(pillars, 50) == Approx(0.0050).epsilon(1e-12));
  CHECK(pillars.scaled(1.5)(11) == Approx(0.0045).epsilon(1e-12));
  CHECK(pillars.extrapolation_level() == 0.0050);

  std::istringstream abs("t,vol,unit\n1,0.002,abs\n5,0.004,abs\n");
  CHECK(load_vol_curve(abs)(3) == Approx(0.003).epsilon(1e-12));
  std::istringstream bad_unit("t,vol,unit\n1,10,pct\n");
  CHECK_THROWS_AS(load_vol_curve(bad_unit), DataError);
  std::istringstream negative("t,vol,unit\n1,-10,bp\n");
  CHECK_THROWS_AS(load_vol_curve(negative), DataError);
}

}
