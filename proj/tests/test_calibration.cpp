#include <array>
#include <cmath>

#include <doctest.h>

#include "fdb/calibration.hpp"
#include "fdb/errors.hpp"
#include "support.hpp"

using namespace fdb;
using doctest::Approx;

TEST_SUITE("calibration") {

TEST_CASE("technical gains rate") {
  CHECK(100.0 * gamma_from_market({8.3, 2.3, 6.4, 3.5, 991.4, 109.1}) ==
        Approx(0.8047).epsilon(1e-4));
  CHECK(100.0 * gamma_from_market({9.9, 2.1, 8.1, 5.2, 1011.1, 101.7}) ==
        Approx(0.7477).epsilon(1e-4));
  CHECK(gamma_from_market({3.0, 1.0, 0.0, 4.0, 100.0, 10.0}) == 0.0);
  CHECK_THROWS_AS(gamma_from_market({1, 1, 0, 0, 10.0, 10.0}), DataError);
  CHECK_THROWS_AS(gamma_from_market({1, 1, 0, 0, 10.0, -1.0}), DataError);
}

TEST_CASE("net policyholder share") {
  const NphEstimate y17 = nph({2.6, 2.0, 0.1});
  CHECK(100.0 * y17.value == Approx(80.77).epsilon(1e-4));
  CHECK_FALSE(y17.capped);
  CHECK(100.0 * nph({3.6, 2.9, 0.2}).value == Approx(86.11).epsilon(1e-4));
  CHECK(nph({1.0, 0.0, 0.0}).value == 0.0);

  const NphEstimate over = nph({1.0, 0.9, 0.2});
  CHECK(over.value == 1.0);
  CHECK(over.capped);
  CHECK_THROWS_AS(nph({0.0, 0.0, 0.0}), DataError);
}

TEST_CASE("gross share after tax") {
  CHECK(100.0 * gph_from_nph(0.808, {0.299}) == Approx(74.7).epsilon(5e-4));
  CHECK(gph_from_nph(0.63, {0.0}) == 0.63);
  for (double tau : {0.0, 0.1, 0.299, 0.9}) CHECK(gph_from_nph(1.0, {tau}) == Approx(1.0));
  const double g = gph_from_nph(0.7, {0.25});
  CHECK((1.0 - 0.25) * 0.7 / (1.0 - 0.25 * 0.7) == Approx(g));
  CHECK(gph_from_nph(0.7, {0.25}) < 0.7);
  CHECK_THROWS_AS(gph_from_nph(1.1, {0.2}), DataError);
  CHECK_THROWS_AS(gph_from_nph(0.5, {1.0}), DataError);
}

TEST_CASE("average") {
  const std::array<double, 3> published{74.7, 71.2, 80.6};
  CHECK(average_gph(published) == Approx(75.5).epsilon(1e-3));
  const std::array<double, 1> one{0.42};
  CHECK(average_gph(one) == 0.42);
  const std::array<double, 2> halves{0.5, 0.5};
  CHECK(average_gph(halves) == 0.5);
  CHECK_THROWS_AS(average_gph(std::span<const double>{}), DataError);
}

TEST_CASE("bundled aggregates") {
  const auto rows = run_calibration(test::base_config());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].year == "2017");
  CHECK(100.0 * rows[0].gamma == Approx(0.8047).epsilon(1e-4));
  CHECK(100.0 * rows[1].nph.value == Approx(77.42).epsilon(1e-4));
  CHECK(100.0 * rows[2].gamma == Approx(0.7731).epsilon(1e-4));
  for (const auto& r : rows) {
    CHECK_FALSE(r.nph.capped);
    CHECK(r.gph == Approx(gph_from_nph(r.nph.value, {0.299})));
  }
}

}
