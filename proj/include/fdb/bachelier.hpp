#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fdb/curves.hpp"
#include "fdb/runoff.hpp"

namespace fdb {

template <typename Scalar>
Scalar normal_pdf(const Scalar& x) {
  using std::exp;
  return exp(Scalar(-0.5) * x * x) * Scalar(0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

template <typename Scalar>
Scalar normal_cdf(const Scalar& x) {
  using std::erfc;
  return Scalar(0.5) * erfc(-x * Scalar(0.5 * std::numbers::sqrt2));
}

template <typename Scalar>
struct OptionPair {
  Scalar caplet;    // O^+
  Scalar floorlet;  // O^-
};

/// Normal-model caplet and floorlet on a rate fixing with total standard
/// deviation vol * sqrt(s), paid at s and discounted with `discount`.
template <typename Scalar>
OptionPair<Scalar> caplet_floorlet(double s, const Scalar& forward, const Scalar& strike,
                                   const Scalar& vol, const Scalar& discount) {
  using std::sqrt;
  using std::max;
  if (s < 0.0) throw std::domain_error("option maturity must be non-negative");
  if (vol < Scalar(0)) throw std::domain_error("normal vol must be non-negative");
  const Scalar moneyness = forward - strike;
  const Scalar stdev = vol * Scalar(std::sqrt(s));
  if (stdev == Scalar(0)) {
    return {discount * max(moneyness, Scalar(0)), discount * max(-moneyness, Scalar(0))};
  }
  const Scalar kappa = moneyness / stdev;
  const Scalar density = stdev * normal_pdf(kappa);
  return {discount * (moneyness * normal_cdf(kappa) + density),
          discount * (-moneyness * normal_cdf(-kappa) + density)};
}

// Which one-year forward enters the option formula.
//   simple      P(0,s-1)/P(0,s) - 1
//   difference  P(0,s-1) - P(0,s)
enum class BlackForward { simple, difference };

/// Strike at which the option on the gross surplus of year s is struck.
double strike(int s, const DiscountCurve& curve, const RunoffParams& runoff, double ug0,
              double lp0, double theta, double rho_s, double gamma_s);

}  // namespace fdb
