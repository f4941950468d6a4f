#pragma once

namespace fdb::sim {

enum class BondDecision { hold, sell_a1 };

// Book return of year t split into forward yield on book value, predicted
// realization of unrealized gains, and the unpredicted remainder.
struct RoaDecomposition {
  double forward_yield = 0.0;
  double ug_realization = 0.0;
  double unpredicted = 0.0;
  double roa = 0.0;  // the three terms add up to this
};

/// Two identical bonds a1, a2 with notional N/2 and coupon K N/2, maturing at t+1,
/// booked at the lower of cost and market value. Rates are deterministic:
/// f_prev = F_{t-1}, f_t = F_t. Management is predicted to hold both bonds;
/// `decision` is what actually happens at t.
RoaDecomposition two_bond_example(double K, double N, double f_prev, double f_t,
                                  BondDecision decision);

}  // namespace fdb::sim
