#include "fdb/bachelier.hpp"

namespace fdb {

double strike(int s, const DiscountCurve& curve, const RunoffParams& runoff, double ug0,
              double lp0, double theta, double rho_s, double gamma_s) {
  if (s < 1 || s > runoff.T) throw std::out_of_range("strike needs 1 <= s <= T");
  if (!(lp0 > 0.0)) throw DataError("strike needs LP0 > 0");
  const double lh_prev = l_factor(runoff, s - 1, Basis::liabilities);
  const double ug_realized = (l_factor(runoff, s - 1, Basis::unrealized_gains) -
                              l_factor(runoff, s, Basis::unrealized_gains)) / curve(s);
  return -ug_realized / lh_prev * ug0 / ((1.0 + theta) * lp0) +
         ((1.0 - runoff.sigma) * rho_s - gamma_s) / (1.0 + theta);
}

}  // namespace fdb
