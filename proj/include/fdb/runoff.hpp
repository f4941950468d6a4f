#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fdb/errors.hpp"

namespace fdb {

// Geometric run-off of the liability book (half-life h) and of the
// unrealized gains (half-life d), truncated to zero at the horizon T.
struct RunoffParams {
  double h = 10.0;
  double d = 8.0;
  int T = 50;
  double sigma = 0.2;               // long-run share of declared bonuses in LP
  bool allow_fractional = false;    // permit non-integer h and d

  void validate() const {
    auto integral = [](double x) { return std::floor(x) == x; };
    if (!(h > 0.0) || !(d > 0.0)) throw DataError("half-lives h and d must be positive");
    if (!allow_fractional && (!integral(h) || !integral(d))) {
      throw DataError("h and d must be integers unless fractional run-off is enabled");
    }
    if (T < 1) throw DataError("run-off horizon T must be at least 1");
    if (!(sigma >= 0.0 && sigma <= 1.0)) throw DataError("sigma must lie in [0,1]");
  }
};

enum class Basis { liabilities, unrealized_gains };

/// l_t = 2^{-t/b} for t < T and 0 at t = T, with b = h or d.
inline double l_factor(const RunoffParams& p, int t, Basis basis) {
  if (t < 0 || t > p.T) throw std::out_of_range("run-off time outside [0,T]");
  if (t == p.T) return 0.0;
  double b = basis == Basis::liabilities ? p.h : p.d;
  return std::exp2(-t / b);
}

/// l_0..l_T as an array.
inline Eigen::ArrayXd l_profile(const RunoffParams& p, Basis basis) {
  Eigen::ArrayXd l(p.T + 1);
  for (int t = 0; t <= p.T; ++t) l[t] = l_factor(p, t, basis);
  return l;
}

/// Share of LP held as post-valuation declared bonuses: ramps linearly to sigma over h years.
inline double sigma_t(const RunoffParams& p, int t) {
  if (t < 0) throw std::out_of_range("sigma_t needs t >= 0");
  return t <= p.h ? t * p.sigma / p.h : p.sigma;
}

/// Fraction of the declaration made at k that leaves DB (payout or surrender fee) at s_plus_1.
inline double mu(const RunoffParams& p, int k, int s_plus_1) {
  if (k < 0 || s_plus_1 <= k || s_plus_1 > p.T) {
    throw std::out_of_range("mu needs 0 <= k < s+1 <= T");
  }
  double lk = l_factor(p, k, Basis::liabilities);
  return (l_factor(p, s_plus_1 - 1, Basis::liabilities) -
          l_factor(p, s_plus_1, Basis::liabilities)) / lk;
}

}  // namespace fdb
