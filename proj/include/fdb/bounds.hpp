#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "fdb/bachelier.hpp"
#include "fdb/curves.hpp"
#include "fdb/runoff.hpp"

namespace fdb {

// Opening statutory balance sheet of the with-profit book, in currency units.
struct BalanceSheet {
  std::string label;
  double lp0 = 0.0;  // life assurance provision net of the surplus fund
  double sf0 = 0.0;  // surplus fund
  double ug0 = 0.0;  // unrealized gains
  double gb = 0.0;   // value of guaranteed benefits
  std::optional<double> fdb_reported;

  double mv0() const { return lp0 + sf0 + ug0; }
  void validate() const;
  BalanceSheet scaled(double lambda) const;
};

// Products CV1_{s,t} CV2_s of the coefficients of variation entering the
// bounds on III. Row 0 holds the entries of the single sum over t.
class CvProduct {
 public:
  CvProduct() : CvProduct(constant(0.0, 1)) {}
  explicit CvProduct(Eigen::MatrixXd values);
  static CvProduct constant(double value, int T);

  double operator()(int s, int t) const;
  bool is_constant() const;
  CvProduct resized(int T) const;  // only for constant products

 private:
  Eigen::MatrixXd values_;
};

struct EstimationParams {
  double gph = 0.755;
  double theta = 0.0;   // SF_t / LP_t target
  double nu = 0.75;     // minimum direct declaration share
  RunoffParams runoff;
  Eigen::ArrayXd rho;   // technical interest, indexed 0..T (entry 0 unused)
  Eigen::ArrayXd gamma; // technical gains rate, indexed 0..T (entry 0 unused)
  CvProduct cv;
  bool article91 = true;
  BlackForward black_forward = BlackForward::simple;

  int T() const { return runoff.T; }
  void validate(const DiscountCurve& curve) const;
  /// Change the horizon; constant rate sequences are extended or cut.
  void set_horizon(int T);
};

/// Constant per-year rate sequence indexed 0..T.
Eigen::ArrayXd constant_rate(double value, int T);

// Strikes, forwards, vols and prices of the year-s options, arrays indexed 0..T (entry 0 unused).
struct OptionStrip {
  Eigen::ArrayXd strike, forward, vol, discount, caplet, floorlet;
};

OptionStrip option_strip(const BalanceSheet& bs, const EstimationParams& p,
                         const DiscountCurve& curve, const VolCurve& vols);

double ii_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve);
double cog_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
               const VolCurve& vols);
double iii_lb_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
                  const VolCurve& vols);
double iii_ub_hat(const BalanceSheet& bs, const EstimationParams& p, const DiscountCurve& curve,
                  const VolCurve& vols);

struct BoundsReport {
  std::string label;
  bool percent_of_mv0 = false;  // currency fields below are in % of MV0 when set
  double mv0 = 0.0;
  double lp0 = 0.0, sf0 = 0.0, ug0 = 0.0, gb = 0.0;
  std::optional<double> fdb_reported;

  double ii = 0.0, iii_lb = 0.0, iii_ub = 0.0, cog = 0.0;
  double lb_raw = 0.0, ub_raw = 0.0;  // before any surplus fund deduction
  bool article91 = false;
  double lb = 0.0, ub = 0.0, fdb_hat = 0.0, epsilon = 0.0;
  std::optional<double> delta;

  BoundsReport in_percent_of_mv0() const;
};

/// Full estimate. Throws InvariantError if the lower bound exceeds the upper bound.
BoundsReport bounds_report(const BalanceSheet& bs, const EstimationParams& p,
                           const DiscountCurve& curve, const VolCurve& vols);

}  // namespace fdb
