#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fdb {

/// Zero-coupon prices P(0,t) on the integer grid t = 0..horizon, with P(0,0) = 1.
class DiscountCurve {
 public:
  /// `prices` holds P(0,1)..P(0,T); the t = 0 node is prepended.
  static DiscountCurve from_maturities(const Eigen::Ref<const Eigen::VectorXd>& prices);

  int horizon() const { return static_cast<int>(prices_.size()) - 1; }
  /// Price at integer maturity; throws std::out_of_range past the horizon.
  double operator()(int t) const;
  const Eigen::VectorXd& prices() const { return prices_; }

  /// Curve truncated to maturities 0..T.
  DiscountCurve truncated(int T) const;

 private:
  explicit DiscountCurve(Eigen::VectorXd prices) : prices_(std::move(prices)) {}
  Eigen::VectorXd prices_;
};

// CSV with header "t,P", consecutive integer maturities starting at 1.
// Lines starting with '#' are comments.
DiscountCurve load_curve(std::istream& in, const std::string& source = "<stream>");
DiscountCurve load_curve(const std::filesystem::path& file);

/// F_{s-1} = P(0,s-1) - P(0,s): the forward rate discounted to time s.
double forward_diff(const DiscountCurve& curve, int s);
/// Simple one-year forward P(0,s-1)/P(0,s) - 1.
double forward_simple(const DiscountCurve& curve, int s);
/// P(s,t) = P(0,t)/P(0,s).
double forward_discount(const DiscountCurve& curve, int s, int t);

struct VolPillar {
  double maturity;
  double vol;  // absolute normal vol, e.g. 0.0050 for 50 bp
};

/// Piecewise-linear normal volatility term structure, flat outside the pillars.
class VolCurve {
 public:
  explicit VolCurve(std::vector<VolPillar> pillars);

  double operator()(double t) const;
  const std::vector<VolPillar>& pillars() const { return pillars_; }
  double extrapolation_level() const { return pillars_.back().vol; }
  VolCurve scaled(double factor) const;

 private:
  std::vector<VolPillar> pillars_;
};

// CSV with header "t,vol,unit"; unit is "bp" or "abs".
VolCurve load_vol_curve(std::istream& in, const std::string& source = "<stream>");
VolCurve load_vol_curve(const std::filesystem::path& file);

/// Vol at maturity t >= 1.
double vol_at(const VolCurve& vols, double t);

}  // namespace fdb
