#include "fdb/curves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fdb/errors.hpp"
#include "text.hpp"

namespace fdb {

DiscountCurve DiscountCurve::from_maturities(const Eigen::Ref<const Eigen::VectorXd>& prices) {
  if (prices.size() == 0) throw DataError("discount curve is empty");
  for (Eigen::Index i = 0; i < prices.size(); ++i) {
    if (!std::isfinite(prices[i]) || prices[i] <= 0.0) {
      throw DataError("discount price at t=" + std::to_string(i + 1) + " must be positive");
    }
  }
  Eigen::VectorXd p(prices.size() + 1);
  p[0] = 1.0;
  p.tail(prices.size()) = prices;
  return DiscountCurve(std::move(p));
}

double DiscountCurve::operator()(int t) const {
  if (t < 0 || t > horizon()) {
    throw std::out_of_range("maturity " + std::to_string(t) + " outside curve horizon " +
                            std::to_string(horizon()));
  }
  return prices_[t];
}

DiscountCurve DiscountCurve::truncated(int T) const {
  if (T < 1 || T > horizon()) {
    throw std::out_of_range("cannot truncate curve of horizon " + std::to_string(horizon()) +
                            " to " + std::to_string(T));
  }
  return DiscountCurve(prices_.head(T + 1));
}

DiscountCurve load_curve(std::istream& in, const std::string& source) {
  std::vector<double> prices;
  bool header_seen = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto cells = detail::split(trimmed, ',');
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    if (!header_seen) {
      if (cells.size() != 2 || cells[0] != "t" || cells[1] != "P") {
        throw DataError(where() + "expected header 't,P'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 2) throw DataError(where() + "expected two columns");
    double t = 0.0, p = 0.0;
    if (!detail::parse_double(cells[0], t) || !detail::parse_double(cells[1], p)) {
      throw DataError(where() + "non-numeric entry");
    }
    int expected = static_cast<int>(prices.size()) + 1;
    if (t != expected) {
      throw DataError(where() + "maturity " + std::string(cells[0]) + " breaks the grid, expected " +
                      std::to_string(expected));
    }
    if (!(p > 0.0) || !std::isfinite(p)) throw DataError(where() + "non-positive price");
    prices.push_back(p);
  }
  if (!header_seen) throw DataError(source + ": missing header");
  if (prices.empty()) throw DataError(source + ": no maturities");
  return DiscountCurve::from_maturities(Eigen::Map<const Eigen::VectorXd>(
      prices.data(), static_cast<Eigen::Index>(prices.size())));
}

DiscountCurve load_curve(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open curve file " + file.string());
  return load_curve(in, file.string());
}

double forward_diff(const DiscountCurve& curve, int s) {
  if (s < 1) throw std::out_of_range("forward needs s >= 1");
  return curve(s - 1) - curve(s);
}

double forward_simple(const DiscountCurve& curve, int s) {
  if (s < 1) throw std::out_of_range("forward needs s >= 1");
  return curve(s - 1) / curve(s) - 1.0;
}

double forward_discount(const DiscountCurve& curve, int s, int t) {
  if (s > t) throw std::out_of_range("forward_discount needs s <= t");
  return curve(t) / curve(s);
}

VolCurve::VolCurve(std::vector<VolPillar> pillars) : pillars_(std::move(pillars)) {
  if (pillars_.empty()) throw DataError("vol curve needs at least one pillar");
  for (std::size_t i = 0; i < pillars_.size(); ++i) {
    if (!std::isfinite(pillars_[i].vol) || pillars_[i].vol < 0.0) {
      throw DataError("vol pillars must be non-negative");
    }
    if (i > 0 && !(pillars_[i].maturity > pillars_[i - 1].maturity)) {
      throw DataError("vol pillar maturities must be strictly increasing");
    }
  }
}

double VolCurve::operator()(double t) const {
  if (t <= pillars_.front().maturity) return pillars_.front().vol;
  if (t >= pillars_.back().maturity) return pillars_.back().vol;
  auto hi = std::upper_bound(pillars_.begin(), pillars_.end(), t,
                             [](double x, const VolPillar& p) { return x < p.maturity; });
  auto lo = std::prev(hi);
  double w = (t - lo->maturity) / (hi->maturity - lo->maturity);
  return lo->vol + w * (hi->vol - lo->vol);
}

VolCurve VolCurve::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DataError("vol scale factor must be non-negative");
  auto p = pillars_;
  for (auto& x : p) x.vol *= factor;
  return VolCurve(std::move(p));
}

VolCurve load_vol_curve(std::istream& in, const std::string& source) {
  std::vector<VolPillar> pillars;
  bool header_seen = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    auto cells = detail::split(trimmed, ',');
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    if (!header_seen) {
      if (cells.size() != 3 || cells[0] != "t" || cells[1] != "vol" || cells[2] != "unit") {
        throw DataError(where() + "expected header 't,vol,unit'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 3) throw DataError(where() + "expected three columns");
    VolPillar p{};
    if (!detail::parse_double(cells[0], p.maturity) || !detail::parse_double(cells[1], p.vol)) {
      throw DataError(where() + "non-numeric entry");
    }
    if (cells[2] == "bp") {
      p.vol *= 1e-4;
    } else if (cells[2] != "abs") {
      throw DataError(where() + "unit must be 'bp' or 'abs'");
    }
    pillars.push_back(p);
  }
  if (pillars.empty()) throw DataError(source + ": no vol pillars");
  return VolCurve(std::move(pillars));
}

VolCurve load_vol_curve(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open vol file " + file.string());
  return load_vol_curve(in, file.string());
}

double vol_at(const VolCurve& vols, double t) {
  if (t < 1.0) throw std::out_of_range("vol_at needs t >= 1");
  return vols(t);
}

}  // namespace fdb
