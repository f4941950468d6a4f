#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "fdb/config.hpp"
#include "fdb/run.hpp"

namespace fdb::test {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(FDB_DATA_DIR) / name;
}

inline Config base_config() { return Config::load(data_path("base_case.conf")); }

inline YearInputs base_year(const std::string& year) { return load_year(base_config(), year); }

inline DiscountCurve flat_curve(double rate, int T) {
  Eigen::VectorXd p(T);
  for (int t = 1; t <= T; ++t) p[t - 1] = std::pow(1.0 + rate, -t);
  return DiscountCurve::from_maturities(p);
}

}  // namespace fdb::test
