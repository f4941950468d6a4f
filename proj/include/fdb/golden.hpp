#pragma once

#include <string>
#include <vector>

#include "fdb/config.hpp"

namespace fdb {

// Published-value tolerances.
inline constexpr double kBaseTolBn = 0.5;
inline constexpr double kBaseTolPct = 0.25;
inline constexpr double kSensitivityTol = 0.6;
inline constexpr double kGammaTolPct = 0.03;
inline constexpr double kShareTolPct = 0.6;
inline constexpr double kAverageGphTolPct = 0.1;

struct GoldenCheck {
  std::string item;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool sign_required = false;  // also require matching sign (exact zero when expected is 0)

  bool pass() const;
};

// Base case in bn and % of MV0, sensitivities and calibration against the
// files named in the [golden] section.
std::vector<GoldenCheck> check_against_golden(const Config& cfg);

}  // namespace fdb
