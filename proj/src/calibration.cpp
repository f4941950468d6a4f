#include "fdb/calibration.hpp"

#include <numeric>

#include "fdb/errors.hpp"

namespace fdb {

double gamma_from_market(const MarketAggregates& agg) {
  const double denom = agg.e - agg.f;
  if (!(denom > 0.0) || agg.f < 0.0) {
    throw DataError("gamma calibration needs e > f >= 0");
  }
  return (agg.a + agg.b - agg.d_item) / denom;
}

NphEstimate nph(const ParticipationItems& items) {
  if (!(items.gross_surplus > 0.0)) throw DataError("nph needs a positive gross surplus");
  const double raw = (items.to_surplus_fund + items.direct_declarations) / items.gross_surplus;
  if (raw < 0.0) throw DataError("nph is negative");
  if (raw > 1.0) return {1.0, true};
  return {raw, false};
}

double gph_from_nph(double nph, const TaxContext& tax) {
  if (!(tax.tau >= 0.0 && tax.tau < 1.0)) throw DataError("tax rate must lie in [0,1)");
  if (!(nph >= 0.0 && nph <= 1.0)) throw DataError("nph must lie in [0,1]");
  if (tax.tau * nph >= 1.0) throw DataError("tau * nph must be below 1");
  return (1.0 - tax.tau) * nph / (1.0 - tax.tau * nph);
}

double average_gph(std::span<const double> values) {
  if (values.empty()) throw DataError("average_gph needs at least one value");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace fdb
