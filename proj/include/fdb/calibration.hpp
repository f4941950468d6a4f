#pragma once

#include <span>

namespace fdb {

// Aggregates for the technical gains rate.
struct MarketAggregates {
  double a = 0.0;       // gross surplus net of direct policyholder declarations
  double b = 0.0;       // direct policyholder declarations
  double c = 0.0;       // share allocated to the surplus fund
  double d_item = 0.0;  // interest margin
  double e = 0.0;       // gross technical provisions, direct business
  double f = 0.0;       // provisions where the policyholder carries the investment risk
};

// Items from the profit participation filing.
struct ParticipationItems {
  double gross_surplus = 0.0;
  double to_surplus_fund = 0.0;
  double direct_declarations = 0.0;
};

struct TaxContext {
  double tau = 0.0;
};

struct NphEstimate {
  double value = 0.0;
  bool capped = false;  // the raw ratio exceeded 1 and was clipped
};

/// (a + b - d) / (e - f)
double gamma_from_market(const MarketAggregates& agg);

/// Net policyholder share, clipped to 1 when rounding in the filings pushes it over.
NphEstimate nph(const ParticipationItems& items);

/// Gross share implied by the net share after tax.
double gph_from_nph(double nph, const TaxContext& tax);

double average_gph(std::span<const double> values);

}  // namespace fdb
