#pragma once

#include <string>
#include <vector>

// Price CSV ingestion and block log-return construction. Parameter fitting
// is out of scope; this only prepares data and reports sample moments.

namespace lqes {

struct PriceSeries {
    std::vector<std::string> dates;  // ISO-8601, strictly increasing
    std::vector<double> prices;     // > 0
};

struct ReturnSeries {
    std::vector<double> returns;
    int horizon_days = 1;
};

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
    double excess_kurtosis = 0.0;
};

// Reads "date,price" rows with a header line. Rejects missing or
// non-positive prices and out-of-order dates, reporting the line number.
PriceSeries read_price_csv(const std::string& path);

// Non-overlapping h-day log-returns anchored at the first observation:
// r_i = ln(P[(i+1)h] / P[ih]); leftover tail observations are dropped.
ReturnSeries to_log_returns(const PriceSeries& series, int step);

// Mean, unbiased sd, and excess kurtosis (fourth-moment estimator
// m4/m2^2 - 3). Needs at least 4 observations and nonzero variance.
Moments sample_moments(const ReturnSeries& r);

}  // namespace lqes
