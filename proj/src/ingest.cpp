#include "lqes/ingest.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lqes {

namespace {

bool iso_date(const std::string& s) {
    // YYYY-MM-DD with plausible month/day ranges; no calendar logic
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw std::invalid_argument(os.str());
}

}  // namespace

PriceSeries read_price_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open price file: " + path);
    PriceSeries series;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (line != "date,price") fail_line(path, lineno, "expected header 'date,price'");
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) fail_line(path, lineno, "missing comma");
        std::string date = line.substr(0, comma);
        std::string value = line.substr(comma + 1);
        if (!iso_date(date)) fail_line(path, lineno, "bad ISO-8601 date '" + date + "'");
        if (value.empty()) fail_line(path, lineno, "missing price");
        double price;
        std::size_t used = 0;
        try {
            price = std::stod(value, &used);
        } catch (const std::exception&) {
            fail_line(path, lineno, "unparseable price '" + value + "'");
        }
        if (used != value.size()) fail_line(path, lineno, "trailing junk after price");
        if (!(price > 0.0) || !std::isfinite(price))
            fail_line(path, lineno, "price must be positive and finite");
        if (!series.dates.empty() && date <= series.dates.back())
            fail_line(path, lineno, "dates must be strictly increasing");
        series.dates.push_back(date);
        series.prices.push_back(price);
    }
    if (!header_seen) throw std::invalid_argument(path + ": empty file");
    return series;
}

ReturnSeries to_log_returns(const PriceSeries& series, int step) {
    if (step < 1) throw std::invalid_argument("to_log_returns: step must be >= 1");
    std::size_t n = series.prices.size();
    if (n < static_cast<std::size_t>(step) + 1)
        throw std::invalid_argument("to_log_returns: need at least step+1 prices, have " +
                                    std::to_string(n));
    std::size_t blocks = (n - 1) / static_cast<std::size_t>(step);
    ReturnSeries out;
    out.horizon_days = step;
    out.returns.reserve(blocks);
    for (std::size_t i = 0; i < blocks; ++i)
        out.returns.push_back(
            std::log(series.prices[(i + 1) * step] / series.prices[i * step]));
    return out;
}

Moments sample_moments(const ReturnSeries& r) {
    std::size_t n = r.returns.size();
    if (n < 2) throw std::invalid_argument("sample_moments: need at least 2 observations");
    double mean = 0.0;
    for (double x : r.returns) mean += x;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (double x : r.returns) {
        double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    double var_unbiased = m2 / static_cast<double>(n - 1);
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (!(m2 > 0.0))
        throw std::domain_error("sample_moments: zero variance, kurtosis undefined");
    Moments mom;
    mom.mean = mean;
    mom.sd = std::sqrt(var_unbiased);
    mom.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    return mom;
}

}  // namespace lqes
