#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "lqes/ingest.hpp"

using namespace lqes;

namespace {

std::string write_temp_csv(const std::string& name, const std::string& body) {
    std::string path = std::string("./") + name;
    std::ofstream out(path);
    out << body;
    return path;
}

PriceSeries synthetic_prices(std::size_t n) {
    PriceSeries s;
    double p = 100.0;
    for (std::size_t i = 0; i < n; ++i) {
        char date[16];
        // fake but strictly increasing ISO dates (28-day months)
        std::snprintf(date, sizeof date, "%04zu-%02zu-%02zu", 2000 + i / 336,
                      1 + (i / 28) % 12, 1 + i % 28);
        s.dates.push_back(date);
        s.prices.push_back(p);
        p *= 1.0 + 0.0001 * ((i * 2654435761u) % 200 - 99.5) / 100.0;
    }
    return s;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("log returns basics") {
    PriceSeries s;
    s.dates = {"2020-01-01", "2020-01-02"};
    s.prices = {100.0, 110.0};
    auto r = to_log_returns(s, 1);
    REQUIRE(r.returns.size() == 1);
    CHECK(r.returns[0] == doctest::Approx(std::log(1.1)).epsilon(1e-15));

    PriceSeries flat = synthetic_prices(30);
    for (auto& p : flat.prices) p = 55.0;
    auto rf = to_log_returns(flat, 3);
    for (double x : rf.returns) CHECK(x == 0.0);
}

TEST_CASE("block count matches the floor rule") {
    auto s = synthetic_prices(2132);
    auto r = to_log_returns(s, 10);
    CHECK(r.returns.size() == 213);
    CHECK(r.horizon_days == 10);
}

TEST_CASE("returns telescope to the full-span log change") {
    auto s = synthetic_prices(257);
    auto r = to_log_returns(s, 10);
    double sum = 0.0;
    for (double x : r.returns) sum += x;
    std::size_t last_used = r.returns.size() * 10;
    CHECK(sum == doctest::Approx(std::log(s.prices[last_used] / s.prices[0])).epsilon(1e-12));
}

TEST_CASE("daily returns summed in blocks equal block returns") {
    auto s = synthetic_prices(101);
    auto daily = to_log_returns(s, 1);
    auto blocks = to_log_returns(s, 10);
    for (std::size_t i = 0; i < blocks.returns.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 10; ++j) acc += daily.returns[i * 10 + j];
        CHECK(acc == doctest::Approx(blocks.returns[i]).epsilon(1e-12));
    }
}

TEST_CASE("insufficient data") {
    auto s = synthetic_prices(10);
    CHECK_THROWS_AS(to_log_returns(s, 10), std::invalid_argument);
    CHECK_THROWS_AS(to_log_returns(s, 0), std::invalid_argument);
}

TEST_CASE("csv round trip") {
    auto path = write_temp_csv("ok.csv",
                               "date,price\n"
                               "2020-01-01,100.5\n"
                               "2020-01-02,101.25\n"
                               "2020-01-03,99.875\n");
    auto s = read_price_csv(path);
    REQUIRE(s.prices.size() == 3);
    CHECK(s.prices[1] == doctest::Approx(101.25));
    CHECK(s.dates[2] == "2020-01-03");
    std::remove(path.c_str());
}

TEST_CASE("csv rejects malformed rows with line numbers") {
    auto missing = write_temp_csv("missing.csv", "date,price\n2020-01-01,100\n2020-01-02,\n");
    try {
        read_price_csv(missing);
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    std::remove(missing.c_str());

    auto unordered = write_temp_csv("unordered.csv",
                                    "date,price\n2020-01-05,100\n2020-01-02,101\n");
    CHECK_THROWS_AS(read_price_csv(unordered), std::invalid_argument);
    std::remove(unordered.c_str());

    auto negative = write_temp_csv("negative.csv", "date,price\n2020-01-01,-3\n");
    CHECK_THROWS_AS(read_price_csv(negative), std::invalid_argument);
    std::remove(negative.c_str());

    auto badhead = write_temp_csv("badhead.csv", "time,close\n2020-01-01,3\n");
    CHECK_THROWS_AS(read_price_csv(badhead), std::invalid_argument);
    std::remove(badhead.c_str());

    auto baddate = write_temp_csv("baddate.csv", "date,price\n01/02/2020,3\n");
    CHECK_THROWS_AS(read_price_csv(baddate), std::invalid_argument);
    std::remove(baddate.c_str());

    CHECK_THROWS_AS(read_price_csv("./no-such-file.csv"), std::invalid_argument);
}

TEST_CASE("csv accepts CRLF line endings") {
    auto path = write_temp_csv("crlf.csv", "date,price\r\n2020-01-01,100\r\n2020-01-02,101\r\n");
    auto s = read_price_csv(path);
    CHECK(s.prices.size() == 2);
    std::remove(path.c_str());
}

TEST_CASE("sample moments") {
    ReturnSeries r;
    r.returns = {-1.0, 1.0};
    auto m = sample_moments(r);
    CHECK(m.mean == doctest::Approx(0.0));
    CHECK(m.sd == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    ReturnSeries constant;
    constant.returns = {0.3, 0.3, 0.3, 0.3};
    CHECK_THROWS_AS(sample_moments(constant), std::domain_error);

    ReturnSeries tiny;
    tiny.returns = {0.5};
    CHECK_THROWS_AS(sample_moments(tiny), std::invalid_argument);
}

TEST_CASE("gaussian sample has near-zero excess kurtosis") {
    std::mt19937_64 rng(2718);
    std::normal_distribution<double> normal(0.0, 0.02);
    ReturnSeries r;
    r.returns.resize(100'000);
    for (auto& x : r.returns) x = normal(rng);
    auto m = sample_moments(r);
    double se = std::sqrt(24.0 / static_cast<double>(r.returns.size()));
    CHECK(std::fabs(m.excess_kurtosis) <= 3.0 * se);
    CHECK(m.sd == doctest::Approx(0.02).epsilon(0.02));
}

}  // TEST_SUITE
