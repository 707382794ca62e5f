#include "doctest.h"
#include "oracles.hpp"

#include "qkorovkin/summability.hpp"

#include <cmath>
#include <stdexcept>

using namespace qkorovkin;

TEST_CASE("perfect squares") {
    for (std::size_t m = 0; m < 5000; ++m) {
        CHECK(squares_indicator(m) == (oracle::is_square(m) ? 1 : 0));
    }
    CHECK(squares_indicator(4'000'000'000'000ULL) == 1);
    CHECK(squares_indicator(4'000'000'000'001ULL) == 0);
}

TEST_CASE("natural density of the squares") {
    const Membership sq = [](std::size_t m) { return squares_indicator(m) == 1; };
    CHECK(prefix_density(sq, 10'000) == 0.01);
    CHECK(prefix_density(sq, 100) == 0.1);
    CHECK_THROWS_AS((void)prefix_density(sq, 0), std::invalid_argument);
}

TEST_CASE("summability matrices") {
    const auto c = SummabilityMatrix::cesaro();
    CHECK(c.entry(4, 2) == 0.25);
    CHECK(c.entry(4, 5) == 0.0);
    CHECK(c.row_sum(7) == doctest::Approx(1.0));
    const auto g = SummabilityMatrix::geometric();
    for (const std::size_t n : {2u, 10u, 100u}) {
        CHECK(g.row_sum(n, 1e-13) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(SummabilityMatrix::identity().row_sum(9) == 1.0);
}

TEST_CASE("identity rows reproduce the ordinary criterion") {
    const IndexedSequence x = [](std::size_t k) { return 1.0 / static_cast<double>(k); };
    const auto id = SummabilityMatrix::identity();
    for (std::size_t n = 1; n <= 300; ++n) {
        const double expected = 1.0 / static_cast<double>(n) >= 0.01 ? 1.0 : 0.0;
        CHECK(a_statistical_tail(x, id, 0.0, 0.01, n) == expected);
        CHECK(deferred_weighted_A_density([&](std::size_t k) { return x(k) >= 0.01; }, identity_scheme(), n) ==
              expected);
    }
}

TEST_CASE("A-statistical tails") {
    const IndexedSequence sq = [](std::size_t k) { return static_cast<double>(squares_indicator(k)); };
    CHECK(a_statistical_tail(sq, SummabilityMatrix::cesaro(), 0.0, 0.5, 100) == doctest::Approx(0.1));
    // geometric rows: Σ over squares of (1−θ)θ^{k−1}
    const std::size_t n = 50;
    const double theta = 1.0 - 1.0 / static_cast<double>(n);
    double expected = 0.0;
    for (std::size_t k = 1; k * k < 200000; ++k) {
        expected += (1.0 - theta) * std::pow(theta, static_cast<double>(k * k - 1));
    }
    CHECK(a_statistical_tail(sq, SummabilityMatrix::geometric(), 0.0, 0.5, n) == doctest::Approx(expected).epsilon(1e-11));
    CHECK_THROWS_AS((void)a_statistical_tail(sq, SummabilityMatrix::cesaro(), 0.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("deferred weighted A-density of the squares") {
    const Membership sq = [](std::size_t m) { return squares_indicator(m) == 1; };
    CHECK(deferred_weighted_A_density(sq, default_scheme(), 10'000) ==
          doctest::Approx(0.011645993403431601).epsilon(1e-13));
    CHECK(deferred_weighted_A_density(sq, prefix_scheme(), 10'000) == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("deferral sequences must satisfy b_n < c_n") {
    SummabilityScheme bad = default_scheme();
    bad.lower = [](std::size_t n) { return n; };
    CHECK_THROWS_AS((void)bad.weight_sum(5), std::invalid_argument);
}

TEST_CASE("deferred mean with b = 0, c = n is the Cesàro mean") {
    const IndexedSequence x = [](std::size_t k) { return std::sin(static_cast<double>(k)) + 1.0 / static_cast<double>(k); };
    for (std::size_t n = 1; n <= 400; n += 13) {
        double direct = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            direct += x(k);
        }
        direct /= static_cast<double>(n);
        CHECK(std::abs(deferred_weighted_mean(x, prefix_scheme(), n) - direct) <= 1e-15);
    }
}

TEST_CASE("weighted statistical density") {
    const IndexedSequence sq = [](std::size_t k) { return static_cast<double>(squares_indicator(k)); };
    const IndexedSequence one = [](std::size_t) { return 1.0; };
    CHECK(weighted_statistical_density(sq, one, 0.0, 0.5, 10'000) == 0.01);
    // weights 2: S_N = 2N, the index range widens to k ≤ 2N
    const IndexedSequence two = [](std::size_t) { return 2.0; };
    CHECK(weighted_statistical_density(sq, two, 0.0, 0.5, 5000) == doctest::Approx(100.0 / 10000.0));
    const IndexedSequence zero = [](std::size_t) { return 0.0; };
    CHECK_THROWS_AS((void)weighted_statistical_density(sq, zero, 0.0, 0.5, 10), std::domain_error);
}

TEST_CASE("Abel transform of the squares") {
    const BoundedSequence sq{[](std::size_t k) { return static_cast<double>(squares_indicator(k)); }, 1.0};
    const auto abel = PowerSeriesMethod::abel();
    CHECK(power_series_transform(sq, abel, 0.99) == doctest::Approx(0.0842429152748337).epsilon(1e-11));
    CHECK(power_series_transform(sq, abel, 0.9) == doctest::Approx(0.24780805705892311).epsilon(1e-11));
    CHECK(power_series_transform(sq, abel, 0.999) == doctest::Approx(0.02754549329167899).epsilon(1e-11));
    for (const double u : {0.5, 0.95, 0.9999}) {
        CHECK(power_series_transform(sq, abel, u) == doctest::Approx(oracle::theta_transform(u)).epsilon(1e-10));
    }
    const auto trend = power_series_limit_estimate(sq, abel);
    for (std::size_t i = 1; i < trend.trend.size(); ++i) {
        CHECK(trend.trend[i].second < trend.trend[i - 1].second);
    }
    CHECK(trend.estimate < 0.01);
}

TEST_CASE("power series methods are regular on constants") {
    const BoundedSequence c{[](std::size_t) { return 3.0; }, 3.0};
    CHECK(power_series_transform(c, PowerSeriesMethod::abel(), 0.9) == doctest::Approx(3.0).epsilon(1e-11));
    CHECK(power_series_transform(c, PowerSeriesMethod::borel(), 20.0) == doctest::Approx(3.0).epsilon(1e-11));
    const BoundedSequence conv{[](std::size_t k) { return 1.0 + 1.0 / static_cast<double>(k); }, 2.0};
    const auto trend = power_series_limit_estimate(conv, PowerSeriesMethod::borel());
    CHECK(trend.estimate == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("power series arguments") {
    const BoundedSequence c{[](std::size_t) { return 1.0; }, 1.0};
    CHECK_THROWS_AS((void)power_series_transform(c, PowerSeriesMethod::abel(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)power_series_transform(c, PowerSeriesMethod::abel(), 0.0), std::invalid_argument);
    const BoundedSequence unbounded{[](std::size_t k) { return static_cast<double>(k); }};
    CHECK_THROWS_AS((void)power_series_transform(unbounded, PowerSeriesMethod::abel(), 0.5), std::domain_error);
    CHECK_THROWS_AS((void)regularity_ratio(PowerSeriesMethod::abel(), 0, 0.5), std::invalid_argument);
    const auto ladder = PowerSeriesMethod::abel().ladder(1, 3);
    CHECK(ladder == std::vector<double>{0.5, 0.75, 0.875});
    CHECK(PowerSeriesMethod::borel().ladder(1, 2) == std::vector<double>{2.0, 4.0});
}

TEST_CASE("regularity ratio") {
    const auto abel = PowerSeriesMethod::abel();
    for (std::size_t j = 1; j <= 3; ++j) {
        double prev = HUGE_VAL;
        for (const double u : {0.9, 0.99, 0.999}) {
            const double r = regularity_ratio(abel, j, u);
            CHECK(std::abs(r - std::pow(u, static_cast<double>(j - 1)) * (1.0 - u)) <= 1e-15);
            CHECK(r < prev);
            prev = r;
        }
    }
    const auto borel = PowerSeriesMethod::borel();
    CHECK(regularity_ratio(borel, 3, 40.0) < regularity_ratio(borel, 3, 20.0));
}

TEST_CASE("rate scales") {
    const RateConfig ok{[](std::size_t n) { return 1.0 / std::sqrt(static_cast<double>(n)); },
                        [](double u) { return 1.0 - u; }};
    CHECK_NOTHROW(ok.validate(1000));
    const RateConfig bad{[](std::size_t n) { return static_cast<double>(n); }, [](double u) { return u; }};
    CHECK_THROWS_AS(bad.validate(10), std::invalid_argument);

    // x_k = 1/k against α_k = 1/√k: exactly k ≤ 101 have √k/k ≥ 0.0995, so C1 row m holds 101/m
    const IndexedSequence x = [](std::size_t k) { return 1.0 / static_cast<double>(k); };
    double expected = 0.0;
    for (std::size_t m = 2001; m <= 4000; ++m) {
        expected += 101.0 / static_cast<double>(m);
    }
    expected /= 2000.0;
    CHECK(little_o_density(x, ok, default_scheme(), 0.0995, 4000) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(little_o_density(x, ok, default_scheme(), 0.0995, 4000) < little_o_density(x, ok, default_scheme(), 0.0995, 1000));

    const BoundedSequence sq{[](std::size_t k) { return static_cast<double>(squares_indicator(k)); }, 1.0};
    const RateConfig sqrt_rate{[](std::size_t) { return 1.0; }, [](double u) { return std::sqrt(1.0 - u); }};
    double prev = 0.0;
    for (const double u : {0.9, 0.99, 0.999, 0.9999}) {
        const double r = rate_ratio(sq, PowerSeriesMethod::abel(), sqrt_rate, u);
        CHECK(r > 0.0);
        CHECK(r < 1.0);
        prev = r;
    }
    // (1 − u) Σ u^{k²} ~ √π/2 √(1 − u)
    CHECK(prev == doctest::Approx(std::sqrt(std::acos(-1.0)) / 2.0).epsilon(2e-2));
}
