// Copyright 2026 The psdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psdist/series.hpp"

#include "psdist/validation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <thread>
#include <vector>

using psdist::Rational;
namespace series = psdist::series;

TEST_CASE("half binomial coefficients") {
    CHECK(series::half_binomial(0) == Rational(1));
    CHECK(series::half_binomial(1) == Rational(1, 2));
    // direct product (1/2)(-1/2)(-3/2)/3!
    const Rational direct = Rational(1, 2) * Rational(-1, 2) * Rational(-3, 2) / Rational(6);
    CHECK(direct == Rational(1, 16));
    CHECK(series::half_binomial(3) == direct);
    CHECK(series::half_binomial(4) == Rational(-5, 128));

    // sign alternates as (-1)^(k+1) for k >= 1
    for (std::size_t k = 1; k <= 100; ++k) {
        CHECK(series::half_binomial(k).sign() == (k % 2 == 1 ? 1 : -1));
    }
}

TEST_CASE("derivation-based coefficients match frozen values") {
    CHECK(series::coefficient(0).rational_part == Rational(1));
    CHECK(series::coefficient(1).rational_part == Rational(1, 8));
    CHECK(series::coefficient(2).rational_part == Rational(7, 128));
    CHECK(series::coefficient(3).rational_part == Rational(33, 1024));
    CHECK(series::coefficient(4).rational_part == Rational(715, 32768));
    CHECK(series::coefficient(7).rational_part == Rational(334305, 33554432));
    CHECK(series::coefficient(5).index == 5);

    // r_m = 2 * C(1/2, 2m+1) by construction
    for (std::size_t m = 0; m <= 40; ++m) {
        CHECK(series::coefficient_rational(m) == Rational(2) * series::half_binomial(2 * m + 1));
    }
}

TEST_CASE("printed closed form disagrees with the derivation from m=1") {
    CHECK(series::printed_coefficient(0) == Rational(1));
    CHECK(series::printed_coefficient(0) == series::coefficient_rational(0));
    CHECK(series::printed_coefficient(1) == Rational(1, 4));
    CHECK(series::printed_coefficient(1) != series::coefficient_rational(1));
    CHECK(series::printed_coefficient(2) == Rational(21, 16));
    // off by exactly (2m)!
    for (std::size_t m = 1; m <= 10; ++m) {
        CHECK(series::printed_coefficient(m)
              == series::coefficient_rational(m) * Rational(psdist::factorial(2 * static_cast<unsigned>(m))));
    }
}

TEST_CASE("formal square-root oracle confirms the derivation up to m=30") {
    const auto oracle = psdist::detail::sqrt_series_oracle(31);
    for (std::size_t m = 0; m <= 30; ++m) {
        CHECK(oracle[m] == series::coefficient_rational(m));
    }
}

TEST_CASE("eval_w closed form") {
    CHECK(series::eval_w(0.0) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-15));
    // sqrt(1 - 24/25) = 1/5 exactly, so w = (6/5)^(-1/2)
    CHECK(series::eval_w(24.0 / 25.0) == Catch::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-15));
    CHECK(series::eval_w(1.0 - 1e-12) == Catch::Approx(1.0).margin(1e-6));

    CHECK_THROWS_AS(series::eval_w(-0.1), std::domain_error);
    CHECK_THROWS_AS(series::eval_w(1.0), std::domain_error);
    CHECK_THROWS_AS(series::eval_w(1.5), std::domain_error);
    CHECK_THROWS_AS(series::eval_w(std::nan("")), std::domain_error);
}

TEST_CASE("partial sums converge to the closed form") {
    CHECK(series::partial_sum(0.0, 1) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(series::partial_sum(0.0, 50) == Catch::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(series::partial_sum(0.5, 200)
          == Catch::Approx(series::eval_w(0.5)).margin(1e-12));
    CHECK_THROWS_AS(series::partial_sum(0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(series::partial_sum(-0.2, 10), std::domain_error);
}

TEST_CASE("truncation error is controlled by the tail bound") {
    const double short_sum = series::partial_sum(0.9, 10);
    const double long_sum = series::partial_sum(0.9, 1000);
    CHECK(std::abs(long_sum - short_sum) <= series::tail_bound(0.9, 10));
}

TEST_CASE("tail bound formula and domination") {
    CHECK(series::tail_bound(0.0, 1) == 0.0);
    const double expected = series::coefficient_value(10) * std::pow(0.5, 10) / 0.5;
    CHECK(series::tail_bound(0.5, 10) == Catch::Approx(expected).epsilon(1e-15));
    CHECK_THROWS_AS(series::tail_bound(1.0, 3), std::domain_error);

    // brute-force tails with 10,000 terms stay under the bound
    for (const double y : {0.1, 0.5, 0.9}) {
        for (const std::size_t from : {std::size_t{1}, std::size_t{5}, std::size_t{40}}) {
            double brute = 0.0;
            for (std::size_t m = 10'000; m-- > from;) {
                brute += series::coefficient_value(m) * std::pow(y, static_cast<double>(m));
            }
            CHECK(series::tail_bound(y, from) >= brute);
        }
    }
}

TEST_CASE("coefficient positivity and ratio monotonicity up to 500") {
    Rational prev = series::coefficient_rational(0);
    CHECK(prev.sign() > 0);
    for (std::size_t m = 1; m <= 500; ++m) {
        const Rational r = series::coefficient_rational(m);
        CHECK(r.sign() > 0);
        CHECK(r < prev);  // ratio < 1, exactly
        if (m >= 10) {
            const double ratio = psdist::to_double(r / prev);
            CHECK(ratio > 0.5);
            CHECK(ratio < 1.0);
        }
        prev = r;
    }
}

TEST_CASE("series identity at the probe grid") {
    for (const double y : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double diff = std::abs(series::partial_sum(y, 400) - series::eval_w(y));
        CHECK(diff <= series::tail_bound(y, 400) + 1e-12);
    }
}

TEST_CASE("coefficient cache is consistent under concurrent access") {
    std::vector<std::thread> threads;
    std::vector<Rational> results(8);
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([t, &results] {
            Rational acc(0);
            for (std::size_t m = 0; m <= 300; ++m) acc += series::coefficient_rational(m);
            results[static_cast<std::size_t>(t)] = acc;
        });
    }
    for (auto& th : threads) th.join();
    for (int t = 1; t < 8; ++t) {
        CHECK(results[static_cast<std::size_t>(t)] == results[0]);
    }
}
