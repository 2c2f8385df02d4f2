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
//
// Exact Taylor coefficients of w(y) = (1 + sqrt(1-y))^(-1/2).
//
// The expansion comes from the algebraic identity
//     w(y) = sqrt((1 - sqrt(1-y)) / y)
//          = sqrt((1+sqrt(y))/(2y)) - sqrt((1-sqrt(y))/(2y)),
// whose binomial series leaves only the odd-index terms:
//     sqrt(2) * w(y) = sum_m  2 * C(1/2, 2m+1) * y^m.
// We write a_m = r_m / sqrt(2) with r_m = 2 * C(1/2, 2m+1), so the rational
// part r_m stays exact and the common irrational factor can cancel downstream.
//
// A second closed form for the same coefficient circulates as
// (4m)! 16^-m / ((2m)! (2m+1)); it disagrees with the expansion above from
// m = 1 on (1/4 vs 1/8). printed_coefficient() evaluates that variant so the
// validation layer can report the mismatch; coefficient() is authoritative.

#ifndef PSDIST_SERIES_HPP
#define PSDIST_SERIES_HPP

#include "psdist/rational.hpp"
#include "psdist/summation.hpp"

#include <cmath>
#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace psdist::series {

/// Generalized binomial coefficient C(1/2, k), by the running product
/// C(1/2,k) = C(1/2,k-1) * (1/2 - k + 1) / k.
inline Rational half_binomial(std::size_t k) {
    Rational c(1);
    for (std::size_t i = 1; i <= k; ++i) {
        c *= Rational(BigInt(3) - 2 * BigInt(i), 2 * BigInt(i));
    }
    return c;
}

/// The m-th series coefficient: a_m = rational_part / sqrt(2).
struct SeriesCoefficient {
    std::size_t index;
    Rational rational_part;
};

namespace detail {

// Memoized table of r_m = 2 * C(1/2, 2m+1), plus the float values
// a_m = r_m / sqrt(2). Append-only; concurrent readers share the lock.
//
// Stepping both binomial factors at once gives the positive ratio
//     r_{m+1} / r_m = (4m+1)(4m+3) / (4 (2m+2)(2m+3)).
// The running value is kept as an explicit coprime pair and only the small
// step factors are reduced against it (gcd of a huge value with a small one
// is one division); renormalizing the full pair each step would cost a
// huge-by-huge gcd per coefficient.
class CoefficientCache {
  public:
    static CoefficientCache& instance() {
        static CoefficientCache cache;
        return cache;
    }

    Rational rational(std::size_t m) {
        {
            std::shared_lock lock(mutex_);
            if (m < r_.size()) return r_[m];
        }
        extend(m);
        std::shared_lock lock(mutex_);
        return r_[m];
    }

    double value(std::size_t m) {
        {
            std::shared_lock lock(mutex_);
            if (m < a_.size()) return a_[m];
        }
        extend(m);
        std::shared_lock lock(mutex_);
        return a_[m];
    }

  private:
    CoefficientCache() {
        r_.push_back(Rational(1));
        a_.push_back(inv_sqrt2());
    }

    static double inv_sqrt2() { return std::sqrt(0.5); }

    void extend(std::size_t m) {
        std::unique_lock lock(mutex_);
        while (r_.size() <= m) {
            const std::size_t k = r_.size() - 1;
            const Rational step(BigInt(4 * k + 1) * BigInt(4 * k + 3),
                                BigInt(4) * BigInt(2 * k + 2) * BigInt(2 * k + 3));
            Rational r = r_.back() * step;
            if (r.sign() <= 0) throw std::logic_error("series coefficient not positive");
            a_.push_back(r.to_double() * inv_sqrt2());
            r_.push_back(std::move(r));
        }
    }

    mutable std::shared_mutex mutex_;
    std::vector<Rational> r_;
    std::vector<double> a_;
};

}  // namespace detail

/// Exact rational part r_m of the m-th coefficient (a_m = r_m / sqrt(2)),
/// derived as 2 * C(1/2, 2m+1). O(1) amortized after one O(m) sweep.
inline SeriesCoefficient coefficient(std::size_t m) {
    return {m, detail::CoefficientCache::instance().rational(m)};
}

inline Rational coefficient_rational(std::size_t m) {
    return detail::CoefficientCache::instance().rational(m);
}

/// a_m as a double.
inline double coefficient_value(std::size_t m) {
    return detail::CoefficientCache::instance().value(m);
}

/// The circulating closed form (4m)! 16^-m / ((2m)! (2m+1)) for r_m.
/// Diagnostic only: disagrees with coefficient() from m = 1 on.
inline Rational printed_coefficient(std::size_t m) {
    const unsigned mu = static_cast<unsigned>(m);
    BigInt den = factorial(2 * mu) * BigInt(2 * mu + 1);
    den <<= 4 * mu;  // * 16^m
    return Rational(factorial(4 * mu), den);
}

/// w(y) = (1 + sqrt(1-y))^(-1/2) on [0, 1). 1-y is exact for y in [1/2, 1)
/// (Sterbenz), so the relative error stays within a few ulps everywhere.
inline double eval_w(double y) {
    if (!(y >= 0.0 && y < 1.0)) throw std::domain_error("eval_w: y must be in [0,1)");
    return 1.0 / std::sqrt(1.0 + std::sqrt(1.0 - y));
}

/// Compensated partial sum  sum_{m < terms} a_m y^m.
inline double partial_sum(double y, std::size_t terms) {
    if (!(y >= 0.0 && y < 1.0)) throw std::domain_error("partial_sum: y must be in [0,1)");
    if (terms == 0) throw std::invalid_argument("partial_sum: need at least one term");
    auto& cache = detail::CoefficientCache::instance();
    NeumaierSum sum;
    double ypow = 1.0;
    for (std::size_t m = 0; m < terms; ++m) {
        sum.add(cache.value(m) * ypow);
        ypow *= y;
    }
    return sum.value();
}

/// Upper bound on the tail sum_{m >= from_index} a_m y^m. Valid because the
/// coefficient ratio a_{m+1}/a_m is below 1, so the tail is dominated by the
/// geometric series a_from * y^from * (1 + y + y^2 + ...).
inline double tail_bound(double y, std::size_t from_index) {
    if (!(y >= 0.0 && y < 1.0)) throw std::domain_error("tail_bound: y must be in [0,1)");
    const double lead = coefficient_value(from_index) * std::pow(y, static_cast<double>(from_index));
    return lead / (1.0 - y);
}

}  // namespace psdist::series

#endif  // PSDIST_SERIES_HPP
