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
// Truncation rule for pmf series. The coefficient ratios of the families in
// this library tend to the series argument y from below, so past a burn-in
// the pmf is dominated by a geometric series with ratio barely above y. We
// stop once the observed term ratio has stayed under that dominating ratio
// for 5 consecutive indices (never before k = 50) and bound the remainder by
// pmf(K) * rho / (1 - rho).

#ifndef PSDIST_TRUNCATION_HPP
#define PSDIST_TRUNCATION_HPP

#include "psdist/summation.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace psdist {

/// Dominating geometric ratio for tails of a pmf with series argument y.
/// y + 0.01 when that stays clear of 1, otherwise the midpoint toward 1
/// (still above every true term ratio, still summable). Entire families can
/// run at y >= 1; their term ratios fall like y/k, so a fixed cap below 1
/// dominates once the streak check has seen the decay.
inline double geometric_ratio_cap(double y) {
    const double r = y + 0.01;
    if (r <= 0.999) return r;
    if (y < 1.0) return 0.5 * (1.0 + y);
    return 0.995;
}

struct TruncatedSum {
    double sum = 0.0;        // compensated partial sum
    double tail = 0.0;       // geometric bound on everything past last_k
    double ratio = 0.0;      // dominating ratio used for the bound
    std::size_t last_k = 0;  // last index included in sum
};

/// Sums pmf(k) from k = 0 under the truncation rule. When tail_target is
/// finite the scan keeps going until the tail bound drops below it.
template <class Pmf>
TruncatedSum truncated_pmf_sum(Pmf&& pmf, double y,
                               double tail_target = std::numeric_limits<double>::infinity(),
                               std::size_t min_k = 50) {
    const double rho = geometric_ratio_cap(y);
    const double tail_factor = rho / (1.0 - rho);
    constexpr std::size_t kMaxTerms = 20'000'000;

    NeumaierSum sum;
    double prev = 0.0;
    std::size_t streak = 0;  // consecutive indices with ratio < rho (or exact zeros)
    for (std::size_t k = 0; k < kMaxTerms; ++k) {
        const double p = pmf(k);
        sum.add(p);
        if (k > 0) {
            if (p == 0.0 ? prev == 0.0 : (prev > 0.0 && p < rho * prev)) {
                ++streak;
            } else {
                streak = 0;
            }
        }
        prev = p;
        const double tail = p == 0.0 ? 0.0 : p * tail_factor;
        if (k >= min_k && streak >= 5 && tail <= tail_target) {
            return {sum.value(), tail, rho, k};
        }
    }
    throw std::runtime_error("truncated_pmf_sum: no convergence within term budget");
}

/// Sum of weight(k) * pmf(k). Runs the base truncation rule, then keeps
/// extending until pmf(k) * |weight(k)| < tol/100 for 10 consecutive k, so
/// polynomially growing weights cannot outrun the discarded tail.
template <class Pmf, class Weight>
double weighted_pmf_sum(Pmf&& pmf, Weight&& weight, double y, double tol,
                        std::size_t min_k = 50) {
    const double rho = geometric_ratio_cap(y);
    const double small = tol / 100.0;
    constexpr std::size_t kMaxTerms = 20'000'000;

    NeumaierSum sum;
    double prev = 0.0;
    std::size_t ratio_streak = 0;
    std::size_t small_streak = 0;
    for (std::size_t k = 0; k < kMaxTerms; ++k) {
        const double p = pmf(k);
        const double term = p * weight(k);
        sum.add(term);
        if (k > 0) {
            if (p == 0.0 ? prev == 0.0 : (prev > 0.0 && p < rho * prev)) {
                ++ratio_streak;
            } else {
                ratio_streak = 0;
            }
        }
        prev = p;
        small_streak = std::abs(term) < small ? small_streak + 1 : 0;
        if (k >= min_k && ratio_streak >= 5 && small_streak >= 10) {
            return sum.value();
        }
    }
    throw std::runtime_error("weighted_pmf_sum: no convergence within term budget");
}

}  // namespace psdist

#endif  // PSDIST_TRUNCATION_HPP
