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
// The flagship distribution indexed by its mean x > 0. The parameter maps
//     y(x) = 8x(2x+1)/(4x+1)^2,        x(y) = (1 - sqrt(1-y)) / (4 sqrt(1-y))
// are exact inverses, with the convenient algebraic fact
//     1 - y(x) = 1/(4x+1)^2,
// so sqrt(1-y) = 1/(4x+1) never has to be recovered from a rounded y. The
// pmf composes the series coefficients with y(x):
//     pmf(k, x) = r_k * y(x)^k * sqrt((2x+1)/(4x+1)),
// the sqrt(2) factors of a_k and 1/w(y) having cancelled.
//
// pmf_printed() reproduces the circulating closed form
//     C(4k+1, 2k) 2^-k x^k (2k+1)^(k+1/2) (4k+1)^(-2k-3/2),
// which carries (2k+1)/(4k+1) where the composition has (2x+1)/(4x+1); the
// two agree only at x = k (in particular the printed form is 1 at k = 0 for
// every x, which no pmf can satisfy). Kept as a diagnostic.

#ifndef PSDIST_MEAN_PARAM_HPP
#define PSDIST_MEAN_PARAM_HPP

#include "psdist/rational.hpp"
#include "psdist/series.hpp"
#include "psdist/summation.hpp"
#include "psdist/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace psdist {

/// y(x) = 8x(2x+1)/(4x+1)^2; strictly increasing, onto (0,1).
inline double y_of_x(double x) {
    if (!(x > 0.0)) throw std::domain_error("y_of_x: x must be positive");
    const double q = 4.0 * x + 1.0;
    return 8.0 * x * (2.0 * x + 1.0) / (q * q);
}

/// Exact rational y(x); satisfies (4x+1)^2 y = 8x(2x+1) identically.
inline Rational y_of_x(const Rational& x) {
    if (x.sign() <= 0) throw std::domain_error("y_of_x: x must be positive");
    const Rational q = Rational(4) * x + Rational(1);
    return Rational(8) * x * (Rational(2) * x + Rational(1)) / (q * q);
}

/// x(y) = (1 - sqrt(1-y))/(4 sqrt(1-y)) on (0,1), computed in the
/// cancellation-free form y / (4s(1+s)) with s = sqrt(1-y).
inline double x_of_y(double y) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("x_of_y: y must be in (0,1)");
    const double s = std::sqrt(1.0 - y);
    return y / (4.0 * s * (1.0 + s));
}

namespace detail {

/// sqrt of a rational that must be a perfect square of a rational.
inline Rational exact_sqrt(const Rational& r) {
    if (r.sign() < 0) throw std::domain_error("exact_sqrt: negative");
    const BigInt n = boost::multiprecision::sqrt(r.num());
    const BigInt d = boost::multiprecision::sqrt(r.den());
    if (n * n != r.num() || d * d != r.den()) {
        throw std::domain_error("exact_sqrt: not a perfect rational square");
    }
    return Rational(n, d);
}

}  // namespace detail

/// Exact inverse of the rational y_of_x. Requires 1-y to be a perfect
/// rational square, which holds exactly on the image of rational means
/// (1 - y(x) = 1/(4x+1)^2). The double version cannot do this: rounding
/// y to 53 bits near 1 destroys more relative precision in x than some
/// callers can spare, which is why round-trip identities are checked here.
inline Rational x_of_y(const Rational& y) {
    if (y.sign() <= 0 || y >= Rational(1)) throw std::domain_error("x_of_y: y must be in (0,1)");
    const Rational s = detail::exact_sqrt(Rational(1) - y);
    return y / (Rational(4) * s * (Rational(1) + s));
}

/// Variance function v(x) = x(2x+1)(4x+1).
inline double variance_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("variance_fn: x must be positive");
    return x * (2.0 * x + 1.0) * (4.0 * x + 1.0);
}

/// One batch of draws, reproducible from (x, seed, n).
struct SampleBatch {
    double x = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> values;
};

/// The distribution with mean x. Immutable; pmf/cdf/quantile are pure and
/// sampling owns a private generator per call.
class MeanParamDistribution {
  public:
    explicit MeanParamDistribution(double x) : x_(x) {
        if (!(x > 0.0)) throw std::domain_error("MeanParamDistribution: x must be positive");
        y_ = y_of_x(x);
        sqrt_one_minus_y_ = 1.0 / (4.0 * x + 1.0);  // analytic, not sqrt(1-y_)
        log_y_ = std::log(8.0) + std::log(x) + std::log(2.0 * x + 1.0)
                 - 2.0 * std::log(4.0 * x + 1.0);
        front_ = std::sqrt((2.0 * x + 1.0) / (4.0 * x + 1.0));
        log_front_ = 0.5 * (std::log(2.0 * x + 1.0) - std::log(4.0 * x + 1.0));
    }

    double x() const { return x_; }
    double y() const { return y_; }
    double sqrt_one_minus_y() const { return sqrt_one_minus_y_; }

    /// pmf(k) = r_k y^k sqrt((2x+1)/(4x+1)). Direct product for small k;
    /// past k = 30 the factors can leave the double range individually, so
    /// the value is assembled in log space and exponentiated.
    double pmf(std::size_t k) const {
        if (k <= kDirectPmfLimit) {
            return to_double(series::coefficient_rational(k))
                   * std::pow(y_, static_cast<double>(k)) * front_;
        }
        return std::exp(log_pmf(k));
    }

    /// ln pmf(k), with ln r_k from log-gamma:
    /// r_k = (4k)! / ((2k)!^2 (2k+1) 16^k).
    double log_pmf(std::size_t k) const {
        const double kd = static_cast<double>(k);
        const double log_rk = std::lgamma(4.0 * kd + 1.0) - 2.0 * std::lgamma(2.0 * kd + 1.0)
                              - std::log(2.0 * kd + 1.0) - kd * std::log(16.0);
        return log_rk + kd * log_y_ + log_front_;
    }

    /// The circulating closed form (see header comment). Diagnostic.
    double pmf_printed(std::size_t k) const {
        const double kd = static_cast<double>(k);
        const double log_choose = std::lgamma(4.0 * kd + 2.0) - std::lgamma(2.0 * kd + 1.0)
                                  - std::lgamma(2.0 * kd + 2.0);
        const double lp = log_choose - kd * std::log(2.0) + kd * std::log(x_)
                          + (kd + 0.5) * std::log(2.0 * kd + 1.0)
                          - (2.0 * kd + 1.5) * std::log(4.0 * kd + 1.0);
        return std::exp(lp);
    }

    /// cdf(k) = sum_{j<=k} pmf(j), compensated.
    double cdf(std::size_t k) const {
        NeumaierSum sum;
        for (std::size_t j = 0; j <= k; ++j) sum.add(pmf(j));
        return std::min(sum.value(), 1.0);
    }

    /// Smallest k with cdf(k) >= u (left-continuous generalized inverse).
    std::size_t quantile(double u) const {
        if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("quantile: u must be in [0,1)");
        const double rho = geometric_ratio_cap(y_);
        const double tail_factor = rho / (1.0 - rho);
        NeumaierSum sum;
        std::size_t streak = 0;
        double prev = 0.0;
        for (std::size_t k = 0;; ++k) {
            const double p = pmf(k);
            sum.add(p);
            if (sum.value() >= u) return k;
            streak = (k > 0 && prev > 0.0 && p < rho * prev) ? streak + 1 : 0;
            prev = p;
            // u this close to 1 can sit above the float cdf forever; once the
            // bounded tail cannot reach it, this k is the answer in doubles.
            if (k >= 50 && streak >= 5 && sum.value() + p * tail_factor < u) return k;
        }
    }

    /// n draws by inversion of a shared cdf table; deterministic in seed.
    SampleBatch sample(std::size_t n, std::uint64_t seed) const {
        SampleBatch batch;
        batch.x = x_;
        batch.seed = seed;
        batch.values.reserve(n);

        std::vector<double> table;  // table[k] = cdf(k), monotone by construction
        NeumaierSum acc;
        auto extend_to = [&](double u) {
            while (table.empty() || table.back() < u) {
                const std::size_t k = table.size();
                const double p = pmf(k);
                acc.add(p);
                table.push_back(std::max(acc.value(), table.empty() ? 0.0 : table.back()));
                if (k > 100 && p == 0.0) break;  // float cdf saturated
            }
        };

        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            extend_to(u);
            const auto it = std::lower_bound(table.begin(), table.end(), u);
            batch.values.push_back(it == table.end()
                                       ? static_cast<std::uint64_t>(table.size() - 1)
                                       : static_cast<std::uint64_t>(it - table.begin()));
        }
        return batch;
    }

    /// Truncated normalization sum with tail bound.
    TruncatedSum total(double tail_target = std::numeric_limits<double>::infinity()) const {
        return truncated_pmf_sum([this](std::size_t k) { return pmf(k); }, y_, tail_target);
    }

    /// sum_k weight(k) pmf(k) with the polynomial-weight truncation rule.
    template <class Weight>
    double weighted_sum(Weight&& weight, double tol) const {
        return weighted_pmf_sum([this](std::size_t k) { return pmf(k); },
                                std::forward<Weight>(weight), y_, tol);
    }

  private:
    static constexpr std::size_t kDirectPmfLimit = 30;

    double x_;
    double y_;
    double sqrt_one_minus_y_;
    double log_y_;
    double front_;      // sqrt((2x+1)/(4x+1)) = pmf(0)
    double log_front_;
};

inline double pmf(std::size_t k, double x) { return MeanParamDistribution(x).pmf(k); }
inline double log_pmf(std::size_t k, double x) { return MeanParamDistribution(x).log_pmf(k); }
inline double pmf_printed(std::size_t k, double x) { return MeanParamDistribution(x).pmf_printed(k); }
inline double cdf(std::size_t k, double x) { return MeanParamDistribution(x).cdf(k); }
inline std::size_t quantile(double u, double x) { return MeanParamDistribution(x).quantile(u); }
inline SampleBatch sample(std::size_t n, double x, std::uint64_t seed) {
    return MeanParamDistribution(x).sample(n, seed);
}

}  // namespace psdist

#endif  // PSDIST_MEAN_PARAM_HPP
