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
// Generic power series distributions in the y-parameterization: a family is
// a power series w(y) = sum a_k y^k with nonnegative coefficients, and the
// law it induces is p_k(y) = a_k y^k / w(y). Float precision throughout;
// the exact machinery lives with the flagship series in series.hpp.

#ifndef PSDIST_POWER_SERIES_HPP
#define PSDIST_POWER_SERIES_HPP

#include "psdist/series.hpp"
#include "psdist/truncation.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psdist {

/// A power-series family: coefficient stream a_k >= 0, evaluator for w, and
/// its parameter range. w_prime / w_second are optional analytic derivatives;
/// when absent, central finite differences stand in.
///
/// radius is the convergence radius (may be infinite); probe_radius is the
/// finite scale validation grids sweep, at most the radius.
struct PowerSeriesFamily {
    std::string name;
    std::function<double(std::size_t)> coefficient;
    std::function<double(double)> w;
    double radius = 1.0;
    double probe_radius = 1.0;
    std::function<double(double)> w_prime;
    std::function<double(double)> w_second;
};

/// A family pinned at a parameter value 0 < y < R.
class YParamState {
  public:
    YParamState(PowerSeriesFamily family, double y)
        : family_(std::move(family)), y_(y) {
        if (!(y > 0.0 && y < family_.radius)) {
            throw std::domain_error("YParamState: y must be in (0, R)");
        }
    }

    const PowerSeriesFamily& family() const { return family_; }
    double y() const { return y_; }

  private:
    PowerSeriesFamily family_;
    double y_;
};

/// p_k(y) = a_k y^k / w(y).
inline double pmf_y(const YParamState& state, std::size_t k) {
    const double ak = state.family().coefficient(k);
    if (ak == 0.0) return 0.0;
    const double y = state.y();
    return ak * std::pow(y, static_cast<double>(k)) / state.family().w(y);
}

namespace detail {

inline double w_prime_of(const PowerSeriesFamily& f, double y) {
    if (f.w_prime) return f.w_prime(y);
    const double h = y * 1e-6;
    return (f.w(y + h) - f.w(y - h)) / (2.0 * h);
}

}  // namespace detail

/// Mean of the distribution: y w'(y) / w(y).
inline double mean_y(const YParamState& state) {
    const double y = state.y();
    return y * detail::w_prime_of(state.family(), y) / state.family().w(y);
}

/// Variance: y * d(mean)/dy, evaluated as var = mean + y^2 w''/w - mean^2.
/// Without an analytic w'' a second central difference stands in; its step
/// y * eps^(1/4) balances truncation against roundoff (differencing the
/// mean itself would stack two first differences and lose ~5 digits).
inline double variance_y(const YParamState& state) {
    const auto& f = state.family();
    const double y = state.y();
    const double m = mean_y(state);
    double wpp;
    if (f.w_second) {
        wpp = f.w_second(y);
    } else {
        const double h = y * 1.2e-4;
        wpp = (f.w(y + h) - 2.0 * f.w(y) + f.w(y - h)) / (h * h);
    }
    return m + y * y * wpp / f.w(y) - m * m;
}

/// Truncated total sum of the pmf, with geometric tail bound.
inline TruncatedSum pmf_total(const YParamState& state,
                              double tail_target = std::numeric_limits<double>::infinity()) {
    return truncated_pmf_sum([&](std::size_t k) { return pmf_y(state, k); },
                             state.y(), tail_target);
}

/// Sum of weight(k) * pmf(k), extended until the weighted terms stay small.
template <class Weight>
double pmf_weighted_sum(const YParamState& state, Weight&& weight, double tol) {
    return weighted_pmf_sum([&](std::size_t k) { return pmf_y(state, k); },
                            std::forward<Weight>(weight), state.y(), tol);
}

/// Inverts the (strictly increasing) mean map: the y at which the family's
/// mean equals x. Bisection; the mean is monotone because dx/dy = var/y > 0.
inline double mean_to_y(const PowerSeriesFamily& family, double x) {
    if (!(x > 0.0)) throw std::domain_error("mean_to_y: mean must be positive");
    double hi;
    if (std::isfinite(family.radius)) {
        hi = family.radius * (1.0 - 1e-13);
        if (mean_y(YParamState(family, hi)) < x) {
            throw std::domain_error("mean_to_y: mean not attained below the radius");
        }
    } else {
        hi = 1.0;
        while (mean_y(YParamState(family, hi)) < x) {
            hi *= 2.0;
            if (hi > 1e8) throw std::domain_error("mean_to_y: mean not attained");
        }
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (mean_y(YParamState(family, mid)) < x ? lo : hi) = mid;
    }
    return hi;
}

/// Variance function of the family: variance at the parameter where the
/// mean equals x.
inline double variance_at_mean(const PowerSeriesFamily& family, double x) {
    return variance_y(YParamState(family, mean_to_y(family, x)));
}

/// The worked example families plus the library's flagship series.
///   bernoulli: w = 1 + y        variance function x(1-x)
///   poisson:   w = e^y          variance function x
///   geometric: w = 1/(1-y)      variance function x(1+x)
///   flagship:  w = (1+sqrt(1-y))^(-1/2)
/// The geometric entry is stated with positive coefficients a_k = 1; the
/// (y-1)^(-1) form seen elsewhere has a_k = -1 throughout and produces the
/// same quotient, but would violate the nonnegativity requirement literally.
inline std::vector<PowerSeriesFamily> example_registry() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<PowerSeriesFamily> families;

    families.push_back({
        "bernoulli",
        [](std::size_t k) { return k <= 1 ? 1.0 : 0.0; },
        [](double y) { return 1.0 + y; },
        inf,
        4.0,
        [](double) { return 1.0; },
        [](double) { return 0.0; },
    });

    families.push_back({
        "poisson",
        [](std::size_t k) { return std::exp(-std::lgamma(static_cast<double>(k) + 1.0)); },
        [](double y) { return std::exp(y); },
        inf,
        8.0,
        [](double y) { return std::exp(y); },
        [](double y) { return std::exp(y); },
    });

    families.push_back({
        "geometric",
        [](std::size_t) { return 1.0; },
        [](double y) { return 1.0 / (1.0 - y); },
        1.0,
        1.0,
        [](double y) { return 1.0 / ((1.0 - y) * (1.0 - y)); },
        [](double y) { return 2.0 / ((1.0 - y) * (1.0 - y) * (1.0 - y)); },
    });

    families.push_back({
        "flagship",
        [](std::size_t k) { return series::coefficient_value(k); },
        [](double y) { return series::eval_w(y); },
        1.0,
        1.0,
        // w' and w'' in terms of s = sqrt(1-y)
        [](double y) {
            const double s = std::sqrt(1.0 - y);
            return std::pow(1.0 + s, -1.5) / (4.0 * s);
        },
        [](double y) {
            const double s = std::sqrt(1.0 - y);
            return (5.0 * s + 2.0) / (16.0 * s * s * s * std::pow(1.0 + s, 2.5));
        },
    });

    return families;
}

/// Registry lookup by name; throws if unknown.
inline PowerSeriesFamily family_by_name(const std::string& name) {
    for (auto& f : example_registry()) {
        if (f.name == name) return f;
    }
    throw std::invalid_argument("unknown family: " + name);
}

}  // namespace psdist

#endif  // PSDIST_POWER_SERIES_HPP
