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
// Exact moment polynomials in the mean x, for the flagship distribution with
// variance function v(x) = x(2x+1)(4x+1). The recurrences come from the
// generating-function differential equations, differentiated m times in z
// at z = 0:
//   raw       alpha_{m+1} = x alpha_m + v alpha_m'          alpha_0=1, alpha_1=x
//   central   mu_{m+1}    = v (mu_m' + m mu_{m-1})          mu_0=1,    mu_1=0
//   cumulant  chi_{m+1}   = v chi_m'                        chi_1=x
//
// A variant of the central recurrence circulates with the m mu_{m-1} term
// OUTSIDE the v(x) factor; it already fails at mu_2 (giving 1 instead of the
// variance), so central_moment_printed() keeps it purely as a diagnostic,
// selected against by the mu_2 = v gate. Independent cross-checks:
// central_from_raw (binomial transform) and cumulant_from_raw (classical
// moment-cumulant recursion).

#ifndef PSDIST_MOMENTS_HPP
#define PSDIST_MOMENTS_HPP

#include "psdist/polynomial.hpp"
#include "psdist/rational.hpp"

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace psdist {

enum class MomentKind { raw, central, cumulant };

inline const char* moment_kind_name(MomentKind kind) {
    switch (kind) {
        case MomentKind::raw: return "raw";
        case MomentKind::central: return "central";
        default: return "cumulant";
    }
}

/// An exact moment polynomial in the mean x.
struct MomentPolynomial {
    MomentKind kind;
    std::size_t order;
    Polynomial poly;
};

/// v(x) = x(2x+1)(4x+1) = 8x^3 + 6x^2 + x.
inline const Polynomial& variance_polynomial() {
    static const Polynomial v({Rational(0), Rational(1), Rational(6), Rational(8)});
    return v;
}

namespace detail {

// Extends an append-only table of polynomials under a writer lock; readers
// share. step(table) must produce the next entry from the existing ones.
template <class Step>
Polynomial table_at(std::vector<Polynomial>& table, std::shared_mutex& mutex,
                    std::size_t m, Step&& step) {
    {
        std::shared_lock lock(mutex);
        if (m < table.size()) return table[m];
    }
    std::unique_lock lock(mutex);
    while (table.size() <= m) table.push_back(step(table));
    return table[m];
}

}  // namespace detail

/// Raw moment polynomial alpha_m.
inline MomentPolynomial raw_moment(std::size_t m) {
    static std::vector<Polynomial> table{Polynomial::constant(Rational(1)), Polynomial::x()};
    static std::shared_mutex mutex;
    Polynomial p = detail::table_at(table, mutex, m, [](const std::vector<Polynomial>& t) {
        const Polynomial& prev = t.back();
        return Polynomial::x() * prev + variance_polynomial() * prev.derivative();
    });
    return {MomentKind::raw, m, std::move(p)};
}

/// Central moment polynomial mu_m, via mu_{m+1} = v (mu_m' + m mu_{m-1}).
inline MomentPolynomial central_moment(std::size_t m) {
    static std::vector<Polynomial> table{Polynomial::constant(Rational(1)), Polynomial()};
    static std::shared_mutex mutex;
    Polynomial p = detail::table_at(table, mutex, m, [](const std::vector<Polynomial>& t) {
        const std::size_t prev_order = t.size() - 1;
        const Polynomial weighted =
            Rational(static_cast<long long>(prev_order)) * t[prev_order - 1];
        return variance_polynomial() * (t[prev_order].derivative() + weighted);
    });
    return {MomentKind::central, m, std::move(p)};
}

/// The circulating central-moment recurrence with m mu_{m-1} outside the
/// v(x) factor. Yields mu_2 = 1; diagnostic only.
inline MomentPolynomial central_moment_printed(std::size_t m) {
    std::vector<Polynomial> t{Polynomial::constant(Rational(1)), Polynomial()};
    while (t.size() <= m) {
        const std::size_t prev_order = t.size() - 1;
        t.push_back(Rational(static_cast<long long>(prev_order)) * t[prev_order - 1]
                    + variance_polynomial() * t[prev_order].derivative());
    }
    return {MomentKind::central, m, std::move(t[m])};
}

/// Cumulant polynomial chi_m, m >= 1.
inline MomentPolynomial cumulant(std::size_t m) {
    if (m == 0) throw std::invalid_argument("cumulant: order must be >= 1");
    static std::vector<Polynomial> table{Polynomial(), Polynomial::x()};  // chi_0 = 0
    static std::shared_mutex mutex;
    Polynomial p = detail::table_at(table, mutex, m, [](const std::vector<Polynomial>& t) {
        return variance_polynomial() * t.back().derivative();
    });
    return {MomentKind::cumulant, m, std::move(p)};
}

/// Independent oracle: mu_m = sum_j C(m,j) (-1)^(m-j) alpha_j x^(m-j),
/// the binomial transform of the raw moments about the mean alpha_1 = x.
inline MomentPolynomial central_from_raw(std::size_t m) {
    Polynomial acc;
    for (std::size_t j = 0; j <= m; ++j) {
        Rational c(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)));
        if ((m - j) % 2 == 1) c = -c;
        acc += c * (raw_moment(j).poly * Polynomial::monomial(Rational(1), m - j));
    }
    return {MomentKind::central, m, std::move(acc)};
}

/// Independent oracle: the classical recursion
/// chi_m = alpha_m - sum_{j<m} C(m-1, j-1) chi_j alpha_{m-j}.
inline MomentPolynomial cumulant_from_raw(std::size_t m) {
    if (m == 0) throw std::invalid_argument("cumulant_from_raw: order must be >= 1");
    std::vector<Polynomial> chi{Polynomial()};
    for (std::size_t order = 1; order <= m; ++order) {
        Polynomial acc = raw_moment(order).poly;
        for (std::size_t j = 1; j < order; ++j) {
            const Rational c(binomial(static_cast<unsigned>(order - 1),
                                      static_cast<unsigned>(j - 1)));
            acc -= c * (chi[j] * raw_moment(order - j).poly);
        }
        chi.push_back(std::move(acc));
    }
    return {MomentKind::cumulant, m, std::move(chi[m])};
}

/// Horner evaluation of a moment polynomial at the mean x.
inline double evaluate(const MomentPolynomial& p, double x) {
    return p.poly.evaluate(x);
}

}  // namespace psdist

#endif  // PSDIST_MOMENTS_HPP
