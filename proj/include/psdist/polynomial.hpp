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

#ifndef PSDIST_POLYNOMIAL_HPP
#define PSDIST_POLYNOMIAL_HPP

#include "psdist/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace psdist {

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending powers and trimmed (canonical form), so equality is plain
/// coefficient-wise comparison.
class Polynomial {
  public:
    Polynomial() : coeffs_{Rational(0)} {}

    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(Rational(0));
        trim();
    }

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }

    static Polynomial monomial(const Rational& c, std::size_t power) {
        std::vector<Rational> v(power + 1, Rational(0));
        v[power] = c;
        return Polynomial(std::move(v));
    }

    /// The identity polynomial p(x) = x.
    static Polynomial x() { return monomial(Rational(1), 1); }

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0].is_zero(); }

    Rational coefficient(std::size_t power) const {
        return power < coeffs_.size() ? coeffs_[power] : Rational(0);
    }

    Rational leading() const { return coeffs_.back(); }

    Polynomial derivative() const {
        if (coeffs_.size() == 1) return Polynomial();
        std::vector<Rational> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            d[i - 1] = coeffs_[i] * Rational(static_cast<long long>(i));
        }
        return Polynomial(std::move(d));
    }

    /// Horner evaluation in doubles.
    double evaluate(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc = acc * x + to_double(coeffs_[i]);
        }
        return acc;
    }

    Rational evaluate_exact(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc = acc * x + coeffs_[i];
        }
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        std::vector<Rational> out = p.coeffs_;
        for (auto& v : out) v *= c;
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Human-readable form in descending powers, e.g. "8x^3 + 6x^2 + x".
    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Rational& c = coeffs_[i];
            if (c.is_zero()) continue;
            const Rational mag = abs(c);
            if (out.empty()) {
                if (c.sign() < 0) out += "-";
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            const bool unit = mag == Rational(1);
            if (i == 0 || !unit) out += mag.str();
            if (i >= 1) {
                out += var;
                if (i >= 2) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;  // ascending powers; back() != 0 unless zero poly
};

}  // namespace psdist

#endif  // PSDIST_POLYNOMIAL_HPP
