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

#ifndef PSDIST_RATIONAL_HPP
#define PSDIST_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace psdist {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

/// gcd with one modular reduction up front. The stock binary gcd walks the
/// full bit length of the larger operand even when the other is tiny, which
/// turns lopsided reductions (huge running value, small step factor) from
/// linear into quadratic.
inline BigInt lopsided_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    if (a == 0) return b;
    if (b == 0) return a;
    if (a < b) a.swap(b);
    a %= b;
    if (a == 0) return b;
    return boost::multiprecision::gcd(a, b);
}

}  // namespace detail

/// Arbitrary-precision signed rational. Always kept in lowest terms with a
/// positive denominator; every arithmetic operation is exact.
///
/// Arithmetic reduces with cross-gcds of the operands' parts (the classical
/// reduced-fraction algorithms), so a product with a small factor never pays
/// for a gcd of two huge values. That keeps long recurrence sweeps over
/// thousand-digit coefficients close to linear cost per step.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(const BigInt& n) : num_(n), den_(1) {}

    Rational(BigInt num, BigInt den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const BigInt g = detail::lopsided_gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Adopts an already-reduced pair (gcd(num, den) == 1, den > 0) without
    /// re-running the gcd.
    static Rational from_reduced(BigInt num, BigInt den) {
        Rational r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    Rational& operator+=(const Rational& o) {
        const BigInt d1 = detail::lopsided_gcd(den_, o.den_);
        if (d1 == 1) {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ *= o.den_;
        } else {
            const BigInt t = num_ * (o.den_ / d1) + o.num_ * (den_ / d1);
            const BigInt d2 = detail::lopsided_gcd(t, d1);
            num_ = t / d2;
            den_ = (den_ / d1) * (o.den_ / d2);
        }
        return *this;
    }

    Rational& operator-=(const Rational& o) {
        Rational neg;
        neg.num_ = -o.num_;
        neg.den_ = o.den_;
        return *this += neg;
    }

    Rational& operator*=(const Rational& o) {
        const BigInt g1 = detail::lopsided_gcd(num_, o.den_);
        const BigInt g2 = detail::lopsided_gcd(o.num_, den_);
        num_ = (num_ / g1) * (o.num_ / g2);
        den_ = (den_ / g2) * (o.den_ / g1);
        return *this;
    }

    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        const BigInt g1 = detail::lopsided_gcd(num_, o.num_);
        const BigInt g2 = detail::lopsided_gcd(den_, o.den_);
        num_ = (num_ / g1) * (o.den_ / g2);
        den_ = (den_ / g2) * (o.num_ / g1);
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// "num/den", or just "num" when the denominator is 1.
    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Nearest double (to within a couple of ulps). Numerator and denominator
    /// may individually dwarf the double range as long as their ratio fits:
    /// both are truncated to their top ~160 bits before the one division that
    /// produces the 80-bit quotient, so the cost stays linear in their size.
    double to_double() const {
        if (num_ == 0) return 0.0;
        const bool neg = num_ < 0;
        BigInt n = neg ? BigInt(-num_) : num_;
        BigInt d = den_;
        constexpr long kKeepBits = 160;
        const long nbits = static_cast<long>(boost::multiprecision::msb(n));
        const long dbits = static_cast<long>(boost::multiprecision::msb(d));
        long exponent = -80;
        if (nbits > kKeepBits) {
            n >>= nbits - kKeepBits;
            exponent += nbits - kKeepBits;
        }
        if (dbits > kKeepBits) {
            d >>= dbits - kKeepBits;
            exponent -= dbits - kKeepBits;
        }
        const BigInt q = (n << 80) / d;
        const double v = std::ldexp(q.convert_to<double>(), static_cast<int>(exponent));
        return neg ? -v : v;
    }

  private:
    BigInt num_;
    BigInt den_;  // > 0; gcd(num_, den_) == 1
};

inline double to_double(const Rational& r) { return r.to_double(); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// r^e for a non-negative integer exponent.
inline Rational pow(const Rational& r, unsigned e) {
    Rational acc(1);
    Rational base = r;
    while (e != 0) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt num = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= n - i;
        num /= i + 1;  // product of i+1 consecutive integers is divisible by (i+1)!
    }
    return num;
}

}  // namespace psdist

#endif  // PSDIST_RATIONAL_HPP
