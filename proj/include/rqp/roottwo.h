#pragma once

#include <string>

#include "rqp/exact.h"

namespace rqp {

/// Exact scalar of the form (a + b*sqrt(2)) / 2^m.
///
/// This ring holds every value the path-sum engines produce: dyadic
/// rationals, powers of 1/sqrt(2), and their sums. Values are kept
/// canonical (a and b never both even while m > 0), so equality is plain
/// field comparison.
struct RootTwoValue {
    Int a = 0;
    Int b = 0;
    unsigned m = 0;

    RootTwoValue() = default;
    RootTwoValue(Int a_, Int b_, unsigned m_) : a(std::move(a_)), b(std::move(b_)), m(m_) {
        canonicalize();
    }

    static RootTwoValue zero() { return RootTwoValue(); }
    static RootTwoValue one() { return RootTwoValue(1, 0, 0); }
    static RootTwoValue from_int(Int v) { return RootTwoValue(std::move(v), 0, 0); }
    static RootTwoValue dyadic(Int num, unsigned m_) { return RootTwoValue(std::move(num), 0, m_); }

    /// coef / sqrt(2)^k
    static RootTwoValue inv_sqrt2_pow(Int coef, unsigned k);

    RootTwoValue operator+(const RootTwoValue& o) const;
    RootTwoValue operator-(const RootTwoValue& o) const;
    RootTwoValue operator*(const RootTwoValue& o) const;
    RootTwoValue operator-() const;

    /// value / 2
    RootTwoValue halved() const;
    /// value / sqrt(2)
    RootTwoValue times_inv_sqrt2() const;

    bool operator==(const RootTwoValue& o) const { return a == o.a && b == o.b && m == o.m; }
    bool operator!=(const RootTwoValue& o) const { return !(*this == o); }

    bool is_zero() const { return a == 0 && b == 0; }
    /// -1, 0, or +1; exact (sqrt(2) is irrational, so a + b*sqrt(2) = 0 only at a = b = 0).
    int sign() const;

    bool operator<(const RootTwoValue& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const RootTwoValue& o) const { return (*this - o).sign() <= 0; }

    double to_double() const;
    /// Requires b == 0.
    Rational to_rational() const;
    bool is_rational() const { return b == 0; }

    /// "(a + b·√2)/2^m", always in this full template form.
    std::string str() const;

    void canonicalize();
};

}  // namespace rqp
