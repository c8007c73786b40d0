#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace rqp {

// Arbitrary-precision integers and rationals used everywhere an exact
// result is promised. Floating point only appears in the statevector
// oracle and in Monte Carlo summaries.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int pow2_int(unsigned e) {
    Int v = 1;
    return v << e;
}

// 1 / 2^e
inline Rational pow2_inv(unsigned e) {
    return Rational(1, pow2_int(e));
}

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

inline std::string to_string(const Rational& r) {
    return r.str();
}

// Accepts "3/4", "-2", "0.25". Decimal strings are read as exact decimal
// fractions, so "0.1" becomes 1/10, not the nearest double.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("bad rational literal: '" + text + "'");
    };
    // Strict base 10: an optional sign, then digits. Leading zeros are
    // stripped before cpp_int sees them — its string constructor would
    // otherwise read "025" as octal and "0x10" as hex.
    auto to_int = [&](const std::string& s) -> Int {
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start == s.size()) {
            throw bad();
        }
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                throw bad();
            }
        }
        std::size_t nz = s.find_first_not_of('0', start);
        Int v = nz == std::string::npos ? Int(0) : Int(s.substr(nz));
        return s[0] == '-' ? Int(-v) : v;
    };
    std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        Int num = to_int(text.substr(0, slash));
        Int den = to_int(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator: '" + text + "'");
        }
        return Rational(num, den);
    }
    std::size_t dot = text.find('.');
    if (dot == std::string::npos) {
        return Rational(to_int(text));
    }
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.empty()) {
        throw bad();
    }
    bool neg = !whole.empty() && whole[0] == '-';
    Int scale = 1;
    for (char c : frac) {
        if (c < '0' || c > '9') {
            throw bad();
        }
        scale *= 10;
    }
    Int whole_v = (whole.empty() || whole == "-" || whole == "+") ? Int(0) : to_int(whole);
    Int num = whole_v * scale;
    Int frac_v = to_int(frac);
    num += neg ? Int(-frac_v) : frac_v;
    return Rational(num, scale);
}

}  // namespace rqp
