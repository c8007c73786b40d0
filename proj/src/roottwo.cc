#include "rqp/roottwo.h"

#include <cmath>
#include <sstream>

namespace rqp {

void RootTwoValue::canonicalize() {
    if (a == 0 && b == 0) {
        m = 0;
        return;
    }
    while (m > 0 && (a & 1) == 0 && (b & 1) == 0) {
        a >>= 1;
        b >>= 1;
        --m;
    }
}

RootTwoValue RootTwoValue::inv_sqrt2_pow(Int coef, unsigned k) {
    // coef / sqrt(2)^k = coef / 2^(k/2)            when k even
    //                  = coef * sqrt(2) / 2^((k+1)/2)  when k odd
    if (k % 2 == 0) {
        return RootTwoValue(std::move(coef), 0, k / 2);
    }
    return RootTwoValue(0, std::move(coef), (k + 1) / 2);
}

RootTwoValue RootTwoValue::operator+(const RootTwoValue& o) const {
    unsigned mm = std::max(m, o.m);
    Int la = a << (mm - m);
    Int lb = b << (mm - m);
    Int ra = o.a << (mm - o.m);
    Int rb = o.b << (mm - o.m);
    return RootTwoValue(la + ra, lb + rb, mm);
}

RootTwoValue RootTwoValue::operator-(const RootTwoValue& o) const {
    return *this + (-o);
}

RootTwoValue RootTwoValue::operator-() const {
    RootTwoValue r;
    r.a = -a;
    r.b = -b;
    r.m = m;
    return r;
}

RootTwoValue RootTwoValue::operator*(const RootTwoValue& o) const {
    // (a1 + b1·√2)(a2 + b2·√2) = (a1·a2 + 2·b1·b2) + (a1·b2 + a2·b1)·√2
    return RootTwoValue(a * o.a + 2 * b * o.b, a * o.b + o.a * b, m + o.m);
}

RootTwoValue RootTwoValue::halved() const {
    return RootTwoValue(a, b, m + 1);
}

RootTwoValue RootTwoValue::times_inv_sqrt2() const {
    // (a + b·√2)/2^m · √2/2 = (2b + a·√2)/2^(m+1)
    return RootTwoValue(2 * b, a, m + 1);
}

int RootTwoValue::sign() const {
    if (b == 0) {
        return a == 0 ? 0 : (a > 0 ? 1 : -1);
    }
    if (a == 0) {
        return b > 0 ? 1 : -1;
    }
    if (a > 0 && b > 0) {
        return 1;
    }
    if (a < 0 && b < 0) {
        return -1;
    }
    // Mixed signs: compare |a| against |b|·√2 via squares.
    return (a * a > 2 * b * b) ? (a > 0 ? 1 : -1) : (b > 0 ? 1 : -1);
}

double RootTwoValue::to_double() const {
    double da = a.convert_to<double>();
    double db = b.convert_to<double>();
    return (da + db * std::sqrt(2.0)) * std::ldexp(1.0, -static_cast<int>(m));
}

Rational RootTwoValue::to_rational() const {
    if (b != 0) {
        throw std::logic_error("RootTwoValue with irrational part has no rational form");
    }
    return Rational(a, pow2_int(m));
}

std::string RootTwoValue::str() const {
    std::ostringstream out;
    out << "(" << a.str() << " + " << b.str() << "·√2)/2^" << m;
    return out.str();
}

}  // namespace rqp
