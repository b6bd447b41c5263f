#pragma once

#include "mono/rational.hpp"

#include <string>

namespace mono {

// Element a + b*sqrt(2) of the quadratic field Q[sqrt(2)], with exact
// arithmetic and exact sign decisions.
struct QSqrt2 {
    Rational a, b;

    QSqrt2() : a(0), b(0) {}
    QSqrt2(Rational a_, Rational b_ = Rational(0)) : a(std::move(a_)), b(std::move(b_)) {}

    static QSqrt2 sqrt2() { return QSqrt2(rat(0), rat(1)); }

    QSqrt2 operator-() const { return QSqrt2(-a, -b); }
    QSqrt2 operator+(const QSqrt2& o) const { return QSqrt2(a + o.a, b + o.b); }
    QSqrt2 operator-(const QSqrt2& o) const { return QSqrt2(a - o.a, b - o.b); }
    QSqrt2 operator*(const QSqrt2& o) const {
        return QSqrt2(a * o.a + rat(2) * b * o.b, a * o.b + b * o.a);
    }

    bool operator==(const QSqrt2& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QSqrt2& o) const { return !(*this == o); }

    // sign(a + b*sqrt(2)); decided by comparing a^2 with 2 b^2 when the
    // parts disagree in sign.
    int sgn() const {
        int sa = sign(a), sb = sign(b);
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        int cmp = sign(a * a - rat(2) * b * b); // |a| vs |b|sqrt2
        return cmp == 0 ? 0 : (cmp > 0 ? sa : sb);
    }

    bool operator<(const QSqrt2& o) const { return (*this - o).sgn() < 0; }
    bool operator>(const QSqrt2& o) const { return (*this - o).sgn() > 0; }

    QSqrt2 abs() const { return sgn() < 0 ? -*this : *this; }

    std::string to_string() const {
        return mono::to_string(a) + " + " + mono::to_string(b) + "*sqrt(2)";
    }
};

} // namespace mono
