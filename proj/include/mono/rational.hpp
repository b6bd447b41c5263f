#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace mono {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p" or "p/q" with decimal integers. Returns nullopt on junk.
std::optional<Rational> parse_rational(const std::string& text);

// Canonical "p" or "p/q" form, matching the JSON coefficient encoding.
std::string to_string(const Rational& q);

int sign(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact d-th root when the rational is a perfect d-th power, nullopt otherwise.
std::optional<Rational> exact_root(const Rational& q, unsigned d);

} // namespace mono
