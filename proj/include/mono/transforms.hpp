#pragma once

#include "mono/series.hpp"

#include <variant>

namespace mono {

// A blow-up branch parameter: a rational value or the point at infinity.
struct Lambda {
    std::optional<Rational> value; // nullopt = infinity

    Lambda() : value(Rational(0)) {}
    Lambda(Rational v) : value(std::move(v)) {}
    static Lambda inf() { Lambda l; l.value.reset(); return l; }

    bool is_inf() const { return !value.has_value(); }
    bool operator==(const Lambda& o) const { return value == o.value; }
    bool operator<(const Lambda& o) const {
        if (is_inf() != o.is_inf()) return o.is_inf(); // finite < inf
        if (is_inf()) return false;
        return *value < *o.value;
    }
    std::string to_string() const { return is_inf() ? "inf" : mono::to_string(*value); }
};

// x_i = x_j' (lambda + x_i'). Stored lambda is always finite: the
// infinite chart is normalized to the equivalent BlowUp{j, i, 0} at
// construction (make_blowup). Variable indices are 0-based.
struct BlowUp {
    unsigned i, j;
    Lambda lambda;

    bool operator==(const BlowUp& o) const { return i == o.i && j == o.j && lambda == o.lambda; }
};

// x_i = x_i' + h(other variables), h(0) = 0, h free of x_i.
struct Tschirnhausen {
    unsigned i;
    Series h; // in the ambient variable count

    bool operator==(const Tschirnhausen& o) const { return i == o.i && h == o.h; }
};

// x_k = x_k' + c[k] x_i' for k < i.
struct Shear {
    unsigned i;
    std::vector<Rational> c; // length i

    bool operator==(const Shear& o) const { return i == o.i && c == o.c; }
};

// x_i = sign * x_i'^d.
struct Ramification {
    unsigned i;
    unsigned d;
    int sign; // +1 or -1

    bool operator==(const Ramification& o) const { return i == o.i && d == o.d && sign == o.sign; }
};

using ElementaryTransform = std::variant<BlowUp, Tschirnhausen, Shear, Ramification>;

struct TransformPath {
    std::vector<ElementaryTransform> steps;
};

// Normalizes the infinite chart via pi_{i,j}^inf = pi_{j,i}^0.
ElementaryTransform make_blowup(unsigned i, unsigned j, Lambda lambda);
ElementaryTransform make_tschirnhausen(unsigned i, Series h);
ElementaryTransform make_shear(unsigned i, std::vector<Rational> c);
ElementaryTransform make_ramification(unsigned i, unsigned d, int sign);

// F composed with the defining substitution of nu.
Series apply(const ElementaryTransform& nu, const Series& f);

// The variable one divides by to invert a blow-up chart; none otherwise.
std::optional<unsigned> critical_variable(const ElementaryTransform& nu);

// apply(nu, F) times the critical variable when there is one.
Series star_apply(const ElementaryTransform& nu, const Series& f);

// F o nu_1 o ... o nu_k, folding in order.
Series compose_path(const TransformPath& path, const Series& f);

// Image of a point under one transform read as a polynomial map.
std::vector<Rational> point_image(const ElementaryTransform& nu, const std::vector<Rational>& p);

// (nu_1 o ... o nu_k)(p): the composed map applied to p, so that for
// polynomial F, F(evaluate_path_at(path, p)) = compose_path(path, F)(p).
std::vector<Rational> evaluate_path_at(const TransformPath& path, std::vector<Rational> p);

std::string transform_to_string(const ElementaryTransform& nu);

} // namespace mono
