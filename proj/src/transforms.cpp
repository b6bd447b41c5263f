#include "mono/transforms.hpp"

#include <sstream>

namespace mono {

ElementaryTransform make_blowup(unsigned i, unsigned j, Lambda lambda) {
    if (i == j) throw precondition_error("blow-up needs two distinct variables");
    if (lambda.is_inf()) return BlowUp{j, i, Lambda(Rational(0))};
    return BlowUp{i, j, std::move(lambda)};
}

ElementaryTransform make_tschirnhausen(unsigned i, Series h) {
    if (sign(h.constant_term()) != 0)
        throw precondition_error("translation term must vanish at the origin");
    if (h.depends_on(i))
        throw precondition_error("translation term must not involve the translated variable");
    return Tschirnhausen{i, std::move(h)};
}

ElementaryTransform make_shear(unsigned i, std::vector<Rational> c) {
    if (c.size() != i) throw precondition_error("shear takes one coefficient per earlier variable");
    return Shear{i, std::move(c)};
}

ElementaryTransform make_ramification(unsigned i, unsigned d, int sgn) {
    if (d < 1) throw precondition_error("ramification degree must be at least 1");
    if (sgn != 1 && sgn != -1) throw precondition_error("ramification sign must be +1 or -1");
    return Ramification{i, d, sgn};
}

namespace {

void check_var(unsigned i, unsigned nvars) {
    if (i >= nvars) throw dimension_error("transform variable index out of range");
}

} // namespace

Series apply(const ElementaryTransform& nu, const Series& f) {
    const unsigned n = f.nvars();
    return std::visit(
        [&](const auto& t) -> Series {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, BlowUp>) {
                check_var(t.i, n);
                check_var(t.j, n);
                Series xi = Series::variable(n, t.i, f.trunc());
                Series xj = Series::variable(n, t.j, f.trunc());
                return f.substitute_var(t.i, xj * *t.lambda.value + xj * xi);
            } else if constexpr (std::is_same_v<T, Tschirnhausen>) {
                check_var(t.i, n);
                if (t.h.nvars() != n) throw dimension_error("translation term variable count");
                Series xi = Series::variable(n, t.i, f.trunc());
                return f.substitute_var(t.i, xi + t.h.truncated(f.trunc()));
            } else if constexpr (std::is_same_v<T, Shear>) {
                check_var(t.i, n);
                Series g = f;
                for (unsigned k = 0; k < t.i; ++k) {
                    if (sign(t.c[k]) == 0) continue;
                    Series img = Series::variable(n, k, f.trunc()) +
                                 Series::variable(n, t.i, f.trunc()) * t.c[k];
                    g = g.substitute_var(k, img);
                }
                return g;
            } else {
                check_var(t.i, n);
                Exponent e = Exponent::zeros(n);
                e[t.i] = t.d;
                Series img = Series::monomial(n, e, rat(t.sign), f.trunc());
                return f.substitute_var(t.i, img);
            }
        },
        nu);
}

std::optional<unsigned> critical_variable(const ElementaryTransform& nu) {
    if (const BlowUp* b = std::get_if<BlowUp>(&nu)) return b->j;
    return std::nullopt;
}

Series star_apply(const ElementaryTransform& nu, const Series& f) {
    Series g = apply(nu, f);
    if (std::optional<unsigned> w = critical_variable(nu)) {
        Exponent e = Exponent::zeros(f.nvars());
        e[*w] = 1;
        return g.shifted(e).truncated(g.trunc());
    }
    return g;
}

Series compose_path(const TransformPath& path, const Series& f) {
    Series g = f;
    for (const ElementaryTransform& nu : path.steps) g = mono::apply(nu, g);
    return g;
}

std::vector<Rational> point_image(const ElementaryTransform& nu, const std::vector<Rational>& p) {
    const unsigned n = static_cast<unsigned>(p.size());
    std::vector<Rational> q = p;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            check_var(t.i, n);
            if constexpr (std::is_same_v<T, BlowUp>) {
                check_var(t.j, n);
                q[t.i] = p[t.j] * (*t.lambda.value + p[t.i]);
            } else if constexpr (std::is_same_v<T, Tschirnhausen>) {
                q[t.i] = p[t.i] + t.h.evaluate(p); // h is free of variable i
            } else if constexpr (std::is_same_v<T, Shear>) {
                for (unsigned k = 0; k < t.i; ++k) q[k] = p[k] + t.c[k] * p[t.i];
            } else {
                Rational v(1);
                for (unsigned k = 0; k < t.d; ++k) v *= p[t.i];
                q[t.i] = v * rat(t.sign);
            }
        },
        nu);
    return q;
}

std::vector<Rational> evaluate_path_at(const TransformPath& path, std::vector<Rational> p) {
    for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) p = point_image(*it, p);
    return p;
}

std::string transform_to_string(const ElementaryTransform& nu) {
    std::ostringstream os;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, BlowUp>) {
                os << "blowup(i=" << t.i + 1 << ", j=" << t.j + 1 << ", lambda="
                   << t.lambda.to_string() << ")";
            } else if constexpr (std::is_same_v<T, Tschirnhausen>) {
                os << "tschirnhausen(x" << t.i + 1 << " += " << t.h.to_string() << ")";
            } else if constexpr (std::is_same_v<T, Shear>) {
                os << "shear(i=" << t.i + 1 << ", c=(";
                for (unsigned k = 0; k < t.i; ++k) {
                    if (k) os << ',';
                    os << mono::to_string(t.c[k]);
                }
                os << "))";
            } else {
                os << "ramification(i=" << t.i + 1 << ", d=" << t.d << ", "
                   << (t.sign > 0 ? '+' : '-') << ")";
            }
        },
        nu);
    return os.str();
}

} // namespace mono
