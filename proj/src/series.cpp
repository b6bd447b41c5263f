#include "mono/series.hpp"

#include <algorithm>
#include <sstream>

namespace mono {

unsigned Exponent::total_degree() const {
    unsigned s = 0;
    for (unsigned v : e) s += v;
    return s;
}

bool Exponent::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; });
}

bool Exponent::leq(const Exponent& other) const {
    if (e.size() != other.e.size()) throw dimension_error("exponent sizes differ");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > other.e[i]) return false;
    return true;
}

Exponent Exponent::plus(const Exponent& other) const {
    if (e.size() != other.e.size()) throw dimension_error("exponent sizes differ");
    Exponent r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += other.e[i];
    return r;
}

std::string Exponent::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) os << ',';
        os << e[i];
    }
    os << ')';
    return os.str();
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a.e < b.e; // lexicographic tie-break
}

bool RationalExponent::leq(const RationalExponent& other) const {
    if (e.size() != other.e.size()) throw dimension_error("rational exponent sizes differ");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > other.e[i]) return false;
    return true;
}

bool RationalExponent::all_integral() const {
    return std::all_of(e.begin(), e.end(),
                       [](const Rational& q) { return q.get_den() == 1; });
}

std::string RationalExponent::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) os << ',';
        os << mono::to_string(e[i]);
    }
    os << ')';
    return os.str();
}

Trunc min_trunc(Trunc a, Trunc b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

Series Series::zero(unsigned nvars, Trunc trunc) { return Series(nvars, trunc); }

Series Series::constant(unsigned nvars, const Rational& c, Trunc trunc) {
    Series s(nvars, trunc);
    s.set_coeff(Exponent::zeros(nvars), c);
    return s;
}

Series Series::variable(unsigned nvars, unsigned i, Trunc trunc) {
    Exponent a = Exponent::zeros(nvars);
    a[i] = 1;
    return monomial(nvars, a, 1, trunc);
}

Series Series::monomial(unsigned nvars, const Exponent& a, const Rational& c, Trunc trunc) {
    if (a.size() != nvars) throw dimension_error("exponent size != nvars");
    Series s(nvars, trunc);
    s.set_coeff(a, c);
    return s;
}

bool Series::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

Rational Series::coeff(const Exponent& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Series::constant_term() const { return coeff(Exponent::zeros(nvars_)); }

void Series::set_coeff(const Exponent& a, const Rational& c) {
    if (a.size() != nvars_) throw dimension_error("exponent size != nvars");
    if (trunc_ && a.total_degree() > *trunc_) return;
    if (sign(c) == 0)
        terms_.erase(a);
    else
        terms_[a] = c;
}

Series Series::truncated(Trunc n) const {
    Series r(nvars_, min_trunc(trunc_, n));
    for (const auto& [a, c] : terms_)
        if (!r.trunc_ || a.total_degree() <= *r.trunc_) r.terms_[a] = c;
    return r;
}

Series Series::with_trunc(Trunc n) const {
    Series r(nvars_, n);
    for (const auto& [a, c] : terms_) r.set_coeff(a, c);
    return r;
}

void Series::check_same_space(const Series& other) const {
    if (nvars_ != other.nvars_) throw dimension_error("variable counts differ");
}

Series Series::operator-() const {
    Series r(nvars_, trunc_);
    for (const auto& [a, c] : terms_) r.terms_[a] = -c;
    return r;
}

Series Series::operator+(const Series& other) const {
    check_same_space(other);
    Series r = truncated(other.trunc_);
    for (const auto& [a, c] : other.terms_) {
        if (r.trunc_ && a.total_degree() > *r.trunc_) continue;
        Rational s = r.coeff(a) + c;
        if (sign(s) == 0)
            r.terms_.erase(a);
        else
            r.terms_[a] = s;
    }
    return r;
}

Series Series::operator-(const Series& other) const { return *this + (-other); }

Series Series::operator*(const Series& other) const {
    check_same_space(other);
    Series r(nvars_, min_trunc(trunc_, other.trunc_));
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : other.terms_) {
            if (r.trunc_ && a.total_degree() + b.total_degree() > *r.trunc_) continue;
            Exponent ab = a.plus(b);
            Rational s = r.coeff(ab) + ca * cb;
            if (sign(s) == 0)
                r.terms_.erase(ab);
            else
                r.terms_[ab] = s;
        }
    }
    return r;
}

Series Series::operator*(const Rational& c) const {
    Series r(nvars_, trunc_);
    if (sign(c) == 0) return r;
    for (const auto& [a, v] : terms_) r.terms_[a] = v * c;
    return r;
}

bool Series::operator==(const Series& other) const {
    if (nvars_ != other.nvars_ || trunc_ != other.trunc_ || terms_.size() != other.terms_.size())
        return false;
    return std::equal(terms_.begin(), terms_.end(), other.terms_.begin(),
                      [](const TermMap::value_type& x, const TermMap::value_type& y) {
                          return x.first == y.first && x.second == y.second;
                      });
}

std::optional<unsigned> Series::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.total_degree(); // grlex: first term has least degree
}

unsigned Series::max_total_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.total_degree();
}

Exponent Series::support_min() const {
    if (terms_.empty()) throw precondition_error("support_min of the zero series");
    Exponent m = terms_.begin()->first;
    for (const auto& [a, c] : terms_)
        for (unsigned i = 0; i < nvars_; ++i) m[i] = std::min(m[i], a[i]);
    return m;
}

Series Series::derivative(unsigned var) const {
    if (var >= nvars_) throw dimension_error("derivative variable out of range");
    // A truncated input leaves the derivative valid one degree lower.
    Trunc t = trunc_ ? Trunc(*trunc_ == 0 ? 0 : *trunc_ - 1) : std::nullopt;
    Series r(nvars_, t);
    for (const auto& [a, c] : terms_) {
        if (a[var] == 0) continue;
        Exponent b = a;
        b[var] -= 1;
        r.set_coeff(b, c * Rational(a[var]));
    }
    return r;
}

Series Series::shifted(const Exponent& a) const {
    if (a.size() != nvars_) throw dimension_error("shift exponent size != nvars");
    Trunc t = trunc_ ? Trunc(*trunc_ + a.total_degree()) : std::nullopt;
    Series r(nvars_, t);
    for (const auto& [b, c] : terms_) r.terms_[a.plus(b)] = c;
    return r;
}

Series Series::monomial_divide(unsigned var) const {
    if (var >= nvars_) throw dimension_error("divide variable out of range");
    Trunc t = trunc_ ? Trunc(*trunc_ == 0 ? 0 : *trunc_ - 1) : std::nullopt;
    Series r(nvars_, t);
    for (const auto& [a, c] : terms_) {
        if (a[var] == 0)
            throw not_divisible_error("term " + a.to_string() +
                                      " has exponent 0 in variable " + std::to_string(var + 1));
        Exponent b = a;
        b[var] -= 1;
        r.terms_[b] = c;
    }
    return r;
}

std::pair<Exponent, Series> Series::split_content() const {
    if (terms_.empty()) return {Exponent::zeros(nvars_), *this};
    Exponent gamma = support_min();
    Trunc t = trunc_ ? Trunc(*trunc_ - std::min(*trunc_, gamma.total_degree())) : std::nullopt;
    Series r(nvars_, t);
    for (const auto& [a, c] : terms_) {
        Exponent b = a;
        for (unsigned i = 0; i < nvars_; ++i) b[i] -= gamma[i];
        r.terms_[b] = c;
    }
    return {gamma, r};
}

std::vector<Series> Series::coeffs_in_var(unsigned var) const {
    if (var >= nvars_) throw dimension_error("coefficient variable out of range");
    unsigned maxdeg = 0;
    for (const auto& [a, c] : terms_) maxdeg = std::max(maxdeg, a[var]);
    std::vector<Series> out(terms_.empty() ? 1 : maxdeg + 1, Series(nvars_, trunc_));
    for (const auto& [a, c] : terms_) {
        Exponent b = a;
        unsigned j = b[var];
        b[var] = 0;
        out[j].terms_[b] = c;
    }
    return out;
}

Series Series::substitute_var(unsigned var, const Series& g) const {
    check_same_space(g);
    if (!g.is_zero() && g.order().value() == 0)
        throw precondition_error("substitution image must vanish at the origin");
    Trunc t = min_trunc(trunc_, g.trunc_);
    std::vector<Series> a = coeffs_in_var(var);
    Series r = a.back().truncated(t);
    for (std::size_t j = a.size() - 1; j-- > 0;) r = r * g + a[j].truncated(t);
    return r;
}

bool Series::depends_on(unsigned var) const {
    for (const auto& [a, c] : terms_)
        if (a[var] != 0) return true;
    return false;
}

Rational Series::evaluate(const std::vector<Rational>& p) const {
    if (p.size() != nvars_) throw dimension_error("point size != nvars");
    Rational s(0);
    for (const auto& [a, c] : terms_) {
        Rational t = c;
        for (unsigned i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < a[i]; ++k) t *= p[i];
        s += t;
    }
    return s;
}

double Series::evaluate_double(const std::vector<double>& p) const {
    if (p.size() != nvars_) throw dimension_error("point size != nvars");
    double s = 0;
    for (const auto& [a, c] : terms_) {
        double t = c.get_d();
        for (unsigned i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < a[i]; ++k) t *= p[i];
        s += t;
    }
    return s;
}

Series Series::embedded(unsigned new_nvars) const {
    if (new_nvars < nvars_) throw dimension_error("embedding shrinks variable count");
    Series r(new_nvars, trunc_);
    for (const auto& [a, c] : terms_) {
        Exponent b = Exponent::zeros(new_nvars);
        std::copy(a.e.begin(), a.e.end(), b.e.begin());
        r.terms_[b] = c;
    }
    return r;
}

Series Series::restricted(unsigned new_nvars) const {
    if (new_nvars > nvars_) throw dimension_error("restriction grows variable count");
    Series r(new_nvars, trunc_);
    for (const auto& [a, c] : terms_) {
        for (unsigned i = new_nvars; i < nvars_; ++i)
            if (a[i] != 0) throw dimension_error("series depends on dropped variable");
        Exponent b = Exponent::zeros(new_nvars);
        std::copy(a.e.begin(), a.e.begin() + new_nvars, b.e.begin());
        r.terms_[b] = c;
    }
    return r;
}

std::string Series::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << mono::to_string(c);
        for (unsigned i = 0; i < nvars_; ++i) {
            if (a[i] == 0) continue;
            os << "*x" << (i + 1);
            if (a[i] > 1) os << '^' << a[i];
        }
    }
    if (trunc_) os << " [O(" << (*trunc_ + 1) << ")]";
    return os.str();
}

// --- operations --------------------------------------------------------

std::optional<unsigned> regularity_order_in(const Series& f, unsigned var) {
    std::optional<unsigned> best;
    for (const auto& [a, c] : f.terms()) {
        bool pure = true;
        for (unsigned i = 0; i < f.nvars(); ++i)
            if (i != var && a[i] != 0) { pure = false; break; }
        if (pure && (!best || a[var] < *best)) best = a[var];
    }
    return best;
}

std::optional<unsigned> regularity_order(const Series& f) {
    if (f.nvars() == 0) throw dimension_error("regularity order needs at least one variable");
    return regularity_order_in(f, f.nvars() - 1);
}

Normality is_normal(const Series& f) {
    if (f.is_zero()) throw undefined_normality_error("normality of the zero series is undefined");
    Exponent alpha = f.support_min();
    if (sign(f.coeff(alpha)) == 0) return {Normality::Kind::NotNormal, std::nullopt};
    // With a finite truncation a hidden term of higher degree could be
    // incomparable to alpha unless alpha = 0 or there is a single variable.
    if (f.trunc() && f.nvars() >= 2 && !alpha.is_zero())
        return {Normality::Kind::UnknownAtTruncation, std::nullopt};
    Trunc ut = f.trunc() ? Trunc(*f.trunc() - std::min(*f.trunc(), alpha.total_degree()))
                         : std::nullopt;
    Series unit(f.nvars(), ut);
    for (const auto& [a, c] : f.terms()) {
        Exponent b = a;
        for (unsigned i = 0; i < f.nvars(); ++i) b[i] -= alpha[i];
        unit.set_coeff(b, c);
    }
    NormalCertificate cert{alpha, unit.constant_term(), unit};
    return {Normality::Kind::Normal, std::move(cert)};
}

Series unit_inverse(const Series& u, Trunc n) {
    Rational c0 = u.constant_term();
    if (sign(c0) == 0) throw not_a_unit_error("constant term is zero");
    if (u.is_constant()) return Series::constant(u.nvars(), 1 / c0, min_trunc(u.trunc(), n));
    Trunc bound = min_trunc(u.trunc(), n);
    if (!bound) throw precondition_error("inverse of a non-constant unit needs a truncation bound");
    // V_{k+1} = V_k + V_k (1 - U V_k); quadratic convergence in the order.
    Series v = Series::constant(u.nvars(), 1 / c0, bound);
    Series one = Series::constant(u.nvars(), 1, bound);
    Series uu = u.truncated(bound);
    unsigned valid = 1;
    while (valid <= *bound) {
        v = v + v * (one - uu * v);
        valid *= 2;
    }
    return v;
}

WeierstrassSplit weierstrass_in(const Series& f, unsigned var, unsigned d) {
    if (regularity_order_in(f, var) != d)
        throw regularity_error("series is not regular of order " + std::to_string(d));
    std::vector<Series> a = f.coeffs_in_var(var);
    WeierstrassSplit out;
    // A hidden degree-(T+1) term of F perturbs the degree-(j-d) slice of U
    // at degree T+1-d, and F_i at T+1-(d-i); assign those validity bounds.
    Trunc t = f.trunc();
    Trunc ut = t ? Trunc(*t >= d ? *t - d : 0) : std::nullopt;
    out.unit = Series(f.nvars(), ut);
    for (std::size_t j = d; j < a.size(); ++j) {
        Exponent sh = Exponent::zeros(f.nvars());
        sh[var] = static_cast<unsigned>(j - d);
        for (const auto& [b, c] : a[j].terms()) out.unit.set_coeff(sh.plus(b), c);
    }
    out.lower.reserve(d);
    for (unsigned i = 1; i <= d; ++i) {
        Trunc ft = t ? Trunc(*t >= d - i ? *t - (d - i) : 0) : std::nullopt;
        Series fi = d - i < a.size() ? a[d - i] : Series(f.nvars(), f.trunc());
        out.lower.push_back(fi.truncated(ft));
    }
    return out;
}

std::pair<Series, std::vector<Series>> weierstrass_coeffs(const Series& f, unsigned d) {
    if (f.nvars() == 0) throw dimension_error("weierstrass split needs at least one variable");
    WeierstrassSplit s = weierstrass_in(f, f.nvars() - 1, d);
    std::vector<Series> lower;
    lower.reserve(s.lower.size());
    for (const Series& fi : s.lower) lower.push_back(fi.restricted(f.nvars() - 1));
    return {s.unit, std::move(lower)};
}

Series qk_in(const Series& f, unsigned k, unsigned var) {
    Series q(f.nvars() - 1, std::nullopt);
    for (const auto& [a, c] : f.terms()) {
        if (a.total_degree() != k) continue;
        Exponent b = Exponent::zeros(f.nvars() - 1);
        unsigned j = 0;
        for (unsigned i = 0; i < f.nvars(); ++i)
            if (i != var) b[j++] = a[i];
        q.set_coeff(b, q.coeff(b) + c);
    }
    return q;
}

Series qk_polynomials(const Series& f, unsigned k) {
    if (f.nvars() == 0) throw dimension_error("qk needs at least one variable");
    return qk_in(f, k, f.nvars() - 1);
}

Series formal_root_in(const Series& f, unsigned var, unsigned d, unsigned n) {
    if (d == 0) throw precondition_error("formal root needs order at least 1");
    // D = (d-1)-st derivative in the distinguished variable; regular of
    // order 1, so Newton iteration applies.
    Series dd = f;
    for (unsigned k = 0; k + 1 < d; ++k) dd = dd.derivative(var);
    if (!regularity_order_in(dd, var) || *regularity_order_in(dd, var) != 1)
        throw regularity_error("derivative is not regular of order 1");
    Series ddp = dd.derivative(var);
    Series b = Series::zero(f.nvars(), n);
    unsigned valid = 0;
    while (valid < n) {
        Series num = dd.truncated(n).substitute_var(var, b);
        Series den = ddp.truncated(n).substitute_var(var, b);
        b = b - num * unit_inverse(den, n);
        valid = valid == 0 ? 1 : valid * 2;
    }
    if (b.depends_on(var)) throw regularity_error("formal root depends on the root variable");
    // Exact inputs whose root residual vanishes identically get an exact root.
    if (!f.trunc()) {
        Series b_exact = b.with_trunc(std::nullopt);
        Series r = f;
        for (unsigned k = 0; k + 1 < d; ++k) r = r.derivative(var);
        if (r.substitute_var(var, b_exact).is_zero()) return b_exact;
    }
    return b;
}

Series formal_root_in_xn(const Series& f, unsigned d, unsigned n) {
    if (f.nvars() == 0) throw dimension_error("formal root needs at least one variable");
    return formal_root_in(f, f.nvars() - 1, d, n).restricted(f.nvars() - 1);
}

} // namespace mono
