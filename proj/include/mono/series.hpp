#pragma once

#include "mono/errors.hpp"
#include "mono/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace mono {

// Multi-index of a monomial. Entries are per-variable exponents.
struct Exponent {
    std::vector<unsigned> e;

    Exponent() = default;
    explicit Exponent(std::vector<unsigned> entries) : e(std::move(entries)) {}
    static Exponent zeros(unsigned n) { return Exponent(std::vector<unsigned>(n, 0)); }

    unsigned size() const { return static_cast<unsigned>(e.size()); }
    unsigned operator[](unsigned i) const { return e[i]; }
    unsigned& operator[](unsigned i) { return e[i]; }

    unsigned total_degree() const;
    bool is_zero() const;

    // Componentwise order (divisibility order on monomials).
    bool leq(const Exponent& other) const;
    bool comparable(const Exponent& other) const { return leq(other) || other.leq(*this); }

    Exponent plus(const Exponent& other) const;

    bool operator==(const Exponent& other) const { return e == other.e; }
    bool operator!=(const Exponent& other) const { return e != other.e; }

    std::string to_string() const;
};

// Graded lexicographic order; the canonical term order of the engine.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

// Tuples alpha_i / i; integral entries after ramification.
struct RationalExponent {
    std::vector<Rational> e;

    unsigned size() const { return static_cast<unsigned>(e.size()); }
    bool leq(const RationalExponent& other) const;
    bool comparable(const RationalExponent& other) const { return leq(other) || other.leq(*this); }
    bool operator==(const RationalExponent& other) const { return e == other.e; }
    bool all_integral() const;
    std::string to_string() const;
};

// Total-degree truncation bound; nullopt means the series is exact
// (a polynomial, no hidden terms).
using Trunc = std::optional<unsigned>;

Trunc min_trunc(Trunc a, Trunc b);

// Sparse multivariate power series with exact rational coefficients,
// truncated at a total-degree bound. Immutable in spirit: all operations
// return new values.
class Series {
public:
    using TermMap = std::map<Exponent, Rational, GrlexLess>;

    Series() : nvars_(0) {}
    Series(unsigned nvars, Trunc trunc) : nvars_(nvars), trunc_(trunc) {}

    static Series zero(unsigned nvars, Trunc trunc = std::nullopt);
    static Series constant(unsigned nvars, const Rational& c, Trunc trunc = std::nullopt);
    static Series variable(unsigned nvars, unsigned i, Trunc trunc = std::nullopt);
    static Series monomial(unsigned nvars, const Exponent& a, const Rational& c,
                           Trunc trunc = std::nullopt);

    unsigned nvars() const { return nvars_; }
    Trunc trunc() const { return trunc_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Exponent& a) const;
    Rational constant_term() const;

    // Inserts/overwrites a coefficient, dropping zeros and terms beyond trunc.
    void set_coeff(const Exponent& a, const Rational& c);

    Series truncated(Trunc n) const;

    // Re-labels the stored terms with a different truncation bound without
    // dropping anything; only for callers that proved exactness/validity.
    Series with_trunc(Trunc n) const;

    Series operator-() const;
    Series operator+(const Series& other) const;
    Series operator-(const Series& other) const;
    Series operator*(const Series& other) const;
    Series operator*(const Rational& c) const;
    bool operator==(const Series& other) const;

    // Order of the series: least total degree in the support.
    std::optional<unsigned> order() const;
    unsigned max_total_degree() const;

    // Componentwise minimum over the support (the candidate normal exponent).
    Exponent support_min() const;

    Series derivative(unsigned var) const;

    // X^a * this.
    Series shifted(const Exponent& a) const;

    // this / X_var; throws not-divisible naming the offending exponent.
    Series monomial_divide(unsigned var) const;

    // Factors out the full monomial content: this = X^gamma * reduced.
    std::pair<Exponent, Series> split_content() const;

    // Coefficients of powers of X_var: this = sum coeffs[j] * X_var^j,
    // each coeffs[j] with zero exponent in var.
    std::vector<Series> coeffs_in_var(unsigned var) const;

    // Substitutes g for X_var (Horner). Requires g(0) = 0 so that
    // truncation commutes with substitution.
    Series substitute_var(unsigned var, const Series& g) const;

    bool depends_on(unsigned var) const;

    // Exact evaluation of the stored terms at a rational point.
    Rational evaluate(const std::vector<Rational>& p) const;
    double evaluate_double(const std::vector<double>& p) const;

    // Reinterprets in a larger variable count (new variables unused).
    Series embedded(unsigned new_nvars) const;
    // Drops trailing variables; they must be unused.
    Series restricted(unsigned new_nvars) const;

    std::string to_string() const;

private:
    unsigned nvars_;
    Trunc trunc_;
    TermMap terms_;

    void check_same_space(const Series& other) const;
};

// Witness that F = X^alpha * unit with invertible unit.
struct NormalCertificate {
    Exponent alpha;
    Rational unit_constant;
    Series unit;

    Series reconstruct() const { return unit.shifted(alpha); }
};

struct Normality {
    enum class Kind { Normal, NotNormal, UnknownAtTruncation };
    Kind kind;
    std::optional<NormalCertificate> certificate; // set iff Normal

    bool is_normal() const { return kind == Kind::Normal; }
};

// --- series-core operations -------------------------------------------

// Least d with a nonzero coefficient of X_var^d in F(0,...,X_var,...,0);
// nullopt if all such coefficients vanish up to trunc.
std::optional<unsigned> regularity_order_in(const Series& f, unsigned var);
std::optional<unsigned> regularity_order(const Series& f);

// Decides F = X^alpha * U; three-valued at finite truncation.
Normality is_normal(const Series& f);

// V with U*V = 1 up to total degree n.
Series unit_inverse(const Series& u, Trunc n);

struct WeierstrassSplit {
    Series unit;                 // U, same nvars as F
    std::vector<Series> lower;   // F_1..F_d, free of the distinguished variable
};

// F = U*X_var^d + sum F_i X_var^{d-i} with U a unit, F_i free of X_var.
// The general-index form keeps F_i in the ambient variable count; the
// spec-facing wrapper below restricts them to the first n-1 variables.
WeierstrassSplit weierstrass_in(const Series& f, unsigned var, unsigned d);
std::pair<Series, std::vector<Series>> weierstrass_coeffs(const Series& f, unsigned d);

// Q_k(Y_1..Y_{m-1}) = sum_{|a|=k} c_a Y^{a-hat} where a-hat drops the
// coordinate of `var`.
Series qk_in(const Series& f, unsigned k, unsigned var);
Series qk_polynomials(const Series& f, unsigned k);

// b with b(0) = 0 and d^{d-1}F/dX_var^{d-1}(.., b) = 0 up to degree n,
// by Newton iteration. Result is exact when the residual vanishes exactly.
Series formal_root_in(const Series& f, unsigned var, unsigned d, unsigned n);
Series formal_root_in_xn(const Series& f, unsigned d, unsigned n);

} // namespace mono
