#include "mono/rational.hpp"

#include <cctype>

namespace mono {

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](const std::string& s) {
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class n(num), d(den);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

std::optional<Rational> exact_root(const Rational& q, unsigned d) {
    if (d == 0) return std::nullopt;
    if (d == 1) return q;
    mpz_class num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg && d % 2 == 0) return std::nullopt;
    mpz_class anum = abs(num), rnum, rden;
    if (mpz_root(rnum.get_mpz_t(), anum.get_mpz_t(), d) == 0 && anum != 0) return std::nullopt;
    if (mpz_root(rden.get_mpz_t(), den.get_mpz_t(), d) == 0) return std::nullopt;
    Rational r(neg ? mpz_class(-rnum) : rnum, rden);
    r.canonicalize();
    return r;
}

} // namespace mono
