#include "mono/fibergeom.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <set>

namespace mono {

namespace {

constexpr double kRankTol = 1e-9;

using SVec = std::vector<Series>; // a vector field with polynomial entries

Eigen::MatrixXd jacobian_at(const std::vector<Series>& eqs, const std::vector<double>& z) {
    Eigen::MatrixXd J(eqs.size(), z.size());
    for (std::size_t i = 0; i < eqs.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j)
            J(static_cast<long>(i), static_cast<long>(j)) =
                eqs[i].derivative(static_cast<unsigned>(j)).evaluate_double(z);
    return J;
}

unsigned svd_rank(const Eigen::MatrixXd& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    unsigned r = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > kRankTol * std::max(top, 1.0)) ++r;
    return r;
}

bool member(const ManifoldSpec& m, const std::vector<double>& z, double eq_tol = 1e-9) {
    for (unsigned i = 0; i < m.nvars; ++i)
        if (std::abs(z[i]) >= to_double(m.polyradius[i])) return false;
    for (const Series& f : m.eqs)
        if (std::abs(f.evaluate_double(z)) > eq_tol) return false;
    for (const Series& g : m.ineqs)
        if (g.evaluate_double(z) <= 0) return false;
    return true;
}

void check_spec(const ManifoldSpec& m) {
    if (m.split_n > m.nvars) throw dimension_error("split exceeds the variable count");
    if (m.polyradius.size() != m.nvars) throw dimension_error("polyradius size != nvars");
    if (m.eqs.size() > m.nvars) throw dimension_error("more equations than variables");
    for (const Series& f : m.eqs)
        if (f.nvars() != m.nvars) throw dimension_error("equation nvars != nvars");
    for (const Series& g : m.ineqs)
        if (g.nvars() != m.nvars) throw dimension_error("inequality nvars != nvars");
}

double dot(const std::vector<double>& a, const std::vector<double>& b, unsigned upto) {
    double s = 0;
    for (unsigned i = 0; i < upto; ++i) s += a[i] * b[i];
    return s;
}

// Full grid over the polydisk with `grid` subdivisions per radius.
void for_each_box_point(const std::vector<Rational>& radii, unsigned grid,
                        const std::function<void(const std::vector<double>&)>& fn) {
    unsigned n = static_cast<unsigned>(radii.size());
    if (n == 0) return;
    std::vector<long> idx(n, -static_cast<long>(grid) + 1);
    std::vector<double> p(n);
    while (true) {
        for (unsigned i = 0; i < n; ++i)
            p[i] = to_double(radii[i]) * static_cast<double>(idx[i]) / static_cast<double>(grid);
        fn(p);
        unsigned pos = n;
        while (pos > 0 && idx[pos - 1] == static_cast<long>(grid) - 1) {
            --pos;
            idx[pos] = -static_cast<long>(grid) + 1;
        }
        if (pos == 0) break;
        ++idx[pos - 1];
    }
}

// --- symbolic (denominator-free) frame ---------------------------------

Series sdot(const SVec& a, const SVec& b, unsigned upto) {
    Series s = Series::zero(a.empty() ? 0 : a[0].nvars());
    for (unsigned i = 0; i < upto; ++i) s = s + a[i] * b[i];
    return s;
}

SVec scaled(const SVec& v, const Series& c) {
    SVec out;
    for (const Series& x : v) out.push_back(x * c);
    return out;
}

SVec minus(const SVec& a, const SVec& b) {
    SVec out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

bool svec_zero(const SVec& v, unsigned upto) {
    for (unsigned i = 0; i < upto; ++i)
        if (!v[i].is_zero()) return false;
    return true;
}

// Quotient of p by (r^2 - x_var^2) when the division is exact.
std::optional<Series> divide_disk_factor(const Series& p, unsigned var, const Rational& r) {
    std::vector<Series> c = p.coeffs_in_var(var);
    if (c.size() < 3) return std::nullopt;
    Rational r2 = r * r;
    std::vector<Series> q(c.size() - 2, Series::zero(p.nvars(), p.trunc()));
    for (std::size_t j = c.size(); j-- > 2;) {
        Series qj = -c[j];
        q[j - 2] = qj;
        c[j] = Series::zero(p.nvars(), p.trunc());
        c[j - 2] = c[j - 2] - qj * r2;
    }
    if (!c[0].is_zero() || !c[1].is_zero()) return std::nullopt;
    Series out = Series::zero(p.nvars(), p.trunc());
    for (std::size_t j = 0; j < q.size(); ++j) {
        Exponent e = Exponent::zeros(p.nvars());
        e[var] = static_cast<unsigned>(j);
        out = out + q[j].shifted(e);
    }
    return out;
}

// Divides by the rational content and flips the sign so the highest
// power of the last variable carries a positive coefficient.
Series normalized_equation(Series eq) {
    if (eq.is_zero()) return eq;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [a, c] : eq.terms()) {
        mpz_class n = abs(c.get_num());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    eq = eq * scale;
    unsigned last = eq.nvars() - 1;
    unsigned top = 0;
    for (const auto& [a, c] : eq.terms()) top = std::max(top, a[last]);
    Rational lead = 0;
    for (const auto& [a, c] : eq.terms())
        if (a[last] == top) lead = c; // grlex-max among them wins
    if (sign(lead) < 0) eq = -eq;
    return eq;
}

struct SymbolicFrame {
    std::vector<SVec> tangent; // d fields
    std::vector<SVec> fiber;   // d - l fields with zero projection block
};

SymbolicFrame symbolic_frame(const ManifoldSpec& m) {
    unsigned N = m.nvars;
    std::vector<SVec> U;
    std::vector<SVec> tangent;

    auto orthogonalize = [&](SVec v) {
        for (const SVec& u : U) {
            Series uu = sdot(u, u, N);
            Series vu = sdot(v, u, N);
            v = minus(scaled(v, uu), scaled(u, vu));
        }
        return v;
    };

    for (const Series& f : m.eqs) {
        SVec g;
        for (unsigned j = 0; j < N; ++j) g.push_back(f.derivative(j));
        SVec w = orthogonalize(g);
        if (svec_zero(w, N))
            throw frame_error("equation gradients are symbolically dependent");
        U.push_back(std::move(w));
    }
    for (unsigned j = 0; j < N && U.size() < N; ++j) {
        SVec e(N, Series::zero(N));
        e[j] = Series::constant(N, rat(1));
        SVec w = orthogonalize(e);
        if (svec_zero(w, N)) continue;
        U.push_back(w);
        tangent.push_back(w);
    }
    if (tangent.size() != m.dim())
        throw frame_error("symbolic tangent frame is incomplete");

    SymbolicFrame out;
    std::vector<SVec> atil;
    for (const SVec& t : tangent) {
        SVec w = t;
        for (const SVec& a : atil) {
            Series aa = sdot(a, a, m.split_n);
            Series wa = sdot(w, a, m.split_n);
            w = minus(scaled(w, aa), scaled(a, wa));
        }
        if (svec_zero(w, m.split_n))
            out.fiber.push_back(w);
        else
            atil.push_back(w);
        out.tangent.push_back(w);
    }
    return out;
}

} // namespace

std::vector<std::vector<double>> tangent_basis(const ManifoldSpec& m,
                                               const std::vector<double>& z) {
    check_spec(m);
    if (z.size() != m.nvars) throw dimension_error("point size != nvars");
    unsigned N = m.nvars;
    unsigned d = m.dim();
    std::vector<std::vector<double>> out;
    if (m.eqs.empty()) {
        for (unsigned j = 0; j < N; ++j) {
            std::vector<double> e(N, 0.0);
            e[j] = 1.0;
            out.push_back(std::move(e));
        }
        return out;
    }
    Eigen::MatrixXd J = jacobian_at(m.eqs, z);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    unsigned rank = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > kRankTol * std::max(top, 1.0)) ++rank;
    if (rank < m.eqs.size())
        throw rank_deficiency_error("equation gradients are dependent at the point");
    for (unsigned c = rank; c < N; ++c) {
        std::vector<double> v(N);
        for (unsigned row = 0; row < N; ++row) v[row] = svd.matrixV()(row, c);
        out.push_back(std::move(v));
    }
    if (out.size() != d) throw rank_deficiency_error("kernel dimension mismatch");
    return out;
}

FrameResult fiber_basis(const ManifoldSpec& m, const std::vector<double>& z) {
    FrameResult res;
    res.point = z;
    res.tangent = tangent_basis(m, z);
    unsigned n = m.split_n;
    std::vector<std::vector<double>> atil;
    for (const std::vector<double>& a : res.tangent) {
        std::vector<double> w = a;
        for (const std::vector<double>& u : atil) {
            double c = dot(w, u, n);
            for (unsigned i = 0; i < m.nvars; ++i) w[i] -= c * u[i];
        }
        double pn = std::sqrt(dot(w, w, n));
        if (pn > kRankTol) {
            for (double& x : w) x /= pn; // unit projection
            atil.push_back(std::move(w));
        } else {
            double full = std::sqrt(dot(w, w, m.nvars));
            if (full > kRankTol) {
                for (double& x : w) x /= full;
                // orthogonalize within the fiber block for a clean basis
                for (const std::vector<double>& b : res.fiber) {
                    double c = dot(w, b, m.nvars);
                    for (unsigned i = 0; i < m.nvars; ++i) w[i] -= c * b[i];
                }
                double norm = std::sqrt(dot(w, w, m.nvars));
                for (double& x : w) x /= norm;
                res.fiber.push_back(std::move(w));
            }
        }
    }
    res.rank = static_cast<unsigned>(atil.size());
    res.atilde = std::move(atil);
    return res;
}

unsigned rank_at(const ManifoldSpec& m, const std::vector<double>& z) {
    return fiber_basis(m, z).rank;
}

std::optional<std::vector<unsigned>>
immersion_witness(const ManifoldSpec& m, const std::vector<std::vector<double>>& samples) {
    check_spec(m);
    unsigned N = m.nvars;
    unsigned d = m.dim();
    if (d == 0 || samples.empty()) return std::vector<unsigned>{};

    struct SampleData {
        Eigen::MatrixXd T; // N x d tangent matrix
        unsigned rank;
    };
    std::vector<SampleData> data;
    for (const auto& z : samples) {
        FrameResult fr = fiber_basis(m, z);
        Eigen::MatrixXd T(N, d);
        for (unsigned c = 0; c < d; ++c)
            for (unsigned r = 0; r < N; ++r) T(r, c) = fr.tangent[c][r];
        data.push_back({std::move(T), fr.rank});
    }

    std::vector<unsigned> iota(d);
    for (unsigned i = 0; i < d; ++i) iota[i] = i;
    while (true) {
        bool ok = true;
        for (const SampleData& s : data) {
            if (s.rank > 0 && iota[s.rank - 1] >= m.split_n) {
                ok = false;
                break;
            }
            Eigen::MatrixXd P(d, d);
            for (unsigned r = 0; r < d; ++r)
                for (unsigned c = 0; c < d; ++c) P(r, c) = s.T(iota[r], c);
            if (svd_rank(P) < d) {
                ok = false;
                break;
            }
        }
        if (ok) return iota;
        // next increasing sequence
        long pos = static_cast<long>(d) - 1;
        while (pos >= 0 && iota[pos] == N - d + static_cast<unsigned>(pos)) --pos;
        if (pos < 0) return std::nullopt;
        ++iota[pos];
        for (unsigned i = static_cast<unsigned>(pos) + 1; i < d; ++i) iota[i] = iota[i - 1] + 1;
    }
}

Series build_phi(const ManifoldSpec& m) {
    check_spec(m);
    Series phi = Series::constant(m.nvars, rat(1));
    for (const Series& g : m.ineqs) phi = phi * g;
    for (unsigned i = 0; i < m.nvars; ++i) {
        Series disk = Series::constant(m.nvars, m.polyradius[i] * m.polyradius[i]) -
                      Series::variable(m.nvars, i) * Series::variable(m.nvars, i);
        phi = phi * disk;
    }
    return phi;
}

std::vector<Series> critical_set_equations(const ManifoldSpec& m) {
    check_spec(m);
    SymbolicFrame frame = symbolic_frame(m);
    if (frame.fiber.empty()) return {};
    Series phi = build_phi(m);
    SVec gphi;
    for (unsigned j = 0; j < m.nvars; ++j) gphi.push_back(phi.derivative(j));

    std::vector<Series> out;
    for (const SVec& b : frame.fiber) {
        Series eq = sdot(gphi, b, m.nvars);
        if (eq.is_zero()) continue;
        for (unsigned i = 0; i < m.nvars; ++i)
            while (true) {
                auto q = divide_disk_factor(eq, i, m.polyradius[i]);
                if (!q || q->is_zero()) break;
                eq = *q;
            }
        out.push_back(normalized_equation(eq));
    }
    return out;
}

bool compatible_polydisk_check(const ManifoldSpec& m, const std::vector<Rational>& rprime,
                               unsigned grid) {
    check_spec(m);
    if (rprime.size() != m.nvars) throw dimension_error("radius size != nvars");
    for (unsigned i = 0; i < m.nvars; ++i)
        if (rprime[i] > m.polyradius[i])
            throw dimension_error("shrunk radius exceeds the polydisk");
    unsigned n = m.split_n;
    unsigned k = m.nvars - n;
    if (k == 0) return true;

    std::vector<Rational> base(rprime.begin(), rprime.begin() + n);
    std::vector<Rational> fiber(m.polyradius.begin() + n, m.polyradius.end());
    std::vector<double> cap(k);
    for (unsigned j = 0; j < k; ++j) cap[j] = to_double(rprime[n + j]);

    bool compatible = true;
    for_each_box_point(base, std::max(2u, grid / 8), [&](const std::vector<double>& x) {
        if (!compatible) return;
        bool inner = false, outer = false;
        std::vector<double> z(m.nvars);
        for (unsigned i = 0; i < n; ++i) z[i] = x[i];
        for_each_box_point(fiber, grid, [&](const std::vector<double>& y) {
            if (inner && outer) return;
            for (unsigned j = 0; j < k; ++j) z[n + j] = y[j];
            if (!member(m, z)) return;
            bool inside = true;
            for (unsigned j = 0; j < k && inside; ++j) inside = std::abs(y[j]) < cap[j];
            (inside ? inner : outer) = true;
        });
        if (inner && outer) compatible = false;
    });
    return compatible;
}

bool butterfly_check(const ManifoldSpec& m, unsigned grid) {
    check_spec(m);
    unsigned n = m.split_n;
    unsigned k = m.nvars - n;
    if (k == 0) return true;
    // ok[i][j]: |z_{n+i}| < |z_j| held at every sampled manifold point.
    std::vector<std::vector<bool>> ok(k, std::vector<bool>(n, true));
    for_each_box_point(m.polyradius, grid, [&](const std::vector<double>& z) {
        if (!member(m, z)) return;
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (!(std::abs(z[n + i]) < std::abs(z[j]))) ok[i][j] = false;
    });
    for (unsigned i = 0; i < k; ++i) {
        bool witnessed = false;
        for (unsigned j = 0; j < n; ++j) witnessed = witnessed || ok[i][j];
        if (!witnessed) return false;
    }
    return true;
}

unsigned dimension_sampled(const std::vector<Series>& eqs,
                           const std::vector<std::vector<double>>& samples) {
    unsigned best = 0;
    for (const auto& z : samples) {
        unsigned N = static_cast<unsigned>(z.size());
        unsigned r = eqs.empty() ? 0 : svd_rank(jacobian_at(eqs, z));
        best = std::max(best, N - r);
    }
    return best;
}

FiberCutResult fiber_cut(const ManifoldSpec& m, unsigned grid) {
    check_spec(m);
    unsigned d = m.dim();
    unsigned n = m.split_n;
    unsigned k = m.nvars - n;

    // Equation manifolds need a slack proportional to the grid pitch or
    // no sample ever lands on them.
    double eq_tol = m.eqs.empty() ? 1e-9 : 3.0 / static_cast<double>(grid);
    std::vector<std::vector<double>> samples;
    for_each_box_point(m.polyradius, grid, [&](const std::vector<double>& z) {
        if (member(m, z, eq_tol)) samples.push_back(z);
    });
    if (samples.empty()) throw precondition_error("no sampled manifold points");

    std::set<unsigned> ranks;
    for (const auto& z : samples) ranks.insert(rank_at(m, z));
    if (ranks.size() > 1)
        throw stratify_first_error(
            "projection rank is not constant on the samples; stratify by rank_at first");
    unsigned l = *ranks.begin();
    if (l >= d)
        throw precondition_error("projection rank equals the dimension; nothing to cut");

    FiberCutResult res;
    res.manifold_dimension = d;
    res.equations = critical_set_equations(m);

    // Largest halving of the fiber radii that keeps the polydisk
    // fiber-compatible on samples.
    res.suggested_radius = m.polyradius;
    for (int step = 0; step < 6; ++step) {
        std::vector<Rational> candidate = res.suggested_radius;
        for (unsigned j = 0; j < k; ++j) candidate[n + j] = candidate[n + j] / rat(2);
        if (!compatible_polydisk_check(m, candidate, grid)) break;
        res.suggested_radius = candidate;
    }

    // Critical samples: fiber-wise sign changes when the fiber is a line
    // and a single equation cuts it, else near-zero grid points.
    std::vector<std::vector<double>> critical;
    if (k == 1 && res.equations.size() == 1) {
        const Series& eq = res.equations[0];
        std::vector<Rational> base(m.polyradius.begin(), m.polyradius.begin() + n);
        double rk = to_double(m.polyradius[n]);
        unsigned bases = 0, found = 0;
        for_each_box_point(base, std::max(2u, grid / 4), [&](const std::vector<double>& x) {
            std::vector<double> z(m.nvars);
            for (unsigned i = 0; i < n; ++i) z[i] = x[i];
            bool base_hit = false, crit_hit = false;
            double prev_y = 0, prev_v = 0;
            bool have_prev = false;
            for (long t = -static_cast<long>(grid) + 1; t < static_cast<long>(grid); ++t) {
                double y = rk * static_cast<double>(t) / static_cast<double>(grid);
                z[n] = y;
                if (!member(m, z)) {
                    have_prev = false;
                    continue;
                }
                base_hit = true;
                double v = eq.evaluate_double(z);
                if (have_prev && ((prev_v <= 0 && v >= 0) || (prev_v >= 0 && v <= 0))) {
                    double lo = prev_y, hi = y, vlo = prev_v;
                    for (int it = 0; it < 60; ++it) {
                        double mid = 0.5 * (lo + hi);
                        z[n] = mid;
                        double vm = eq.evaluate_double(z);
                        if ((vlo <= 0) == (vm <= 0)) {
                            lo = mid;
                            vlo = vm;
                        } else {
                            hi = mid;
                        }
                    }
                    z[n] = 0.5 * (lo + hi);
                    critical.push_back(z);
                    crit_hit = true;
                }
                prev_y = y;
                prev_v = v;
                have_prev = true;
            }
            if (base_hit) {
                ++bases;
                if (crit_hit) ++found;
            }
        });
        res.projection_onto = bases > 0 && bases == found;
    } else {
        for (const auto& z : samples) {
            bool near = true;
            for (const Series& eq : res.equations)
                near = near && std::abs(eq.evaluate_double(z)) < 0.05;
            if (near) critical.push_back(z);
        }
        res.projection_onto = !critical.empty();
    }

    std::vector<Series> system = m.eqs;
    for (const Series& eq : res.equations) system.push_back(eq);
    res.critical_dimension = dimension_sampled(system, critical);
    res.critical_samples = std::move(critical);
    return res;
}

} // namespace mono
