#include "mono/hsets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mono {

namespace {

const char* factor_name(FactorSign k) {
    switch (k) {
    case FactorSign::Zero: return "0";
    case FactorSign::Pos: return "+";
    default: return "-";
    }
}

// In-place preimage step for one transform; false when the point is not
// in the chart image (exceptional locus, no exact ramification root).
bool invert_edge_point(const ElementaryTransform& nu, std::vector<Rational>& q) {
    bool ok = true;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, BlowUp>) {
                if (sign(q[t.j]) == 0) {
                    ok = false;
                    return;
                }
                q[t.i] = q[t.i] / q[t.j] - *t.lambda.value;
            } else if constexpr (std::is_same_v<T, Tschirnhausen>) {
                q[t.i] = q[t.i] - t.h.evaluate(q);
            } else if constexpr (std::is_same_v<T, Shear>) {
                for (unsigned c = 0; c < t.i; ++c) q[c] = q[c] - t.c[c] * q[t.i];
            } else {
                std::optional<Rational> r = exact_root(q[t.i] * rat(t.sign), t.d);
                if (!r) {
                    ok = false;
                    return;
                }
                q[t.i] = *r;
            }
        },
        nu);
    return ok;
}

std::optional<std::vector<Rational>> invert_path_point(const TransformPath& path,
                                                       std::vector<Rational> q) {
    for (const ElementaryTransform& nu : path.steps)
        if (!invert_edge_point(nu, q)) return std::nullopt;
    return q;
}

// All sign assignments on which `eq` (when present) takes sign 0 and
// every entry of `ineqs` sign +, over the given per-variable radii.
std::vector<SubQuadrant> satisfying_quadrants(unsigned nvars,
                                              const std::vector<Rational>& radii,
                                              const NormalCertificate* eq,
                                              const std::vector<const NormalCertificate*>& ineqs) {
    std::vector<SubQuadrant> out;
    std::vector<unsigned> digit(nvars, 0); // 0 = Zero, 1 = Pos, 2 = Neg
    const FactorSign kinds[3] = {FactorSign::Zero, FactorSign::Pos, FactorSign::Neg};
    while (true) {
        SubQuadrant q;
        q.factors.resize(nvars);
        for (unsigned i = 0; i < nvars; ++i)
            q.factors[i] = {kinds[digit[i]], radii[i]};
        bool ok = !eq || sign_on_quadrant(*eq, q) == 0;
        for (std::size_t k = 0; ok && k < ineqs.size(); ++k)
            ok = sign_on_quadrant(*ineqs[k], q) > 0;
        if (ok) out.push_back(std::move(q));

        unsigned pos = nvars;
        while (pos > 0 && digit[pos - 1] == 2) digit[--pos] = 0;
        if (pos == 0) break;
        ++digit[pos - 1];
    }
    return out;
}

// Largest k with k*step < bound.
long grid_extent(const Rational& bound, const Rational& step) {
    Rational q = bound / step;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    long k = f.get_si();
    if (rat(k) * step >= bound) --k;
    return k < 0 ? -1 : k;
}

// Odometer over the integer box prod [-K_i, K_i]; fn receives the grid
// point and its linear index.
void for_each_grid_point(const std::vector<long>& extents, const Rational& step,
                         const std::function<void(const std::vector<Rational>&, std::size_t)>& fn) {
    unsigned n = static_cast<unsigned>(extents.size());
    for (long k : extents)
        if (k < 0) return;
    std::vector<long> idx(n);
    for (unsigned i = 0; i < n; ++i) idx[i] = -extents[i];
    std::vector<Rational> p(n);
    std::size_t linear = 0;
    while (true) {
        for (unsigned i = 0; i < n; ++i) p[i] = rat(idx[i]) * step;
        fn(p, linear);
        ++linear;
        unsigned pos = n;
        while (pos > 0 && idx[pos - 1] == extents[pos - 1]) {
            --pos;
            idx[pos] = -extents[pos];
        }
        if (pos == 0) break;
        ++idx[pos - 1];
    }
}

struct UnionFind {
    std::vector<long> parent;
    explicit UnionFind(std::size_t n) : parent(n, -1) {}
    long find(long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(long a, long b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

} // namespace

bool SubQuadrant::contains(const std::vector<Rational>& q) const {
    if (q.size() != factors.size()) return false;
    for (unsigned i = 0; i < size(); ++i) {
        int s = sign(q[i]);
        switch (factors[i].kind) {
        case FactorSign::Zero:
            if (s != 0) return false;
            break;
        case FactorSign::Pos:
            if (s <= 0 || q[i] >= factors[i].radius) return false;
            break;
        case FactorSign::Neg:
            if (s >= 0 || -q[i] >= factors[i].radius) return false;
            break;
        }
    }
    return true;
}

SubQuadrant SubQuadrant::halved() const {
    SubQuadrant h = *this;
    for (QuadrantFactor& f : h.factors) f.radius = f.radius / rat(2);
    return h;
}

std::string SubQuadrant::to_string() const {
    std::ostringstream os;
    os << "(";
    for (unsigned i = 0; i < size(); ++i) {
        if (i) os << ",";
        os << factor_name(factors[i].kind);
    }
    os << ")";
    return os.str();
}

bool HBasicSet::contains(const std::vector<Rational>& p) const {
    if (p.size() != nvars) return false;
    for (unsigned i = 0; i < nvars && i < polyradius.size(); ++i) {
        Rational a = sign(p[i]) < 0 ? Rational(-p[i]) : p[i];
        if (a >= polyradius[i]) return false;
    }
    if (eq && sign(eq->evaluate(p)) != 0) return false;
    for (const Series& g : ineqs)
        if (sign(g.evaluate(p)) <= 0) return false;
    return true;
}

int sign_on_quadrant(const NormalCertificate& cert, const SubQuadrant& q) {
    if (cert.alpha.size() != q.size())
        throw dimension_error("certificate and quadrant dimensions differ");
    int s = sign(cert.unit_constant);
    for (unsigned i = 0; i < q.size(); ++i) {
        if (q.factors[i].kind == FactorSign::Zero) {
            if (cert.alpha[i] > 0) return 0;
        } else if (q.factors[i].kind == FactorSign::Neg && cert.alpha[i] % 2 == 1) {
            s = -s;
        }
    }
    return s;
}

std::vector<SubQuadrant> membership_quadrants(const HBasicSet& pullback) {
    std::vector<Rational> radii(pullback.nvars, rat(1));
    for (unsigned i = 0; i < pullback.nvars && i < pullback.polyradius.size(); ++i)
        radii[i] = pullback.polyradius[i];

    auto certify = [](const Series& g) {
        Normality nm = is_normal(g);
        if (!nm.is_normal())
            throw missing_certificate_error("defining series is not certified normal: " +
                                            g.to_string());
        return *nm.certificate;
    };

    std::optional<NormalCertificate> eq_cert;
    if (pullback.eq && !pullback.eq->is_zero()) eq_cert = certify(*pullback.eq);
    std::vector<NormalCertificate> ineq_certs;
    for (const Series& g : pullback.ineqs) {
        if (g.is_zero()) return {};
        ineq_certs.push_back(certify(g));
    }

    std::vector<const NormalCertificate*> ptrs;
    for (const NormalCertificate& c : ineq_certs) ptrs.push_back(&c);
    return satisfying_quadrants(pullback.nvars, radii, eq_cert ? &*eq_cert : nullptr, ptrs);
}

std::optional<std::vector<Rational>> chart_preimage(const Chart& chart,
                                                    const std::vector<Rational>& p) {
    auto q = invert_path_point(chart.path, p);
    if (!q || !chart.quadrant.contains(*q)) return std::nullopt;
    return q;
}

Parametrization parametrize(const HBasicSet& A, const MonomializeConfig& cfg,
                            const std::vector<Rational>& delta, const Rational& grid_step) {
    if (delta.size() != A.nvars) throw dimension_error("delta size != nvars");
    if (sign(grid_step) <= 0) throw dimension_error("grid step must be positive");

    bool empty_by_zero_ineq = false;
    std::vector<Series> targets;
    bool eq_present = A.eq && !A.eq->is_zero();
    if (eq_present) targets.push_back(*A.eq);
    for (const Series& g : A.ineqs) {
        if (g.is_zero()) empty_by_zero_ineq = true;
        targets.push_back(g);
    }

    Parametrization out;
    if (!empty_by_zero_ineq && !targets.empty()) {
        out.tree = monomialize(targets, cfg);
        for_each_expanded_leaf(out.tree, [&](const TransformPath& path, const TreeNode& leaf) {
            const auto& certs = std::get<LeafChildren>(leaf.children).certificates;
            const NormalCertificate* eq_cert = eq_present ? &certs[0] : nullptr;
            std::vector<const NormalCertificate*> ineq_certs;
            for (std::size_t k = eq_present ? 1 : 0; k < targets.size(); ++k)
                ineq_certs.push_back(&certs[k]);
            std::vector<Rational> radii(A.nvars, rat(1));
            auto qs = satisfying_quadrants(A.nvars, radii, eq_cert, ineq_certs);
            for (SubQuadrant& q : qs) out.charts.push_back({std::move(q), path});
        });
    } else if (!empty_by_zero_ineq && targets.empty()) {
        // No constraints: the polydisk itself, one chart per open quadrant.
        std::vector<Rational> radii(A.nvars, rat(1));
        for (unsigned i = 0; i < A.nvars && i < A.polyradius.size(); ++i)
            radii[i] = A.polyradius[i];
        auto qs = satisfying_quadrants(A.nvars, radii, nullptr, {});
        for (SubQuadrant& q : qs) out.charts.push_back({std::move(q), TransformPath{}});
    }

    out.report.chart_hits.assign(out.charts.size(), 0);
    std::vector<long> extents(A.nvars);
    for (unsigned i = 0; i < A.nvars; ++i) {
        Rational bound = delta[i];
        if (i < A.polyradius.size() && A.polyradius[i] < bound) bound = A.polyradius[i];
        extents[i] = grid_extent(bound, grid_step);
    }

    std::set<std::string> notes;
    for_each_grid_point(extents, grid_step, [&](const std::vector<Rational>& p, std::size_t) {
        if (!A.contains(p)) return;
        ++out.report.samples;
        bool hit = false;
        for (std::size_t ci = 0; ci < out.charts.size(); ++ci) {
            if (chart_preimage(out.charts[ci], p)) {
                ++out.report.chart_hits[ci];
                hit = true;
            }
        }
        if (hit) {
            ++out.report.covered;
            return;
        }
        // Walk the tree along the point without expanding anything and
        // name the obstruction.
        std::vector<Rational> q = p;
        NodePtr node = out.tree;
        while (node && !node->is_leaf()) {
            if (node->is_family()) {
                const auto& fam = std::get<LambdaFamilyChildren>(node->children);
                Lambda lambda;
                if (sign(q[fam.j]) != 0)
                    lambda = Lambda(q[fam.i] / q[fam.j]);
                else if (sign(q[fam.i]) != 0)
                    lambda = Lambda::inf();
                else {
                    notes.insert("sample on the blow-up center of family (x" +
                                 std::to_string(fam.i) + ", x" + std::to_string(fam.j) + ")");
                    break;
                }
                auto it = fam.expanded.find(lambda);
                if (it == fam.expanded.end()) {
                    notes.insert("unexpanded branch lambda=" + lambda.to_string() +
                                 " of blow-up family (x" + std::to_string(fam.i) + ", x" +
                                 std::to_string(fam.j) + ")");
                    break;
                }
                node = it->second;
                if (!invert_edge_point(*node->edge_in, q)) break;
                continue;
            }
            const auto& exp = std::get<ExpandedChildren>(node->children);
            NodePtr next;
            for (const NodePtr& c : exp.children) {
                std::vector<Rational> trial = q;
                if (c->edge_in && !invert_edge_point(*c->edge_in, trial)) continue;
                next = c;
                q = trial;
                break;
            }
            if (!next) {
                notes.insert("sample has no exact preimage under a ramification branch");
                break;
            }
            node = next;
        }
        if (node && node->is_leaf())
            notes.insert("sample preimage falls outside every admitted sub-quadrant");
    });
    out.report.frontier_notes.assign(notes.begin(), notes.end());
    return out;
}

Rational coefficient_sum_bound(const Series& g, const std::vector<Rational>& r) {
    if (r.size() != g.nvars()) throw dimension_error("radius size != nvars");
    Rational total = 0;
    for (const auto& [a, c] : g.terms()) {
        Rational term = sign(c) < 0 ? Rational(-c) : c;
        for (unsigned i = 0; i < g.nvars(); ++i)
            for (unsigned k = 0; k < a[i]; ++k) term = term * r[i];
        total = total + term;
    }
    return total;
}

bool LiftedSet::contains(const std::vector<Rational>& p) const {
    if (p.size() != nvars) return false;
    for (unsigned i = 0; i < nvars && i < polyradius.size(); ++i) {
        Rational a = sign(p[i]) < 0 ? Rational(-p[i]) : p[i];
        if (a >= polyradius[i]) return false;
    }
    for (const Series& f : eqs)
        if (sign(f.evaluate(p)) != 0) return false;
    for (const Series& g : ineqs)
        if (sign(g.evaluate(p)) <= 0) return false;
    return true;
}

LiftedSet lift_graphs(const HBasicSet& A, const std::vector<Rational>& bounds) {
    std::vector<Series> graphs;
    if (A.eq) graphs.push_back(*A.eq);
    for (const Series& g : A.ineqs) graphs.push_back(g);
    if (bounds.size() != graphs.size())
        throw dimension_error("one bound per defining series required");
    if (A.polyradius.size() != A.nvars) throw dimension_error("polyradius size != nvars");

    for (std::size_t t = 0; t < graphs.size(); ++t) {
        if (sign(bounds[t]) <= 0) throw dimension_error("bounds must be positive");
        Rational cap = coefficient_sum_bound(graphs[t], A.polyradius);
        if (bounds[t] >= cap) continue;
        // The coefficient bound rejects; look for a concrete witness on a
        // coarse closed grid for the error message.
        std::string witness;
        std::vector<long> extents(A.nvars, 8);
        for_each_grid_point(extents, rat(1, 8), [&](const std::vector<Rational>& u, std::size_t) {
            if (!witness.empty()) return;
            std::vector<Rational> p(A.nvars);
            for (unsigned i = 0; i < A.nvars; ++i) p[i] = u[i] * A.polyradius[i];
            Rational v = graphs[t].evaluate(p);
            if (sign(v) < 0) v = -v;
            if (v > bounds[t]) {
                witness = "(";
                for (unsigned i = 0; i < A.nvars; ++i)
                    witness += (i ? "," : "") + to_string(p[i]);
                witness += ")";
            }
        });
        std::string msg = "bound " + to_string(bounds[t]) + " is below the coefficient bound " +
                          to_string(cap) + " of " + graphs[t].to_string();
        if (!witness.empty()) msg += "; witness point " + witness;
        throw bound_too_small_error(msg);
    }

    unsigned m = static_cast<unsigned>(graphs.size());
    LiftedSet out;
    out.nvars = A.nvars + m;
    out.polyradius = A.polyradius;
    for (const Rational& s : bounds) out.polyradius.push_back(s);
    for (unsigned t = 0; t < m; ++t)
        out.eqs.push_back(Series::variable(out.nvars, A.nvars + t) - graphs[t].embedded(out.nvars));
    if (A.eq && !A.eq->is_zero())
        out.eqs.push_back(Series::variable(out.nvars, A.nvars)); // y_0 = 0
    unsigned first_ineq = A.nvars + (A.eq ? 1u : 0u);
    for (std::size_t k = 0; k < A.ineqs.size(); ++k)
        out.ineqs.push_back(Series::variable(out.nvars, first_ineq + static_cast<unsigned>(k)));
    return out;
}

unsigned count_components_sampled(const HBasicSet& A, const Rational& grid_step) {
    if (sign(grid_step) <= 0) throw dimension_error("grid step must be positive");
    std::vector<long> extents(A.nvars);
    std::vector<std::size_t> strides(A.nvars, 1);
    std::size_t total = 1;
    for (unsigned i = 0; i < A.nvars; ++i) {
        Rational bound = i < A.polyradius.size() ? A.polyradius[i] : rat(1);
        extents[i] = grid_extent(bound, grid_step);
        if (extents[i] < 0) return 0;
        total *= static_cast<std::size_t>(2 * extents[i] + 1);
    }
    for (unsigned i = A.nvars; i-- > 1;) strides[i - 1] = strides[i] * (2 * extents[i] + 1);

    std::vector<char> mask(total, 0);
    for_each_grid_point(extents, grid_step, [&](const std::vector<Rational>& p, std::size_t idx) {
        mask[idx] = A.contains(p) ? 1 : 0;
    });

    UnionFind uf(total);
    unsigned components = 0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (!mask[idx]) continue;
        uf.parent[idx] = static_cast<long>(idx);
        ++components;
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (!mask[idx]) continue;
        std::size_t rest = idx;
        for (unsigned i = 0; i < A.nvars; ++i) {
            std::size_t coord = rest / strides[i];
            rest %= strides[i];
            if (coord + 1 < static_cast<std::size_t>(2 * extents[i] + 1) &&
                mask[idx + strides[i]]) {
                if (uf.find(static_cast<long>(idx)) !=
                    uf.find(static_cast<long>(idx + strides[i]))) {
                    uf.unite(static_cast<long>(idx), static_cast<long>(idx + strides[i]));
                    --components;
                }
            }
        }
    }
    return components;
}

} // namespace mono
