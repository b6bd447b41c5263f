#include "mono/monomialize.hpp"

#include <algorithm>
#include <sstream>

namespace mono {

std::string TerminationMeasure::to_string() const {
    std::ostringstream os;
    os << "(level=" << level << ", d=";
    if (d)
        os << *d;
    else
        os << "?";
    os << ", beta=" << (beta ? beta->to_string() : "?") << ")";
    return os.str();
}

namespace {

std::vector<Series> apply_all(const ElementaryTransform& nu, const std::vector<Series>& state) {
    std::vector<Series> out;
    out.reserve(state.size());
    for (const Series& f : state) out.push_back(mono::apply(nu, f));
    return out;
}

// Smallest integer tuple (max-norm first, then lexicographic) in the first
// `len` coordinates with q(c) != 0; q lives in n-1 ambient variables.
std::vector<Rational> shear_coefficients(const Series& q, unsigned len) {
    std::vector<Rational> point(q.nvars(), Rational(0));
    for (long radius = 0; radius <= 64; ++radius) {
        std::vector<long> t(len, -radius);
        while (true) {
            bool on_shell = radius == 0;
            for (unsigned c = 0; c < len && !on_shell; ++c)
                if (t[c] == radius || t[c] == -radius) on_shell = true;
            if (on_shell) {
                for (unsigned c = 0; c < len; ++c) point[c] = rat(t[c]);
                if (sign(q.evaluate(point)) != 0) {
                    std::vector<Rational> out(len);
                    for (unsigned c = 0; c < len; ++c) out[c] = rat(t[c]);
                    return out;
                }
            }
            unsigned c = 0;
            while (c < len && t[c] == radius) t[c++] = -radius;
            if (c == len) break;
            ++t[c];
        }
        if (len == 0) break;
    }
    throw precondition_error("no integer point found with a nonzero slice value");
}

// One reduction move for incomparable integer tuples: returns (s, t) such
// that adding coordinate s into coordinate t strictly shrinks the L1 gap
// of the first incomparable pair.
std::optional<std::pair<unsigned, unsigned>>
linearization_move(const std::vector<RationalExponent>& tuples) {
    for (std::size_t u = 0; u < tuples.size(); ++u) {
        for (std::size_t v = u + 1; v < tuples.size(); ++v) {
            if (tuples[u].comparable(tuples[v])) continue;
            unsigned s = 0, t = 0;
            Rational best_pos(0), best_neg(0);
            for (unsigned c = 0; c < tuples[u].size(); ++c) {
                Rational delta = tuples[u].e[c] - tuples[v].e[c];
                if (delta > best_pos) { best_pos = delta; s = c; }
                if (delta < best_neg) { best_neg = delta; t = c; }
            }
            return std::make_pair(s, t);
        }
    }
    return std::nullopt;
}

struct Engine {
    MonomializeConfig cfg;
    unsigned nvars;

    using Cont = std::function<NodePtr(std::vector<Series>, unsigned,
                                       std::vector<TerminationMeasure>)>;

    // The series a given level is responsible for: those living in the
    // variables below it. At the top level that is the whole state.
    std::vector<std::size_t> active_goals(const std::vector<Series>& state,
                                          unsigned level) const {
        std::vector<std::size_t> goals;
        for (std::size_t g = 0; g < state.size(); ++g) {
            bool free_above = true;
            for (unsigned v = level; v < nvars && free_above; ++v)
                if (state[g].depends_on(v)) free_above = false;
            if (free_above) goals.push_back(g);
        }
        return goals;
    }

    NodePtr chain(std::vector<Series> state, const ElementaryTransform& nu, NodePtr child,
                  TerminationMeasure measure) const {
        child->edge_in = nu;
        auto node = std::make_shared<TreeNode>();
        node->series_state = std::move(state);
        node->measure = std::move(measure);
        node->children = ExpandedChildren{{std::move(child)}};
        return node;
    }

    NodePtr run(std::vector<Series> state, unsigned level, unsigned depth,
                std::vector<TerminationMeasure> trace, const Cont& k) const {
        if (depth > cfg.max_depth) {
            std::ostringstream os;
            os << "depth bound " << cfg.max_depth << " exceeded; measure trace:";
            for (const TerminationMeasure& tm : trace) os << ' ' << tm.to_string();
            throw depth_error(os.str());
        }

        // Done when every series owned by this level is certified normal.
        std::vector<std::size_t> goals = active_goals(state, level);
        bool all_normal = true;
        for (std::size_t g : goals) {
            if (state[g].is_zero())
                throw undefined_normality_error("a tracked series vanished identically");
            if (!is_normal(state[g]).is_normal()) all_normal = false;
        }
        if (all_normal) return k(std::move(state), depth, std::move(trace));

        const unsigned a = level - 1; // distinguished variable of this level

        // Working series: product of the goal series with its monomial
        // content removed (the content is already normal and would
        // otherwise mask the regularity order).
        Series work = Series::constant(nvars, 1, state[goals.front()].trunc());
        for (std::size_t g : goals) work = work * state[g];
        work = work.split_content().second;

        if (level == 1 || work.is_constant()) {
            // One-variable supports are totally ordered, so only a finite
            // truncation can leave us here.
            throw inconclusive_error(
                "cannot certify normality at this truncation; retry with a larger bound");
        }

        std::optional<unsigned> d = regularity_order_in(work, a);

        // Stage 1: no pure power of the distinguished variable — shear so
        // the lowest-degree slice contributes one.
        if (!d) {
            unsigned k0 = *work.order();
            Series q = qk_in(work, k0, a);
            ElementaryTransform nu = make_shear(a, shear_coefficients(q, a));
            TerminationMeasure tm{level, std::nullopt, std::nullopt};
            trace.push_back(tm);
            NodePtr child = run(apply_all(nu, state), level, depth + 1, trace, k);
            return chain(std::move(state), nu, std::move(child), tm);
        }
        if (*d == 0)
            throw inconclusive_error(
                "working series is a unit but a goal is undecided at this truncation");

        WeierstrassSplit ws = weierstrass_in(work, a, *d);

        // Stage 2: kill the subprincipal coefficient by translating the
        // distinguished variable to the root of the (d-1)-st derivative.
        if (!ws.lower[0].is_zero()) {
            Series b = formal_root_in(work, a, *d, cfg.trunc);
            ElementaryTransform nu = make_tschirnhausen(a, b);
            TerminationMeasure tm{level, d, std::nullopt};
            trace.push_back(tm);
            NodePtr child = run(apply_all(nu, state), level, depth + 1, trace, k);
            return chain(std::move(state), nu, std::move(child), tm);
        }

        if (*d == 1) {
            // F = U * X_a after the translation; only truncation noise can
            // keep a goal undecided.
            throw inconclusive_error(
                "cannot certify normality at this truncation; retry with a larger bound");
        }

        // Stage 3: the lower Weierstrass coefficients must themselves be
        // normal; if not, append them and work one level down.
        std::vector<std::pair<unsigned, Series>> lower; // (i, F_i), nonzero only
        bool lower_normal = true;
        for (unsigned i = 2; i <= *d; ++i) {
            if (ws.lower[i - 1].is_zero()) continue;
            lower.emplace_back(i, ws.lower[i - 1]);
            Normality n = is_normal(ws.lower[i - 1]);
            if (n.kind == Normality::Kind::UnknownAtTruncation)
                throw inconclusive_error("coefficient normality undecided at this truncation; "
                                         "retry with a larger bound");
            if (n.kind != Normality::Kind::Normal) lower_normal = false;
        }
        if (!lower_normal) {
            std::vector<Series> inner_state = std::move(state);
            for (auto& [i, fi] : lower) inner_state.push_back(fi);
            Engine self = *this;
            Cont resume = [self, level, k](std::vector<Series> st, unsigned dep,
                                           std::vector<TerminationMeasure> tr) -> NodePtr {
                return self.run(std::move(st), level, dep, std::move(tr), k);
            };
            TerminationMeasure tm{level - 1, std::nullopt, std::nullopt};
            trace.push_back(tm);
            std::vector<Series> wrapper_state = inner_state;
            NodePtr child =
                run(std::move(inner_state), level - 1, depth + 1, std::move(trace), resume);
            auto node = std::make_shared<TreeNode>();
            node->series_state = std::move(wrapper_state);
            node->measure = tm;
            node->children = ExpandedChildren{{std::move(child)}};
            return node;
        }

        // All nonzero F_i are normal; read off their exponents.
        std::vector<unsigned> idx;
        std::vector<Exponent> alpha;
        for (auto& [i, fi] : lower) {
            idx.push_back(i);
            alpha.push_back(is_normal(fi).certificate->alpha);
        }

        // Stage 4: make every alpha_i divisible by i, one offending
        // variable at a time, with both ramification signs.
        for (unsigned t = 0; t < a; ++t) {
            bool offending = false;
            for (std::size_t z = 0; z < idx.size(); ++z)
                if (alpha[z][t] % idx[z] != 0) offending = true;
            if (!offending) continue;
            unsigned dfact = 1;
            for (unsigned i = 2; i <= *d; ++i) dfact *= i;
            TerminationMeasure tm{level, d, std::nullopt};
            trace.push_back(tm);
            std::vector<NodePtr> kids;
            for (int sgn : {+1, -1}) {
                ElementaryTransform nu = make_ramification(t, dfact, sgn);
                NodePtr child = run(apply_all(nu, state), level, depth + 1, trace, k);
                child->edge_in = nu;
                kids.push_back(std::move(child));
            }
            auto node = std::make_shared<TreeNode>();
            node->series_state = std::move(state);
            node->measure = tm;
            node->children = ExpandedChildren{std::move(kids)};
            return node;
        }

        // The tuples alpha_i / i, in the variables below the level.
        std::vector<RationalExponent> beta;
        for (std::size_t z = 0; z < idx.size(); ++z) {
            RationalExponent b;
            for (unsigned t = 0; t < a; ++t) b.e.push_back(Rational(alpha[z][t]) / idx[z]);
            beta.push_back(std::move(b));
        }

        // Stage 5: force the tuples pairwise comparable, one blow-up
        // family at a time.
        if (auto move = linearization_move(beta)) {
            auto [s, t] = *move;
            TerminationMeasure tm{level, d, std::nullopt};
            trace.push_back(tm);
            return family(std::move(state), level, depth, std::move(trace), k, s, t, tm);
        }

        // Stage 6: the tuples are linearly ordered; blow up the level
        // variable against a variable carried by the minimal tuple.
        std::size_t l = 0;
        for (std::size_t z = 1; z < beta.size(); ++z)
            if (beta[z].leq(beta[l]) && !(beta[z] == beta[l])) l = z;
        unsigned t = 0;
        while (t < a && alpha[l][t] == 0) ++t;
        if (t == a)
            throw regularity_error("minimal coefficient is a unit, contradicting the order");
        TerminationMeasure tm{level, d, beta[l]};
        trace.push_back(tm);
        return family(std::move(state), level, depth, std::move(trace), k, a, t, tm);
    }

    NodePtr family(std::vector<Series> state, unsigned level, unsigned depth,
                   std::vector<TerminationMeasure> trace, const Cont& k, unsigned i, unsigned j,
                   TerminationMeasure tm) const {
        auto node = std::make_shared<TreeNode>();
        node->series_state = state;
        node->measure = std::move(tm);
        LambdaFamilyChildren fam;
        fam.i = i;
        fam.j = j;
        Engine self = *this;
        fam.expander = [self, state = std::move(state), level, depth, trace = std::move(trace),
                        k, i, j](const Lambda& lambda) -> NodePtr {
            ElementaryTransform nu = make_blowup(i, j, lambda);
            std::vector<Series> next = apply_all(nu, state);
            // Track the critical variable from here on: the subtree below
            // this edge must monomialize it (the star property).
            next.push_back(Series::variable(self.nvars, *critical_variable(nu)));
            NodePtr child = self.run(std::move(next), level, depth + 1, trace, k);
            child->edge_in = nu;
            return child;
        };
        node->children = std::move(fam);
        std::vector<Lambda> initial{Lambda(rat(0)), Lambda::inf()};
        for (const Rational& q : cfg.lambda_seed)
            if (sign(q) != 0) initial.emplace_back(q);
        for (const Lambda& l : initial) expand_lambda(node, l);
        return node;
    }
};

NodePtr leaf_cont(std::vector<Series> state) {
    auto node = std::make_shared<TreeNode>();
    LeafChildren leaf;
    for (const Series& f : state) leaf.certificates.push_back(*is_normal(f).certificate);
    node->series_state = std::move(state);
    node->children = std::move(leaf);
    return node;
}

} // namespace

NodePtr monomialize(const std::vector<Series>& targets, const MonomializeConfig& cfg) {
    if (targets.empty()) throw precondition_error("need at least one target series");
    const unsigned n = targets.front().nvars();
    if (n == 0) throw dimension_error("targets need at least one variable");
    std::vector<Series> state;
    for (const Series& f : targets) {
        if (f.nvars() != n) throw dimension_error("targets have mixed variable counts");
        if (f.is_zero()) throw precondition_error("target series must be nonzero");
        if (f.trunc() && *f.trunc() < cfg.trunc)
            throw precondition_error("target truncation is below the configured bound");
        state.push_back(f);
    }
    for (unsigned v = 0; v + 1 < n; ++v) state.push_back(Series::variable(n, v));

    Engine eng{cfg, n};
    return eng.run(std::move(state), n, 0, {},
                   [](std::vector<Series> st, unsigned, std::vector<TerminationMeasure>) {
                       return leaf_cont(std::move(st));
                   });
}

NodePtr expand_lambda(const NodePtr& node, const Lambda& lambda) {
    auto* fam = std::get_if<LambdaFamilyChildren>(&node->children);
    if (!fam) throw precondition_error("node is not a blow-up family");
    std::lock_guard<std::mutex> lock(*fam->mtx);
    auto it = fam->expanded.find(lambda);
    if (it != fam->expanded.end()) return it->second;
    NodePtr child = fam->expander(lambda);
    fam->expanded.emplace(lambda, child);
    return child;
}

void for_each_expanded_leaf(const NodePtr& root,
                            const std::function<void(const TransformPath&, const TreeNode&)>& fn) {
    TransformPath path;
    std::function<void(const NodePtr&)> walk = [&](const NodePtr& node) {
        bool pushed = node->edge_in.has_value();
        if (pushed) path.steps.push_back(*node->edge_in);
        if (node->is_leaf()) {
            fn(path, *node);
        } else if (const auto* exp = std::get_if<ExpandedChildren>(&node->children)) {
            for (const NodePtr& c : exp->children) walk(c);
        } else {
            const auto& fam = std::get<LambdaFamilyChildren>(node->children);
            for (const auto& [lambda, c] : fam.expanded) walk(c);
        }
        if (pushed) path.steps.pop_back();
    };
    walk(root);
}

StarCheckReport star_check(const NodePtr& root) {
    StarCheckReport report;
    const unsigned n = root->series_state.empty() ? 0 : root->series_state.front().nvars();
    for_each_expanded_leaf(root, [&](const TransformPath& path, const TreeNode&) {
        for (std::size_t e = 0; e < path.steps.size(); ++e) {
            std::optional<unsigned> w = critical_variable(path.steps[e]);
            if (!w) continue;
            TransformPath below{{path.steps.begin() + static_cast<long>(e) + 1,
                                 path.steps.end()}};
            Series img = compose_path(below, Series::variable(n, *w));
            if (img.is_zero() || !is_normal(img).is_normal()) {
                std::ostringstream os;
                os << "critical variable x" << *w + 1 << " of step " << e + 1 << " ("
                   << transform_to_string(path.steps[e])
                   << ") is not normal at a leaf below it";
                report.violations.push_back(os.str());
            }
        }
    });
    return report;
}

std::pair<TransformPath, std::vector<RationalExponent>>
linearize_exponents(std::vector<RationalExponent> tuples) {
    for (const RationalExponent& t : tuples)
        if (!t.all_integral()) throw precondition_error("exponent tuples must be integral");
    TransformPath path;
    for (int guard = 0; guard < 1000; ++guard) {
        auto move = linearization_move(tuples);
        if (!move) return {path, tuples};
        auto [s, t] = *move;
        for (RationalExponent& b : tuples) b.e[t] += b.e[s];
        path.steps.push_back(make_blowup(s, t, Lambda(rat(0))));
    }
    throw depth_error("exponent linearization did not settle within the move budget");
}

ChartAtPoint chart_at_point(const std::vector<Series>& targets, const std::vector<Rational>& p,
                            const MonomializeConfig& cfg) {
    if (!targets.empty() && p.size() != targets.front().nvars())
        throw dimension_error("point size != nvars");
    NodePtr node = monomialize(targets, cfg);
    ChartAtPoint result;
    std::vector<Rational> q = p;

    auto invert_edge = [&](const ElementaryTransform& nu) {
        std::visit(
            [&](const auto& t) {
                using T = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<T, BlowUp>) {
                    if (sign(q[t.j]) == 0)
                        throw uncovered_point_error(
                            "point lies on the exceptional locus of a blow-up chart");
                    q[t.i] = q[t.i] / q[t.j] - *t.lambda.value;
                } else if constexpr (std::is_same_v<T, Tschirnhausen>) {
                    q[t.i] = q[t.i] - t.h.evaluate(q);
                } else if constexpr (std::is_same_v<T, Shear>) {
                    for (unsigned c = 0; c < t.i; ++c) q[c] = q[c] - t.c[c] * q[t.i];
                } else {
                    std::optional<Rational> r = exact_root(q[t.i] * rat(t.sign), t.d);
                    if (!r)
                        throw uncovered_point_error(
                            "point has no exact rational preimage under a ramification chart");
                    q[t.i] = *r;
                }
            },
            nu);
        result.path.steps.push_back(nu);
    };

    while (true) {
        if (const auto* leaf = std::get_if<LeafChildren>(&node->children)) {
            result.certificates = leaf->certificates;
            result.preimage = q;
            for (const Rational& c : q) result.quadrant.push_back(sign(c));
            return result;
        }
        if (node->is_family()) {
            const auto& fam = std::get<LambdaFamilyChildren>(node->children);
            Lambda lambda;
            if (sign(q[fam.j]) != 0)
                lambda = Lambda(q[fam.i] / q[fam.j]);
            else if (sign(q[fam.i]) != 0)
                lambda = Lambda::inf();
            else
                throw uncovered_point_error(
                    "point has both blow-up coordinates zero; no chart covers it");
            NodePtr child = expand_lambda(node, lambda);
            invert_edge(*child->edge_in);
            node = child;
            continue;
        }
        const auto& exp = std::get<ExpandedChildren>(node->children);
        NodePtr next;
        for (const NodePtr& c : exp.children) {
            if (!c->edge_in) { next = c; break; }
            if (const auto* ram = std::get_if<Ramification>(&*c->edge_in)) {
                Rational v = q[ram->i] * rat(ram->sign);
                if (ram->d % 2 == 0 && sign(v) < 0) continue; // wrong sign branch
                if (!exact_root(v, ram->d)) continue;
                next = c;
                break;
            }
            next = c;
            break;
        }
        if (!next)
            throw uncovered_point_error(
                "no ramification branch reaches the point with an exact rational root");
        if (next->edge_in) invert_edge(*next->edge_in);
        node = next;
    }
}

} // namespace mono
