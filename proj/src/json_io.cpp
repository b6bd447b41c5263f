#include "mono/json_io.hpp"

#include <sstream>

namespace mono {

namespace {

bool is_natural(const Json& j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

unsigned natural_from_json(const Json& j, const char* field) {
    if (!is_natural(j)) throw schema_error(std::string(field) + " must be a natural number");
    return static_cast<unsigned>(j.get<unsigned long long>());
}

unsigned var_index_from_json(const Json& j, unsigned nvars_hint, const char* field) {
    unsigned i = natural_from_json(j, field);
    if (i == 0) throw schema_error(std::string(field) + " must be a positive variable index");
    if (nvars_hint && i > nvars_hint) throw schema_error(std::string(field) + " out of range");
    return i - 1; // wire format is 1-based
}

const char* factor_json_name(FactorSign k) {
    switch (k) {
    case FactorSign::Zero: return "0";
    case FactorSign::Pos: return "+";
    default: return "-";
    }
}

} // namespace

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw schema_error("expected a rational string");
    auto q = parse_rational(j.get<std::string>());
    if (!q) throw schema_error("not a rational: " + j.get<std::string>());
    return *q;
}

std::vector<Rational> rationals_from_json(const Json& j, const char* field) {
    if (!j.is_array()) throw schema_error(std::string(field) + " is an array of rational strings");
    std::vector<Rational> out;
    for (const Json& x : j) out.push_back(rational_from_json(x));
    return out;
}

std::vector<std::string> default_var_names(unsigned n) {
    static const char* first[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    for (unsigned i = 0; i < n; ++i)
        names.push_back(i < 4 ? first[i] : "x" + std::to_string(i + 1));
    return names;
}

Json series_to_json(const Series& s) {
    Json j;
    j["vars"] = default_var_names(s.nvars());
    j["trunc"] = s.trunc() ? Json(*s.trunc()) : Json("exact");
    Json terms = Json::array();
    for (const auto& [a, c] : s.terms()) {
        Json t;
        t["exp"] = a.e;
        t["coef"] = to_string(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

Series series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        throw schema_error("series needs \"vars\" and \"terms\"");
    if (!j["vars"].is_array()) throw schema_error("\"vars\" must be an array");
    unsigned nvars = static_cast<unsigned>(j["vars"].size());
    Trunc trunc;
    if (j.contains("trunc") && j["trunc"] != Json("exact")) {
        trunc = natural_from_json(j["trunc"], "trunc");
    }
    Series s(nvars, trunc);
    if (!j["terms"].is_array()) throw schema_error("\"terms\" must be an array");
    for (const Json& t : j["terms"]) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coef"))
            throw schema_error("series term needs \"exp\" and \"coef\"");
        if (!t["exp"].is_array() || t["exp"].size() != nvars)
            throw schema_error("term exponent length != |vars|");
        Exponent a = Exponent::zeros(nvars);
        for (unsigned i = 0; i < nvars; ++i) {
            a[i] = natural_from_json(t["exp"][i], "exp");
        }
        s.set_coeff(a, s.coeff(a) + rational_from_json(t["coef"]));
    }
    return s;
}

Json transform_to_json(const ElementaryTransform& nu) {
    Json j;
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, BlowUp>) {
                j["kind"] = "blowup";
                j["i"] = t.i + 1;
                j["j"] = t.j + 1;
                j["lambda"] = t.lambda.to_string();
            } else if constexpr (std::is_same_v<T, Tschirnhausen>) {
                j["kind"] = "tschirnhausen";
                j["i"] = t.i + 1;
                j["h"] = series_to_json(t.h);
            } else if constexpr (std::is_same_v<T, Shear>) {
                j["kind"] = "shear";
                j["i"] = t.i + 1;
                Json c = Json::array();
                for (const Rational& x : t.c) c.push_back(to_string(x));
                j["c"] = std::move(c);
            } else {
                j["kind"] = "ramification";
                j["i"] = t.i + 1;
                j["d"] = t.d;
                j["sign"] = t.sign > 0 ? "+" : "-";
            }
        },
        nu);
    return j;
}

ElementaryTransform transform_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw schema_error("transform needs \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "blowup") {
        unsigned i = var_index_from_json(j.at("i"), 0, "i");
        unsigned jj = var_index_from_json(j.at("j"), 0, "j");
        const Json& l = j.at("lambda");
        if (l == Json("inf")) return make_blowup(i, jj, Lambda::inf());
        return make_blowup(i, jj, Lambda(rational_from_json(l)));
    }
    if (kind == "tschirnhausen") {
        Series h = series_from_json(j.at("h"));
        unsigned i = j.contains("i") ? var_index_from_json(j["i"], h.nvars(), "i")
                                     : h.nvars() - 1;
        return make_tschirnhausen(i, h);
    }
    if (kind == "shear") {
        unsigned i = var_index_from_json(j.at("i"), 0, "i");
        if (!j.contains("c") || !j.at("c").is_array() || j["c"].size() != i)
            throw schema_error("shear needs i coefficients");
        std::vector<Rational> c;
        for (const Json& x : j["c"]) c.push_back(rational_from_json(x));
        return make_shear(i, std::move(c));
    }
    if (kind == "ramification") {
        unsigned i = var_index_from_json(j.at("i"), 0, "i");
        if (!j.contains("d")) throw schema_error("ramification needs a natural \"d\"");
        std::string sgn = j.value("sign", "+");
        if (sgn != "+" && sgn != "-") throw schema_error("sign must be \"+\" or \"-\"");
        return make_ramification(i, natural_from_json(j["d"], "d"), sgn == "+" ? 1 : -1);
    }
    throw schema_error("unknown transform kind: " + kind);
}

Json path_to_json(const TransformPath& path) {
    Json j = Json::array();
    for (const ElementaryTransform& nu : path.steps) j.push_back(transform_to_json(nu));
    return j;
}

TransformPath path_from_json(const Json& j) {
    if (!j.is_array()) throw schema_error("a path is an array of transforms");
    TransformPath path;
    for (const Json& t : j) path.steps.push_back(transform_from_json(t));
    return path;
}

Json certificate_to_json(const NormalCertificate& cert) {
    Json j;
    j["alpha"] = cert.alpha.e;
    j["unit_constant"] = to_string(cert.unit_constant);
    return j;
}

NormalCertificate certificate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("alpha") || !j.contains("unit_constant"))
        throw schema_error("a certificate needs \"alpha\" and \"unit_constant\"");
    if (!j["alpha"].is_array()) throw schema_error("\"alpha\" is an array of naturals");
    NormalCertificate cert;
    for (const Json& a : j["alpha"]) cert.alpha.e.push_back(natural_from_json(a, "alpha"));
    cert.unit_constant = rational_from_json(j["unit_constant"]);
    unsigned n = static_cast<unsigned>(cert.alpha.e.size());
    cert.unit = Series::constant(n, cert.unit_constant);
    return cert;
}

Json quadrant_to_json(const SubQuadrant& q) {
    Json factors = Json::array();
    for (const QuadrantFactor& f : q.factors) {
        Json e;
        e["sign"] = factor_json_name(f.kind);
        if (f.kind != FactorSign::Zero) e["radius"] = to_string(f.radius);
        factors.push_back(std::move(e));
    }
    return factors;
}

SubQuadrant quadrant_from_json(const Json& j) {
    if (!j.is_array()) throw schema_error("a quadrant is an array of sign factors");
    SubQuadrant q;
    for (const Json& e : j) {
        if (!e.is_object() || !e.contains("sign") || !e["sign"].is_string())
            throw schema_error("a quadrant factor needs a \"sign\" of \"0\", \"+\" or \"-\"");
        std::string s = e["sign"].get<std::string>();
        QuadrantFactor f;
        if (s == "0") f.kind = FactorSign::Zero;
        else if (s == "+") f.kind = FactorSign::Pos;
        else if (s == "-") f.kind = FactorSign::Neg;
        else throw schema_error("a quadrant factor needs a \"sign\" of \"0\", \"+\" or \"-\"");
        if (f.kind != FactorSign::Zero) {
            if (!e.contains("radius")) throw schema_error("open quadrant factors need a \"radius\"");
            f.radius = rational_from_json(e["radius"]);
            if (sign(f.radius) <= 0) throw schema_error("quadrant radii are positive");
        }
        q.factors.push_back(std::move(f));
    }
    return q;
}

Json chart_to_json(const Chart& c) {
    Json j;
    j["quadrant"] = quadrant_to_json(c.quadrant);
    j["path"] = path_to_json(c.path);
    return j;
}

Json coverage_to_json(const CoverageReport& r) {
    Json j;
    j["samples"] = r.samples;
    j["covered"] = r.covered;
    j["fraction"] = r.fraction();
    j["chart_hits"] = r.chart_hits;
    j["frontier"] = r.frontier_notes;
    return j;
}

Json hbasic_to_json(const HBasicSet& a) {
    Json j;
    Json radius = Json::array();
    for (const Rational& r : a.polyradius) radius.push_back(to_string(r));
    j["polyradius"] = std::move(radius);
    j["eq"] = a.eq ? series_to_json(*a.eq) : Json(nullptr);
    Json ineqs = Json::array();
    for (const Series& g : a.ineqs) ineqs.push_back(series_to_json(g));
    j["ineqs"] = std::move(ineqs);
    return j;
}

HBasicSet hbasic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("polyradius"))
        throw schema_error("set needs \"polyradius\"");
    HBasicSet a;
    if (!j["polyradius"].is_array()) throw schema_error("\"polyradius\" must be an array");
    for (const Json& r : j["polyradius"]) {
        Rational v = rational_from_json(r);
        if (sign(v) <= 0) throw schema_error("polyradius entries must be positive");
        a.polyradius.push_back(v);
    }
    a.nvars = static_cast<unsigned>(a.polyradius.size());
    if (j.contains("eq") && !j["eq"].is_null()) a.eq = series_from_json(j["eq"]);
    if (j.contains("ineqs")) {
        if (!j["ineqs"].is_array()) throw schema_error("\"ineqs\" must be an array");
        for (const Json& g : j["ineqs"]) a.ineqs.push_back(series_from_json(g));
    }
    if (a.eq && a.eq->nvars() != a.nvars) throw schema_error("eq nvars != |polyradius|");
    for (const Series& g : a.ineqs)
        if (g.nvars() != a.nvars) throw schema_error("ineq nvars != |polyradius|");
    return a;
}

Json manifold_to_json(const ManifoldSpec& m) {
    Json j;
    Json radius = Json::array();
    for (const Rational& r : m.polyradius) radius.push_back(to_string(r));
    j["polyradius"] = std::move(radius);
    j["split_n"] = m.split_n;
    j["d"] = m.dim();
    Json eqs = Json::array();
    for (const Series& f : m.eqs) eqs.push_back(series_to_json(f));
    j["eqs"] = std::move(eqs);
    Json ineqs = Json::array();
    for (const Series& g : m.ineqs) ineqs.push_back(series_to_json(g));
    j["ineqs"] = std::move(ineqs);
    return j;
}

ManifoldSpec manifold_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("polyradius") || !j.contains("split_n"))
        throw schema_error("manifold needs \"polyradius\" and \"split_n\"");
    ManifoldSpec m;
    for (const Json& r : j["polyradius"]) {
        Rational v = rational_from_json(r);
        if (sign(v) <= 0) throw schema_error("polyradius entries must be positive");
        m.polyradius.push_back(v);
    }
    m.nvars = static_cast<unsigned>(m.polyradius.size());
    m.split_n = natural_from_json(j["split_n"], "split_n");
    if (m.split_n > m.nvars) throw schema_error("split_n exceeds the variable count");
    if (j.contains("eqs"))
        for (const Json& f : j["eqs"]) m.eqs.push_back(series_from_json(f));
    if (j.contains("ineqs"))
        for (const Json& g : j["ineqs"]) m.ineqs.push_back(series_from_json(g));
    for (const Series& f : m.eqs)
        if (f.nvars() != m.nvars) throw schema_error("eq nvars != |polyradius|");
    for (const Series& g : m.ineqs)
        if (g.nvars() != m.nvars) throw schema_error("ineq nvars != |polyradius|");
    if (m.eqs.size() > m.nvars) throw schema_error("more equations than variables");
    if (j.contains("d") && is_natural(j["d"]) && natural_from_json(j["d"], "d") != m.dim())
        throw schema_error("\"d\" hint disagrees with nvars - |eqs|");
    return m;
}

namespace {

Json node_to_json(const TreeNode& node) {
    Json j;
    Json state = Json::array();
    for (const Series& s : node.series_state) state.push_back(series_to_json(s));
    j["state"] = std::move(state);
    if (node.edge_in) j["edge"] = transform_to_json(*node.edge_in);
    if (node.measure) j["measure"] = node.measure->to_string();
    if (const auto* leaf = std::get_if<LeafChildren>(&node.children)) {
        Json certs = Json::array();
        for (const NormalCertificate& c : leaf->certificates)
            certs.push_back(certificate_to_json(c));
        j["leaf"] = true;
        j["certificates"] = std::move(certs);
    } else if (const auto* fam = std::get_if<LambdaFamilyChildren>(&node.children)) {
        j["family"] = {{"i", fam->i + 1}, {"j", fam->j + 1}};
        Json children = Json::object();
        for (const auto& [lambda, child] : fam->expanded)
            children[lambda.to_string()] = node_to_json(*child);
        j["expanded"] = std::move(children);
    } else {
        const auto& exp = std::get<ExpandedChildren>(node.children);
        Json children = Json::array();
        for (const NodePtr& child : exp.children) children.push_back(node_to_json(*child));
        j["children"] = std::move(children);
    }
    return j;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

void node_to_dot(const TreeNode& node, std::ostream& os, unsigned& counter, unsigned id) {
    std::string label;
    if (const auto* leaf = std::get_if<LeafChildren>(&node.children)) {
        label = "normal";
        if (!leaf->certificates.empty()) {
            label += "\\nalpha=" + leaf->certificates[0].alpha.to_string();
            label += " unit=" + to_string(leaf->certificates[0].unit_constant);
        }
        os << "  n" << id << " [shape=box,label=\"" << label << "\"];\n";
    } else if (const auto* fam = std::get_if<LambdaFamilyChildren>(&node.children)) {
        os << "  n" << id << " [label=\"pi(x" << fam->i + 1 << ",x" << fam->j + 1 << ")\"];\n";
        for (const auto& [lambda, child] : fam->expanded) {
            unsigned cid = ++counter;
            node_to_dot(*child, os, counter, cid);
            os << "  n" << id << " -> n" << cid << " [label=\"lambda="
               << dot_escape(lambda.to_string()) << "\"];\n";
        }
    } else {
        os << "  n" << id << " [label=\"\"];\n";
        for (const NodePtr& child : std::get<ExpandedChildren>(node.children).children) {
            unsigned cid = ++counter;
            node_to_dot(*child, os, counter, cid);
            std::string edge = child->edge_in ? transform_to_string(*child->edge_in) : "";
            os << "  n" << id << " -> n" << cid << " [label=\"" << dot_escape(edge)
               << "\"];\n";
        }
    }
}

} // namespace

Json tree_to_json(const NodePtr& root) { return node_to_json(*root); }

std::string tree_to_dot(const NodePtr& root) {
    std::ostringstream os;
    os << "digraph tree {\n";
    unsigned counter = 0;
    node_to_dot(*root, os, counter, 0);
    os << "}\n";
    return os.str();
}

} // namespace mono
