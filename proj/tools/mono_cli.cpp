#include "mono/demo.hpp"
#include "mono/json_io.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr const char* kVersion = "mono-forge 0.1.0";

using mono::Json;

struct Flags {
    std::string in, out;
    std::string format = "json";
    std::string seed_lambdas = "0,1,-1,inf";
    unsigned depth = 64;
    unsigned trunc = 16;
    unsigned grid = 0; // 0 = subcommand default
};

std::string read_payload(const Flags& flags) {
    if (flags.in.empty()) {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream f(flags.in);
    if (!f) throw mono::schema_error("cannot open input file: " + flags.in);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

Json parse_payload(const Flags& flags) {
    try {
        return Json::parse(read_payload(flags));
    } catch (const Json::parse_error& e) {
        throw mono::schema_error(std::string("malformed JSON: ") + e.what());
    }
}

void write_output(const Flags& flags, const std::string& text) {
    if (flags.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(flags.out);
    if (!f) throw mono::schema_error("cannot open output file: " + flags.out);
    f << text;
}

void write_json(const Flags& flags, const Json& j) { write_output(flags, j.dump(2) + "\n"); }

mono::MonomializeConfig config_from(const Flags& flags) {
    mono::MonomializeConfig cfg;
    cfg.max_depth = flags.depth;
    cfg.trunc = flags.trunc;
    cfg.lambda_seed.clear();
    std::stringstream ss(flags.seed_lambdas);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item == "inf") continue; // 0 and inf always expand
        auto q = mono::parse_rational(item);
        if (!q) throw mono::schema_error("bad --seed-lambdas entry: " + item);
        cfg.lambda_seed.push_back(*q);
    }
    return cfg;
}

std::vector<mono::Series> targets_from(const Json& payload) {
    const Json& arr = payload.is_array() ? payload : payload.at("targets");
    if (!arr.is_array() || arr.empty()) throw mono::schema_error("\"targets\" is a nonempty array");
    std::vector<mono::Series> targets;
    for (const Json& t : arr) targets.push_back(mono::series_from_json(t));
    return targets;
}

void cmd_normalize(const Flags& flags) {
    mono::Series f = mono::series_from_json(parse_payload(flags));
    mono::Normality r = mono::is_normal(f);
    Json out;
    switch (r.kind) {
    case mono::Normality::Kind::Normal: out["normal"] = true; break;
    case mono::Normality::Kind::NotNormal: out["normal"] = false; break;
    default: out["normal"] = "unknown"; break;
    }
    out["certificate"] = r.certificate ? mono::certificate_to_json(*r.certificate) : Json();
    write_json(flags, out);
}

void cmd_monomialize(const Flags& flags, bool default_dot) {
    std::vector<mono::Series> targets = targets_from(parse_payload(flags));
    mono::NodePtr root = mono::monomialize(targets, config_from(flags));
    std::string fmt = flags.format;
    if (default_dot && fmt == "json") fmt = "dot"; // tree-export defaults to DOT
    if (fmt == "dot")
        write_output(flags, mono::tree_to_dot(root));
    else
        write_json(flags, mono::tree_to_json(root));
}

void cmd_sign(const Flags& flags) {
    Json payload = parse_payload(flags);
    mono::NormalCertificate cert = mono::certificate_from_json(payload.at("cert"));
    mono::SubQuadrant q = mono::quadrant_from_json(payload.at("quadrant"));
    Json out;
    out["sign"] = mono::sign_on_quadrant(cert, q);
    write_json(flags, out);
}

void cmd_parametrize(const Flags& flags) {
    Json payload = parse_payload(flags);
    mono::HBasicSet A = mono::hbasic_from_json(payload.at("set"));
    std::vector<mono::Rational> delta = payload.contains("delta")
                                            ? mono::rationals_from_json(payload["delta"], "delta")
                                            : A.polyradius;
    unsigned grid = flags.grid ? flags.grid : 128;
    mono::Parametrization par =
        mono::parametrize(A, config_from(flags), delta, mono::Rational(1, grid));
    Json out;
    Json charts = Json::array();
    for (const mono::Chart& c : par.charts) charts.push_back(mono::chart_to_json(c));
    out["charts"] = std::move(charts);
    out["coverage"] = mono::coverage_to_json(par.report);
    write_json(flags, out);
}

void cmd_lift(const Flags& flags) {
    Json payload = parse_payload(flags);
    mono::HBasicSet A = mono::hbasic_from_json(payload.at("set"));
    std::vector<mono::Rational> bounds = mono::rationals_from_json(payload.at("bounds"), "bounds");
    mono::LiftedSet L = mono::lift_graphs(A, bounds);
    Json out;
    out["nvars"] = L.nvars;
    Json radius = Json::array();
    for (const mono::Rational& r : L.polyradius) radius.push_back(mono::to_string(r));
    out["polyradius"] = std::move(radius);
    Json eqs = Json::array(), ineqs = Json::array();
    for (const mono::Series& g : L.eqs) eqs.push_back(mono::series_to_json(g));
    for (const mono::Series& g : L.ineqs) ineqs.push_back(mono::series_to_json(g));
    out["eqs"] = std::move(eqs);
    out["ineqs"] = std::move(ineqs);
    write_json(flags, out);
}

void cmd_chart_at(const Flags& flags) {
    Json payload = parse_payload(flags);
    std::vector<mono::Series> targets = targets_from(payload);
    std::vector<mono::Rational> point = mono::rationals_from_json(payload.at("point"), "point");
    mono::ChartAtPoint chart = mono::chart_at_point(targets, point, config_from(flags));
    Json out;
    out["path"] = mono::path_to_json(chart.path);
    Json pre = Json::array();
    for (const mono::Rational& q : chart.preimage) pre.push_back(mono::to_string(q));
    out["preimage"] = std::move(pre);
    out["quadrant"] = chart.quadrant;
    Json certs = Json::array();
    for (const mono::NormalCertificate& c : chart.certificates)
        certs.push_back(mono::certificate_to_json(c));
    out["certificates"] = std::move(certs);
    write_json(flags, out);
}

void cmd_fibercut(const Flags& flags) {
    mono::ManifoldSpec m = mono::manifold_from_json(parse_payload(flags));
    unsigned grid = flags.grid ? flags.grid : 64;
    mono::FiberCutResult r = mono::fiber_cut(m, grid);
    if (flags.format == "csv") {
        // sampled critical points, one row per point, for external plotting
        std::ostringstream csv;
        std::vector<std::string> names = mono::default_var_names(m.nvars);
        for (unsigned i = 0; i < m.nvars; ++i) csv << (i ? "," : "") << names[i];
        csv << "\n";
        csv.precision(17);
        for (const auto& z : r.critical_samples) {
            for (unsigned i = 0; i < z.size(); ++i) csv << (i ? "," : "") << z[i];
            csv << "\n";
        }
        write_output(flags, csv.str());
        return;
    }
    Json out;
    Json eqs = Json::array();
    for (const mono::Series& g : r.equations) eqs.push_back(mono::series_to_json(g));
    out["equations"] = std::move(eqs);
    Json radius = Json::array();
    for (const mono::Rational& q : r.suggested_radius) radius.push_back(mono::to_string(q));
    out["suggested_radius"] = std::move(radius);
    out["manifold_dimension"] = r.manifold_dimension;
    out["critical_dimension"] = r.critical_dimension;
    out["projection_onto"] = r.projection_onto;
    write_json(flags, out);
}

void cmd_demo(const Flags& flags) {
    mono::FiberCutDemo demo = mono::run_fibercut_demo();
    write_output(flags, demo.report);
    if (!demo.empty_intersection) throw mono::inconclusive_error("demo certification failed");
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("MONO_FORGE_THREADS")) {
        int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"mono-forge: exact monomialization, sign charts and fiber geometry"};
    app.fallthrough();
    Flags flags;
    app.add_option("--in", flags.in, "input payload file (default: stdin)");
    app.add_option("--out", flags.out, "output file (default: stdout)");
    app.add_option("--format", flags.format, "output format: json|dot|csv")
        ->check(CLI::IsMember({"json", "dot", "csv"}));
    app.add_option("--seed-lambdas", flags.seed_lambdas, "comma-separated blow-up branch seeds");
    app.add_option("--depth", flags.depth, "recursion depth bound");
    app.add_option("--trunc", flags.trunc, "truncation degree");
    app.add_option("--grid", flags.grid, "sampling grid resolution");
    app.require_subcommand(1);

    auto* normalize = app.add_subcommand("normalize", "decide normality of a series");
    auto* monomialize = app.add_subcommand("monomialize", "run the normalization tree");
    auto* tree_export = app.add_subcommand("tree-export", "export the expanded tree (DOT default)");
    auto* sign = app.add_subcommand("sign", "sign of a certified germ on a sub-quadrant");
    auto* parametrize = app.add_subcommand("parametrize", "chart an H-basic set by sub-quadrants");
    auto* lift = app.add_subcommand("lift", "graph-variable lift of an H-basic set");
    auto* chart_at = app.add_subcommand("chart-at", "chart covering a given point");
    auto* fibercut = app.add_subcommand("fibercut", "fiberwise critical equations of a manifold");
    auto* demo = app.add_subcommand("appendix-demo", "worked exact fiber-cutting example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::cerr << kVersion << "\n";
    try {
        if (normalize->parsed()) cmd_normalize(flags);
        else if (monomialize->parsed()) cmd_monomialize(flags, false);
        else if (tree_export->parsed()) cmd_monomialize(flags, true);
        else if (sign->parsed()) cmd_sign(flags);
        else if (parametrize->parsed()) cmd_parametrize(flags);
        else if (lift->parsed()) cmd_lift(flags);
        else if (chart_at->parsed()) cmd_chart_at(flags);
        else if (fibercut->parsed()) cmd_fibercut(flags);
        else if (demo->parsed()) cmd_demo(flags);
    } catch (const mono::Error& e) {
        std::cerr << "error[" << e.name() << "]: " << e.what() << "\n";
        return e.name() == "schema" ? 2 : 1;
    } catch (const Json::exception& e) {
        std::cerr << "error[schema]: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
