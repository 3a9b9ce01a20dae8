// fundsol: exact fundamental-solution expansions for second-order elliptic
// operators with polynomial coefficients.
//
// Machine-readable JSON goes to stdout; logs and tables go to stderr.
// Exit codes: 0 success, 2 validation error, 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "fundsol/graph_bounds.hpp"
#include "fundsol/io.hpp"

using namespace fundsol;
using nlohmann::json;

namespace {

Rational parse_positive_rational(const std::string& s) {
    Rational r = rat_from_string(s);
    if (r <= 0) throw ParseError("expected a positive rational, got '" + s + "'");
    return r;
}

std::vector<double> parse_point(const std::string& s) {
    std::vector<double> pt;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            pt.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ParseError("malformed coordinate '" + tok + "' in --point");
        }
    }
    if (pt.empty()) throw ParseError("--point must list comma-separated coordinates");
    return pt;
}

OperatorSpec load_and_normalize(const std::string& path, bool allow_normalize, json& meta) {
    OperatorSpec raw = load_operator_file(path);
    if (raw.a0_is_identity()) {
        meta["normalized"] = false;
        return raw;
    }
    if (!allow_normalize)
        throw ParseError("operator has A(0) != id; this subcommand requires the normalized form");
    NormalizeResult nr = normalize_A0(raw);
    meta["normalized"] = true;
    meta["normalization_exact"] = nr.exact;
    if (!nr.exact)
        std::cerr << "warning: Q snap left A'(0) off the identity within tolerance;"
                  << " proceeding in approximate-rational mode\n";
    return nr.op;
}

int run_expand(const std::string& operator_path, int order, const std::string& normalization,
               const std::string& out_path) {
    json meta;
    OperatorSpec op = load_and_normalize(operator_path, true, meta);
    const Normalization norm =
        normalization == "geometric" ? Normalization::geometric : Normalization::unit;
    ExpansionResult e = build_expansion(op, order, norm);
    StructureReport sr = structure_check(e);
    for (const auto& v : sr.violations) std::cerr << "structure violation: " << v << "\n";
    json j = expansion_to_json(e);
    j["meta"] = meta;
    std::cerr << band_table(e);
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write " + out_path);
        out << j.dump(2) << "\n";
        std::cerr << "expansion written to " << out_path << "\n";
    }
    return sr.ok() ? 0 : 3;
}

int run_lambda(const std::string& operator_path) {
    json meta;
    OperatorSpec op = load_and_normalize(operator_path, true, meta);
    LambdaReport rep = compute_lambda(op);
    json j;
    j["alpha"] = poly_to_json(rep.alpha);
    if (rep.lambda)
        j["lambda"] = *rep.lambda;
    else
        j["lambda"] = "inf";
    j["witness"] = poly_to_json(rep.witness.poly());
    j["meta"] = meta;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_verify(const std::string& operator_path, int order) {
    json meta;
    OperatorSpec op = load_and_normalize(operator_path, true, meta);
    json orders = json::array();
    bool all_ok = true;
    for (int m = 1; m <= order; ++m) {
        NeumannWitness w = verify_neumann(op, m);
        std::cerr << "m = " << m << ": " << w.describe() << "\n";
        json o;
        o["m"] = m;
        o["ok"] = w.ok();
        if (!w.ok()) {
            o["residual"] = hseries_to_json(w.residual);
            all_ok = false;
        }
        orders.push_back(std::move(o));
    }
    json j;
    j["ok"] = all_ok;
    j["orders"] = std::move(orders);
    j["meta"] = meta;
    std::cout << j.dump(2) << "\n";
    return all_ok ? 0 : 3;
}

int run_graph(int max_len, int box_radius, int dim, int ell_max) {
    CruxFit fit = crux_fit(max_len, box_radius);
    json j;
    j["fitted_C2"] = fit.fitted_c;
    json mp;
    mp["weight"] = rat_to_string(fit.best_weight);
    mp["len"] = fit.best_len;
    mp["max_radius_sq"] = fit.best_max_radius_sq;
    json verts = json::array();
    for (const Vertex& v : fit.best_path) verts.push_back({{"k", v.k}, {"h", v.h}});
    mp["vertices"] = std::move(verts);
    j["max_path"] = std::move(mp);

    const Vertex origin{0, -dim};
    const Box box{box_radius};
    json counts = json::array();
    json violations = json::array();
    for (int ell = 1; ell <= ell_max; ++ell) {
        auto row = g1g2_power_row(ell, origin, box);
        long support = 0;
        for (const auto& [v, w] : row) {
            if (w == 0) continue;
            ++support;
            if (!sigma_member(ell, Vertex{v.k - origin.k, v.h - origin.h}))
                violations.push_back({{"ell", ell}, {"k", v.k}, {"h", v.h}});
        }
        counts.push_back({{"ell", ell}, {"support", support}});
    }
    j["counts_table"] = std::move(counts);
    j["support_violations"] = std::move(violations);
    std::cerr << "fitted C2 = " << fit.fitted_c << " (weight " << rat_to_string(fit.best_weight)
              << ", len " << fit.best_len << ", max |p|^2 = " << fit.best_max_radius_sq << ")\n";
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_eval(const std::string& operator_path, const std::string& expansion_path, int order,
             const std::string& point_str, int max_band, const std::string& normalization) {
    ExpansionResult e;
    if (!expansion_path.empty()) {
        std::ifstream in(expansion_path);
        if (!in) throw ParseError("cannot open expansion file: " + expansion_path);
        e = expansion_from_json(json::parse(in, nullptr, true));
    } else if (!operator_path.empty()) {
        json meta;
        OperatorSpec op = load_and_normalize(operator_path, true, meta);
        e = build_expansion(op, order, Normalization::unit);
    } else {
        throw ParseError("eval needs --expansion or --operator");
    }
    EvalRequest req;
    req.point = parse_point(point_str);
    req.max_band = max_band < 0 ? e.N : max_band;
    req.normalization = normalization == "geometric" ? Normalization::geometric : Normalization::unit;
    const double value = evaluate(e, req);
    json j;
    j["value"] = value;
    std::cout.precision(15);
    std::cout << j.dump(2) << "\n";
    std::cerr.precision(15);
    std::cerr << "u(x) = " << value << "\n";
    return 0;
}

int run_decay(const std::string& operator_path, const std::string& scale, int ell_max) {
    json meta;
    OperatorSpec op = load_and_normalize(operator_path, true, meta);
    DecayReport rep = decay_diagnostic(op, parse_positive_rational(scale), ell_max);
    json rows = json::array();
    for (const DecayRow& r : rep.rows) {
        rows.push_back({{"ell", r.ell}, {"k", r.idx.k}, {"h", r.idx.h}, {"norm", r.norm}});
        std::cerr << "ell=" << r.ell << " (k,h)=(" << r.idx.k << "," << r.idx.h << ") |pi(T^ell d)| = "
                  << r.norm << "\n";
    }
    json j;
    j["scale"] = rat_to_string(rep.scale);
    j["rows"] = std::move(rows);
    j["fitted_ratio"] = rep.fitted_ratio;
    std::cerr << "fitted ratio = " << rep.fitted_ratio << "\n";
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact fundamental-solution expansions for elliptic operators"};
    app.require_subcommand(1);

    std::string operator_path, expansion_path, out_path, point_str;
    std::string normalization = "unit";
    std::string scale = "1/2";
    int order = 4, verify_order = 6, max_band = -1;
    int max_len = 6, box_radius = 15, dim = 3, ell_max = 3;

    auto* expand = app.add_subcommand("expand", "build the expansion and write its JSON");
    expand->add_option("--operator", operator_path, "operator JSON file")->required();
    expand->add_option("--order", order, "homogeneity truncation order N");
    expand->add_option("--normalization", normalization, "unit|geometric")
        ->check(CLI::IsMember({"unit", "geometric"}));
    expand->add_option("--out", out_path, "output path (default: stdout)");

    auto* lambda = app.add_subcommand("lambda", "report lambda and its witness");
    lambda->add_option("--operator", operator_path, "operator JSON file")->required();

    auto* verify = app.add_subcommand("verify", "check L(Delta^{-1} sum T^l delta) = delta - T^m delta");
    verify->add_option("--operator", operator_path, "operator JSON file")->required();
    verify->add_option("--order", verify_order, "largest m to check");

    auto* graph = app.add_subcommand("graph", "crux fit and support checks for G1, G2");
    graph->add_option("--max-len", max_len, "maximum path length");
    graph->add_option("--box", box_radius, "box radius");
    graph->add_option("--dim", dim, "dimension n for the (0,-n) source");
    graph->add_option("--ell", ell_max, "largest power of G1.G2 to scan");

    auto* eval = app.add_subcommand("eval", "evaluate a truncated expansion at a point");
    eval->add_option("--operator", operator_path, "operator JSON file");
    eval->add_option("--expansion", expansion_path, "precomputed expansion JSON");
    eval->add_option("--order", order, "truncation order when building from an operator");
    eval->add_option("--point", point_str, "comma-separated coordinates")->required();
    eval->add_option("--max-band", max_band, "evaluate bands ell <= max-band (default: all)");
    eval->add_option("--normalization", normalization, "unit|geometric")
        ->check(CLI::IsMember({"unit", "geometric"}));

    auto* decay = app.add_subcommand("decay", "per-band norms of T^ell delta for a rescaled operator");
    decay->add_option("--operator", operator_path, "operator JSON file")->required();
    decay->add_option("--scale", scale, "rescaling factor r as a rational, e.g. 1/10");
    decay->add_option("--ell-max", ell_max, "largest power");

    CLI11_PARSE(app, argc, argv);

    try {
        if (expand->parsed()) return run_expand(operator_path, order, normalization, out_path);
        if (lambda->parsed()) return run_lambda(operator_path);
        if (verify->parsed()) return run_verify(operator_path, verify_order);
        if (graph->parsed()) return run_graph(max_len, box_radius, dim, ell_max);
        if (eval->parsed())
            return run_eval(operator_path, expansion_path, order, point_str, max_band, normalization);
        if (decay->parsed()) return run_decay(operator_path, scale, ell_max);
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 3;
    }
    return 0;
}
