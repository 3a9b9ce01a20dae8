#include "fundsol/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fundsol {

using nlohmann::json;

nlohmann::json poly_to_json(const MultiPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {  // lexicographic, canonical
        json t;
        t["e"] = e;
        t["num"] = c.get_num().get_str();
        t["den"] = c.get_den().get_str();
        terms.push_back(std::move(t));
    }
    return terms;
}

MultiPoly poly_from_json(const json& j, int n, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": polynomial must be an array of terms");
    MultiPoly p(n);
    int pos = 0;
    for (const auto& t : j) {
        const std::string ctx = where + ", term " + std::to_string(pos++);
        if (!t.is_object() || !t.contains("e") || !t.contains("num") || !t.contains("den"))
            throw ParseError(ctx + ": expected {e, num, den}");
        if (!t["e"].is_array() || static_cast<int>(t["e"].size()) != n)
            throw ParseError(ctx + ": exponent vector must have length " + std::to_string(n));
        Exponents e;
        for (const auto& x : t["e"]) {
            if (!x.is_number_integer() || x.get<long>() < 0)
                throw ParseError(ctx + ": exponents must be nonnegative integers");
            e.push_back(x.get<unsigned>());
        }
        if (!t["num"].is_string() || !t["den"].is_string())
            throw ParseError(ctx + ": num and den must be integer strings");
        Rational c;
        try {
            Integer num(t["num"].get<std::string>());
            Integer den(t["den"].get<std::string>());
            if (den == 0) throw std::invalid_argument("zero denominator");
            c = Rational(num, den);
            c.canonicalize();
        } catch (const std::exception& ex) {
            throw ParseError(ctx + ": malformed rational (" + ex.what() + ")");
        }
        p.add_term(e, c);
    }
    return p;
}

json operator_to_json(const OperatorSpec& op) {
    json j;
    j["n"] = op.n;
    json a = json::array();
    for (int i = 0; i < op.n; ++i) {
        json row = json::array();
        for (int jj = 0; jj < op.n; ++jj) row.push_back(poly_to_json(op.A[i][jj]));
        a.push_back(std::move(row));
    }
    j["A"] = std::move(a);
    json b = json::array();
    for (int i = 0; i < op.n; ++i) b.push_back(poly_to_json(op.b[i]));
    j["b"] = std::move(b);
    j["c"] = poly_to_json(op.c);
    return j;
}

OperatorSpec operator_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("operator: expected a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("operator: missing integer field 'n'");
    const int n = j["n"].get<int>();
    if (n < 2) throw ParseError("operator: n must be >= 2");
    if (!j.contains("A") || !j["A"].is_array() || static_cast<int>(j["A"].size()) != n)
        throw ParseError("operator: 'A' must be an n x n array");
    std::vector<std::vector<MultiPoly>> a;
    for (int i = 0; i < n; ++i) {
        const auto& row = j["A"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("operator: row " + std::to_string(i + 1) + " of 'A' must have length n");
        std::vector<MultiPoly> arow;
        for (int jj = 0; jj < n; ++jj)
            arow.push_back(poly_from_json(row[jj], n, "A[" + std::to_string(i + 1) + "][" +
                                                          std::to_string(jj + 1) + "]"));
        a.push_back(std::move(arow));
    }
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < i; ++jj)
            if (!(a[i][jj] == a[jj][i]))
                throw ParseError("operator: A is not symmetric at (" + std::to_string(i + 1) + "," +
                                 std::to_string(jj + 1) + ")");
    if (!j.contains("b") || !j["b"].is_array() || static_cast<int>(j["b"].size()) != n)
        throw ParseError("operator: 'b' must be an array of n polynomials");
    std::vector<MultiPoly> b;
    for (int i = 0; i < n; ++i)
        b.push_back(poly_from_json(j["b"][i], n, "b[" + std::to_string(i + 1) + "]"));
    if (!j.contains("c")) throw ParseError("operator: missing field 'c'");
    MultiPoly c = poly_from_json(j["c"], n, "c");
    return OperatorSpec(n, std::move(a), std::move(b), std::move(c));
}

OperatorSpec parse_operator(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ParseError(std::string("operator: invalid JSON: ") + ex.what());
    }
    return operator_from_json(j);
}

OperatorSpec load_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open operator file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_operator(ss.str());
}

json expansion_to_json(const ExpansionResult& e) {
    json j;
    j["n"] = e.n;
    j["normalization"] = e.normalization == Normalization::unit ? "unit" : "geometric";
    j["N"] = e.N;
    if (e.lambda)
        j["lambda"] = *e.lambda;
    else
        j["lambda"] = "inf";
    json bands = json::array();
    for (const auto& [ell, band] : e.bands) {
        json b;
        b["ell"] = ell;
        b["p"] = poly_to_json(band.p.poly());
        b["p_reduced"] = poly_to_json(band.p_reduced.poly());
        b["denom_exp"] = band.denom_exp;
        b["log"] = poly_to_json(band.log_part.poly());
        bands.push_back(std::move(b));
    }
    j["bands"] = std::move(bands);
    return j;
}

ExpansionResult expansion_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("expansion: expected a JSON object");
    ExpansionResult e;
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("expansion: missing 'n'");
    e.n = j["n"].get<int>();
    const std::string norm = j.value("normalization", "unit");
    if (norm != "unit" && norm != "geometric")
        throw ParseError("expansion: normalization must be 'unit' or 'geometric'");
    e.normalization = norm == "unit" ? Normalization::unit : Normalization::geometric;
    if (!j.contains("N") || !j["N"].is_number_integer()) throw ParseError("expansion: missing 'N'");
    e.N = j["N"].get<int>();
    if (!j.contains("lambda")) throw ParseError("expansion: missing 'lambda'");
    if (j["lambda"].is_number_integer())
        e.lambda = j["lambda"].get<int>();
    else if (j["lambda"].is_string() && j["lambda"].get<std::string>() == "inf")
        e.lambda = std::nullopt;
    else
        throw ParseError("expansion: lambda must be an integer or \"inf\"");
    if (!j.contains("bands") || !j["bands"].is_array()) throw ParseError("expansion: missing 'bands'");
    for (const auto& bj : j["bands"]) {
        if (!bj.is_object() || !bj.contains("ell")) throw ParseError("expansion: malformed band");
        const int ell = bj["ell"].get<int>();
        const std::string where = "band " + std::to_string(ell);
        MultiPoly p = poly_from_json(bj["p"], e.n, where + ".p");
        MultiPoly pr = poly_from_json(bj["p_reduced"], e.n, where + ".p_reduced");
        MultiPoly lg = poly_from_json(bj["log"], e.n, where + ".log");
        const int denom_exp = bj["denom_exp"].get<int>();
        try {
            const int strip = (2 * ell - denom_exp + 1) / 2;
            const int vdeg = ell - (e.n - 2);
            e.bands.emplace(ell, ExpansionBand{ell, HomoPoly(p, 3 * ell),
                                               HomoPoly(pr, 3 * ell - 2 * strip), denom_exp,
                                               HomoPoly(lg, std::max(vdeg, 0))});
        } catch (const std::exception& ex) {
            throw ParseError(where + ": " + ex.what());
        }
    }
    return e;
}

json hseries_to_json(const HSeries& s) {
    json arr = json::array();
    for (const auto& [idx, el] : s.entries()) {  // (k+h, k) order
        if (el.is_delta()) throw std::invalid_argument("hseries_to_json: delta is not serializable");
        json e;
        e["k"] = idx.k;
        e["h"] = idx.h;
        e["p"] = poly_to_json(el.p().poly());
        e["q"] = poly_to_json(el.q().poly());
        arr.push_back(std::move(e));
    }
    return arr;
}

HSeries hseries_from_json(const json& j, int n) {
    if (!j.is_array()) throw ParseError("hseries: expected an array");
    HSeries s(n);
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("k") || !e.contains("h"))
            throw ParseError("hseries: malformed entry");
        const int k = e["k"].get<int>();
        const int h = e["h"].get<int>();
        const std::string where = "hseries (" + std::to_string(k) + "," + std::to_string(h) + ")";
        MultiPoly p = poly_from_json(e["p"], n, where + ".p");
        MultiPoly q = poly_from_json(e["q"], n, where + ".q");
        try {
            s.add(HarmonicElement(Index{k, h}, HomoPoly(p, k), HomoPoly(q, k)));
        } catch (const std::exception& ex) {
            throw ParseError(where + ": " + ex.what());
        }
    }
    return s;
}

double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

double newton_constant(int n) {
    if (n == 2) return 1.0 / (2.0 * std::numbers::pi);
    return 1.0 / ((2.0 - n) * sphere_area(n));
}

double evaluate(const ExpansionResult& e, const EvalRequest& req) {
    const int n = e.n;
    if (static_cast<int>(req.point.size()) != n)
        throw std::invalid_argument("evaluate: point has wrong dimension");
    double r2 = 0.0;
    for (double x : req.point) r2 += x * x;
    if (r2 == 0.0) throw std::invalid_argument("evaluate: point must be nonzero");
    if (req.max_band > e.N) throw std::invalid_argument("evaluate: max_band exceeds the truncation order");
    const double r = std::sqrt(r2);
    double value = 0.0;
    double log_coeff = 0.0;
    for (const auto& [ell, band] : e.bands) {
        if (ell > req.max_band) break;
        if (!band.p.is_zero())
            value += band.p.poly().eval_double(req.point) / std::pow(r, 2 * ell + n - 2);
        if (!band.log_part.is_zero()) log_coeff += band.log_part.poly().eval_double(req.point);
    }
    value += log_coeff * std::log(r);
    if (req.normalization == Normalization::geometric) value *= newton_constant(n);
    return value;
}

std::string band_table(const ExpansionResult& e) {
    std::ostringstream os;
    os << "n = " << e.n << ", N = " << e.N << ", normalization = "
       << (e.normalization == Normalization::unit ? "unit" : "geometric") << ", lambda = ";
    if (e.lambda)
        os << *e.lambda;
    else
        os << "inf";
    os << "\n";
    for (const auto& [ell, band] : e.bands) {
        os << "ell = " << ell << ":\n";
        os << "  p_" << ell << " = " << band.p.poly().to_string() << "\n";
        if (band.denom_exp > 0 || !(band.p_reduced == band.p))
            os << "  u_" << ell << " = (" << band.p_reduced.poly().to_string() << ") / |x|^"
               << band.denom_exp << "\n";
        if (!band.log_part.is_zero())
            os << "  log term: (" << band.log_part.poly().to_string() << ") log|x|\n";
    }
    return os.str();
}

}  // namespace fundsol
