#ifndef FUNDSOL_IO_HPP
#define FUNDSOL_IO_HPP

#include <string>

#include <json.hpp>

#include "fundsol/expansion.hpp"

namespace fundsol {

// Raised on malformed input; message carries field context.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// poly = [{"e": [ints], "num": "int", "den": "int"}]
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j, int n, const std::string& where);

// {"n": int, "A": [[poly]], "b": [poly], "c": poly, "name"?, "description"?}
nlohmann::json operator_to_json(const OperatorSpec& op);
OperatorSpec parse_operator(const std::string& text);
OperatorSpec operator_from_json(const nlohmann::json& j);
OperatorSpec load_operator_file(const std::string& path);

// {n, normalization, N, lambda, bands: [{ell, p, p_reduced, denom_exp, log}]}
// lambda is an integer or the string "inf".
nlohmann::json expansion_to_json(const ExpansionResult& e);
ExpansionResult expansion_from_json(const nlohmann::json& j);

// [{k, h, p: poly, q: poly}] sorted by (k+h, k); delta entries are refused.
nlohmann::json hseries_to_json(const HSeries& s);
HSeries hseries_from_json(const nlohmann::json& j, int n);

struct EvalRequest {
    std::vector<double> point;
    int max_band;
    Normalization normalization;
};

// Truncated value sum_{ell<=max_band} p_ell(x)/|x|^{2ell+n-2}
// + (sum v_m(x)) log|x|, times c_n under the geometric normalization.
double evaluate(const ExpansionResult& e, const EvalRequest& req);

// omega_{n-1} = surface measure of S^{n-1}
double sphere_area(int n);
// c_2 = 1/(2 pi); c_n = 1/((2-n) omega_{n-1}) for n >= 3 (classical
// Newtonian convention, c_3 = -1/(4 pi))
double newton_constant(int n);

std::string band_table(const ExpansionResult& e);  // human-readable summary

}  // namespace fundsol

#endif
