#ifndef FUNDSOL_EXPANSION_HPP
#define FUNDSOL_EXPANSION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fundsol/operators.hpp"

namespace fundsol {

enum class Normalization { unit, geometric };

// One homogeneity band of the fundamental solution: the term
// |x|^{2-n} u_ell with u_ell = p_ell / |x|^{2ell}, plus the log companion
// (the (ell-(n-2))-homogeneous part of v). p_reduced and denom_exp encode
// p_ell = |x|^{2ell - denom_exp} p_reduced.
struct ExpansionBand {
    int ell;
    HomoPoly p;          // degree 3*ell
    HomoPoly p_reduced;  // degree 3*ell - 2*(2*ell - denom_exp)... i.e. ell + denom_exp
    int denom_exp;
    HomoPoly log_part;  // v_{ell-(n-2)}, degree ell-(n-2); zero when n odd
};

// Truncated expansion u = v log|x| + |x|^{2-n} sum u_ell, exact in every
// band ell <= N. lambda is nullopt for lambda = infinity.
struct ExpansionResult {
    int n;
    Normalization normalization;
    int N;
    std::optional<int> lambda;
    std::map<int, ExpansionBand> bands;  // keys 0..N

    const ExpansionBand& band(int ell) const;
};

struct LambdaReport {
    MultiPoly alpha;            // sum_ij (delta_ij - A_ij) x_i x_j
    std::optional<int> lambda;  // smallest degree >= 3 with Pi_{d,0}(alpha_d) != 0
    HomoPoly witness;           // that harmonic top component (zero for lambda = infinity)
};

struct NormalizeResult {
    std::vector<std::vector<double>> Q;            // positive symmetric sqrt of A(0)
    std::vector<std::vector<Rational>> Q_rational; // snapped copy used for the exact transform
    OperatorSpec op;                               // L' with A'(0) == id
    bool exact;  // false when the snap had to force A'(0) to the identity
};

// Q = sqrt(A(0)), L'(x) = Q^{-1} A(Qx) Q^{-1} d^2 + Q^{-1} b(Qx) d + c(Qx).
// Identity short-circuit when A(0) == id exactly. Q entries are snapped to
// rationals (tolerance 1e-12) before the exact transform; if the snapped
// transform leaves A'(0) != id, the constant terms are forced to the
// identity and `exact` is cleared.
NormalizeResult normalize_A0(const OperatorSpec& op);

// L_r = (A_ij)_r d_ij + r (b_i)_r d_i + r^2 c_r with g_r(x) = g(rx), r > 0.
OperatorSpec rescale(const OperatorSpec& op, const Rational& r);

// Exact T^ell delta (ell = 0 gives the distinguished delta element).
HSeries t_power_delta(const OperatorSpec& op, int ell);

// Sums Delta^{-1} T^ell delta until T^ell delta can no longer contribute to
// a band <= N (min total homogeneity of T^ell delta strictly increases with
// ell, so stopping at min > N-n is sharp), then regroups by homogeneity.
ExpansionResult build_expansion(const OperatorSpec& op, int N, Normalization normalization);

LambdaReport compute_lambda(const OperatorSpec& op);

// L(Delta^{-1} sum_{ell<m} T^ell delta) = delta - T^m delta, checked as the
// exact algebraic identity apply_L(...) + T^m delta == 0 (the Dirac masses
// cancel; see the note in the implementation). Empty residual == pass.
struct NeumannWitness {
    HSeries residual;
    bool ok() const { return residual.empty(); }
    std::string describe() const;
};
NeumannWitness verify_neumann(const OperatorSpec& op, int m);

struct StructureReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// deg p_ell == 3 ell, exact divisibility exponent 2 ell - floor(2ell/(lambda-2)),
// sharpness of p_reduced when (lambda-2) | ell, band parity, and no log
// terms in odd dimension.
StructureReport structure_check(const ExpansionResult& e);

struct DecayRow {
    int ell;
    Index idx;
    double norm;  // sqrt of the exact ||pi_{k,h}(T^ell delta)||^2, omega units
};

struct DecayReport {
    Rational scale;
    std::vector<DecayRow> rows;
    double fitted_ratio;  // max over rows of norm^{1/(k+h+n)}
};

// Per-band norms of T^ell delta for the rescaled operator; diagnostic only.
DecayReport decay_diagnostic(const OperatorSpec& op, const Rational& r, int ell_max);

}  // namespace fundsol

#endif
