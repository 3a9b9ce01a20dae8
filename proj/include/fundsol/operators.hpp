#ifndef FUNDSOL_OPERATORS_HPP
#define FUNDSOL_OPERATORS_HPP

#include <vector>

#include "fundsol/harmonic.hpp"

namespace fundsol {

// Second-order operator L = sum A_ij d_ij + sum b_i d_i + c with
// polynomial coefficients. A is exactly symmetric; the exact pipeline
// (t_delta, build_expansion, verify_neumann) additionally requires
// A(0) == id exactly.
struct OperatorSpec {
    int n;
    std::vector<std::vector<MultiPoly>> A;
    std::vector<MultiPoly> b;
    MultiPoly c;

    OperatorSpec(int n, std::vector<std::vector<MultiPoly>> A, std::vector<MultiPoly> b, MultiPoly c);
    static OperatorSpec laplacian(int n);

    int degree_bound() const;  // max total degree among all coefficients
    bool a0_is_identity() const;
    std::vector<std::vector<double>> a0_numeric() const;
    // delta_ij - A_ij
    MultiPoly a_perturbation(int i, int j) const;
};

// Delta: H^{k,h} -> H^{k,h-2} by the exact matrix formula
//   h(2k+h+n-2) |x|^{h-2} (p + q log|x|) + (2(k+h)+n-2) |x|^{h-2} q.
// Requires (k,h) in Omega. On the line 2k+h+n-2 == 0 the returned value is
// the pointwise Laplacian away from 0 (e.g. Delta|x|^{2-n} = 0), not the
// distributional one.
HarmonicElement op_laplacian(const HarmonicElement& f);

// Canonical right inverse: H^{k,h} -> H^{k,h+2}, with
//   (Delta^{-1})_{k,-2}^{k,0}(p|x|^{-2}) = p log|x| / (2k+n-2)
// on the kernel line, and Delta^{-1}(delta) = psi (log|x| for n = 2,
// |x|^{2-n} for n >= 3, unit normalization).
HarmonicElement op_inv_laplacian(const HarmonicElement& f);

struct MulXResult {
    HarmonicElement raised;   // (k+1, h)
    HarmonicElement lowered;  // (k-1, h+2); zero element at k == 0
};

// m_{x_alpha} via x_a p = (x_a p - d_a p |x|^2/(2k+n-2)) + d_a p |x|^2/(2k+n-2).
// Valid on Omega and on the critical boundary k+h == -n.
MulXResult op_mul_x(const HarmonicElement& f, int axis);

struct DerivResult {
    HarmonicElement down;  // (k-1, h)
    HarmonicElement up;    // (k+1, h-2)
};

// d_alpha as the pointwise splitting
//   d_a f = (d_a p |x|^h + d_a q |x|^h log|x|) + m_{x_a}((hp+q)|x|^{h-2} + hq|x|^{h-2} log|x|).
// Distributional below k+h > -(n-1); admitted at k+h == -(n-1) where the
// critical-line product rule applies once an x_beta factor is absorbed.
DerivResult op_deriv(const HarmonicElement& f, int axis);

// m_a for a polynomial a: iterated m_{x_alpha} per monomial.
HSeries op_mul_poly(const MultiPoly& a, const HSeries& f);
HSeries op_mul_poly(const MultiPoly& a, const HarmonicElement& f);

// Element-wise Delta^{-1} over a series; delta |-> psi.
HSeries inv_laplacian_series(const HSeries& f);

// L f = sum m_{A_ij} d_i d_j f + sum m_{b_i} d_i f + m_c f, computed
// pointwise. delta elements are rejected (use t_delta); for an input
// containing psi the pointwise value misses the distributional Dirac mass
// of the Laplacian part, which callers account for explicitly.
HSeries apply_L(const OperatorSpec& op, const HSeries& f);

// T f = (Delta - L)(Delta^{-1} f) for f supported in Omega.
HSeries apply_T(const OperatorSpec& op, const HSeries& f);

// T delta, unit normalization. Requires A(0) == id exactly so that every
// monomial of delta_ij - A_ij carries an x_beta factor (critical-line rule).
HSeries t_delta(const OperatorSpec& op);

}  // namespace fundsol

#endif
