#include "fundsol/operators.hpp"

#include <stdexcept>
#include <string>

namespace fundsol {

namespace {

std::string idx_str(const Index& i) {
    return "(" + std::to_string(i.k) + "," + std::to_string(i.h) + ")";
}

void require_regular(const HarmonicElement& f, const char* who) {
    if (f.is_delta()) throw std::invalid_argument(std::string(who) + ": delta element not admissible here");
}

}  // namespace

OperatorSpec::OperatorSpec(int n_, std::vector<std::vector<MultiPoly>> A_, std::vector<MultiPoly> b_,
                           MultiPoly c_)
    : n(n_), A(std::move(A_)), b(std::move(b_)), c(std::move(c_)) {
    if (n < 2) throw std::invalid_argument("OperatorSpec: dimension must be >= 2");
    if (static_cast<int>(A.size()) != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("OperatorSpec: coefficient arrays have wrong size");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(A[i].size()) != n)
            throw std::invalid_argument("OperatorSpec: A is not n x n");
        for (int j = 0; j < n; ++j) {
            if (A[i][j].n() != n) throw std::invalid_argument("OperatorSpec: A entry has wrong dimension");
            if (j < i && !(A[i][j] == A[j][i]))
                throw std::invalid_argument("OperatorSpec: A is not symmetric at (" + std::to_string(i + 1) +
                                            "," + std::to_string(j + 1) + ")");
        }
        if (b[i].n() != n) throw std::invalid_argument("OperatorSpec: b entry has wrong dimension");
    }
    if (c.n() != n) throw std::invalid_argument("OperatorSpec: c has wrong dimension");
}

OperatorSpec OperatorSpec::laplacian(int n) {
    std::vector<std::vector<MultiPoly>> A(n, std::vector<MultiPoly>(n, MultiPoly(n)));
    for (int i = 0; i < n; ++i) A[i][i] = MultiPoly::constant(n, rat(1));
    return OperatorSpec(n, std::move(A), std::vector<MultiPoly>(n, MultiPoly(n)), MultiPoly(n));
}

int OperatorSpec::degree_bound() const {
    int d = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) d = std::max(d, A[i][j].total_degree());
        d = std::max(d, b[i].total_degree());
    }
    return std::max(d, c.total_degree());
}

bool OperatorSpec::a0_is_identity() const {
    const Exponents zero(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (A[i][j].coeff(zero) != (i == j ? Rational(1) : Rational(0))) return false;
    return true;
}

std::vector<std::vector<double>> OperatorSpec::a0_numeric() const {
    const Exponents zero(n, 0);
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = rat_to_double(A[i][j].coeff(zero));
    return m;
}

MultiPoly OperatorSpec::a_perturbation(int i, int j) const {
    MultiPoly d(n);
    if (i == j) d = MultiPoly::constant(n, rat(1));
    return d - A[i][j];
}

HarmonicElement op_laplacian(const HarmonicElement& f) {
    require_regular(f, "op_laplacian");
    const Index idx = f.idx();
    const int n = f.n();
    if (!in_omega(idx, n))
        throw std::invalid_argument("op_laplacian: index " + idx_str(idx) + " outside Omega");
    const int k = idx.k, h = idx.h;
    const Rational diag = rat(static_cast<long>(h) * (2L * k + h + n - 2));
    const Rational off = rat(2L * (k + h) + n - 2);
    HomoPoly p = f.p() * diag + f.q() * off;
    HomoPoly q = f.q() * diag;
    return HarmonicElement(Index{k, h - 2}, std::move(p), std::move(q));
}

HarmonicElement op_inv_laplacian(const HarmonicElement& f) {
    const int n = f.n();
    if (f.is_delta()) {
        // psi in unit normalization: the transcendental c_n is applied only
        // at numeric evaluation under the geometric flag.
        const Rational coeff = f.delta_coefficient();
        HomoPoly one(MultiPoly::constant(n, coeff), 0);
        if (n == 2) return HarmonicElement(Index{0, 0}, HomoPoly::zero(n, 0), std::move(one));
        return HarmonicElement::pure(Index{0, 2 - n}, std::move(one));
    }
    const Index idx = f.idx();
    if (!in_omega(idx, n))
        throw std::invalid_argument("op_inv_laplacian: index " + idx_str(idx) + " outside Omega");
    const int k = idx.k, h = idx.h;
    if (h == -2) {
        // kernel line: send p|x|^{-2} to the log branch of H^{k,0}
        const Rational d = rat(2L * k + n - 2);
        return HarmonicElement(Index{k, 0}, HomoPoly::zero(n, k), f.p() / d);
    }
    const Rational a = rat(static_cast<long>(h) + 2) * rat(2L * k + h + n);  // nonzero on Omega \ {h=-2}
    if (has_log_branch(h)) {
        // target H^{k,h+2} is a log space: invert the triangular matrix
        // [[a, b],[0, a]] with b = 2(k+h)+n+2.
        const Rational bb = rat(2L * (k + h) + n + 2);
        HomoPoly q = f.q() / a;
        HomoPoly p = (f.p() - q * bb) / a;
        return HarmonicElement(Index{k, h + 2}, std::move(p), std::move(q));
    }
    return HarmonicElement::pure(Index{k, h + 2}, f.p() / a);
}

namespace {

// Raw splitting x_a p = Pi_{k+1,0}(x_a p) + d_a p |x|^2/(2k+n-2); algebraic
// identity on R^n \ {0}, index validity is the caller's business.
MulXResult mul_x_raw(const HarmonicElement& f, int axis) {
    const Index idx = f.idx();
    const int n = f.n(), k = idx.k, h = idx.h;
    if (k == 0) {
        // constant p, q: no gradient channel; the lowered slot is the zero
        // element (H^{-1,h+2} = {0}), reported at (0, h+2)
        HomoPoly rp(f.p().poly() * MultiPoly::variable(n, axis), 1);
        HomoPoly rq(f.q().poly() * MultiPoly::variable(n, axis), 1);
        return {HarmonicElement(Index{1, h}, std::move(rp), std::move(rq)),
                HarmonicElement(Index{0, h + 2}, HomoPoly::zero(n, 0), HomoPoly::zero(n, 0))};
    }
    const Rational d = rat(2L * k + n - 2);
    const MultiPoly xa = MultiPoly::variable(n, axis);
    const MultiPoly dp = f.p().poly().partial(axis);
    const MultiPoly dq = f.q().poly().partial(axis);
    HomoPoly rp(f.p().poly() * xa - dp.times_r2_pow(1) / d, k + 1);
    HomoPoly rq(f.q().poly() * xa - dq.times_r2_pow(1) / d, k + 1);
    HomoPoly lp(dp / d, k - 1);
    HomoPoly lq(dq / d, k - 1);
    return {HarmonicElement(Index{k + 1, h}, std::move(rp), std::move(rq)),
            HarmonicElement(Index{k - 1, h + 2}, std::move(lp), std::move(lq))};
}

}  // namespace

MulXResult op_mul_x(const HarmonicElement& f, int axis) {
    require_regular(f, "op_mul_x");
    const int n = f.n();
    if (axis < 1 || axis > n) throw std::invalid_argument("op_mul_x: axis out of range");
    if (!in_omega(f.idx(), n) && !on_critical_boundary(f.idx(), n))
        throw std::invalid_argument("op_mul_x: index " + idx_str(f.idx()) + " below the critical boundary");
    return mul_x_raw(f, axis);
}

DerivResult op_deriv(const HarmonicElement& f, int axis) {
    require_regular(f, "op_deriv");
    const Index idx = f.idx();
    const int n = f.n(), k = idx.k, h = idx.h;
    if (axis < 1 || axis > n) throw std::invalid_argument("op_deriv: axis out of range");
    if (k + h < -(n - 1))
        throw std::invalid_argument("op_deriv: index " + idx_str(idx) + " below the critical line");

    // gradient channel at (k-1, h)
    HomoPoly down_p = k == 0 ? HomoPoly::zero(n, 0) : HomoPoly(f.p().poly().partial(axis), k - 1);
    HomoPoly down_q = k == 0 ? HomoPoly::zero(n, 0) : HomoPoly(f.q().poly().partial(axis), k - 1);

    // radial channel: m_{x_a} applied to (hp+q)|x|^{h-2} + hq|x|^{h-2} log|x|
    const Rational hh = rat(h);
    HomoPoly gp = f.p() * hh + f.q();
    HomoPoly gq = f.q() * hh;
    HarmonicElement g(Index{k, h - 2}, std::move(gp), std::move(gq));
    MulXResult m = mul_x_raw(g, axis);

    HarmonicElement down =
        HarmonicElement(Index{k - 1 < 0 ? 0 : k - 1, h}, std::move(down_p), std::move(down_q));
    if (k > 0) down = down + m.lowered;
    return {std::move(down), std::move(m.raised)};
}

HSeries op_mul_poly(const MultiPoly& a, const HarmonicElement& f) {
    return op_mul_poly(a, HSeries::single(f));
}

HSeries op_mul_poly(const MultiPoly& a, const HSeries& f) {
    const int n = f.n();
    if (a.n() != n) throw std::invalid_argument("op_mul_poly: dimension mismatch");
    HSeries out(n);
    for (const auto& [e, c] : a.terms()) {
        HSeries cur = f;
        for (int axis = 1; axis <= n; ++axis) {
            for (unsigned rep = 0; rep < e[axis - 1]; ++rep) {
                HSeries next(n);
                for (const auto& [idx, el] : cur.entries()) {
                    require_regular(el, "op_mul_poly");
                    MulXResult m = mul_x_raw(el, axis);
                    next.add(m.raised);
                    if (idx.k > 0) next.add(m.lowered);
                }
                cur = std::move(next);
            }
        }
        out.add(series_scale(cur, c));
    }
    return out;
}

HSeries inv_laplacian_series(const HSeries& f) {
    HSeries out(f.n());
    for (const auto& [idx, el] : f.entries()) out.add(op_inv_laplacian(el));
    return out;
}

namespace {

HSeries deriv_series(const HSeries& f, int axis) {
    HSeries out(f.n());
    for (const auto& [idx, el] : f.entries()) {
        DerivResult d = op_deriv(el, axis);
        out.add(d.down);
        out.add(d.up);
    }
    return out;
}

// sum_ij m_{A_ij}(d_i d_j g) + sum_i m_{b_i}(d_i g) + m_c g with the signs
// flipped when `perturbation` is set, i.e. (Delta-L)g computed with
// a_ij = delta_ij - A_ij in place of A_ij.
HSeries second_order_action(const OperatorSpec& op, const HSeries& g, bool perturbation) {
    const int n = op.n;
    HSeries out(n);
    std::vector<HSeries> first;
    first.reserve(n);
    for (int i = 1; i <= n; ++i) first.push_back(deriv_series(g, i));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const MultiPoly coeff = perturbation ? op.a_perturbation(i, j) : op.A[i][j];
            if (coeff.is_zero()) continue;
            out.add(op_mul_poly(coeff, deriv_series(first[j], i + 1)));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (op.b[i].is_zero()) continue;
        HSeries t = op_mul_poly(op.b[i], first[i]);
        out.add(perturbation ? series_scale(t, rat(-1)) : t);
    }
    if (!op.c.is_zero()) {
        HSeries t = op_mul_poly(op.c, g);
        out.add(perturbation ? series_scale(t, rat(-1)) : t);
    }
    return out;
}

}  // namespace

HSeries apply_L(const OperatorSpec& op, const HSeries& f) {
    if (f.n() != op.n) throw std::invalid_argument("apply_L: dimension mismatch");
    if (f.contains_delta()) throw std::invalid_argument("apply_L: delta in input, use t_delta");
    return second_order_action(op, f, false);
}

HSeries apply_T(const OperatorSpec& op, const HSeries& f) {
    if (f.n() != op.n) throw std::invalid_argument("apply_T: dimension mismatch");
    if (f.contains_delta()) throw std::invalid_argument("apply_T: delta in input, use t_delta");
    for (const auto& [idx, el] : f.entries())
        if (!in_omega(idx, op.n))
            throw std::invalid_argument("apply_T: support index " + idx_str(idx) + " outside Omega");
    HSeries g = inv_laplacian_series(f);
    HSeries out = second_order_action(op, g, true);
    for (const auto& [idx, el] : out.entries())
        if (!in_omega(idx, op.n))
            throw std::invalid_argument("apply_T: produced index " + idx_str(idx) + " outside Omega");
    return out;
}

HSeries t_delta(const OperatorSpec& op) {
    if (!op.a0_is_identity())
        throw std::invalid_argument("t_delta: A(0) must equal the identity exactly");
    HSeries psi = HSeries::single(op_inv_laplacian(HarmonicElement::make_delta(op.n)));
    HSeries out = second_order_action(op, psi, true);
    for (const auto& [idx, el] : out.entries())
        if (!in_omega(idx, op.n))
            throw std::invalid_argument("t_delta: produced index " + idx_str(idx) + " outside Omega");
    return out;
}

}  // namespace fundsol
