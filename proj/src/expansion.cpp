#include "fundsol/expansion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fundsol {

namespace {

std::string idx_str(const Index& i) {
    return "(" + std::to_string(i.k) + "," + std::to_string(i.h) + ")";
}

// Jacobi eigenvalue iteration for a small symmetric matrix.
void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& eigenvalues,
                  std::vector<std::vector<double>>& eigenvectors) {
    const int n = static_cast<int>(a.size());
    eigenvectors.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) eigenvectors[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = eigenvectors[i][p], viq = eigenvectors[i][q];
                    eigenvectors[i][p] = c * vip - s * viq;
                    eigenvectors[i][q] = s * vip + c * viq;
                }
            }
        }
    }
    eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
}

// Best rational approximation within `tol` by continued fractions.
Rational snap_to_rational(double x, double tol) {
    if (std::abs(x - std::round(x)) <= tol) return rat(static_cast<long>(std::llround(x)));
    double v = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(v);
        const long a = static_cast<long>(fl);
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (q2 != 0 && std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <= tol)
            return rat(p2, q2);
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = v - fl;
        if (frac < 1e-15 || q1 > 1000000000L) break;
        v = 1.0 / frac;
    }
    return rat(p1, q1);  // best found; caller decides whether it is close enough
}

}  // namespace

const ExpansionBand& ExpansionResult::band(int ell) const {
    auto it = bands.find(ell);
    if (it == bands.end()) throw std::out_of_range("ExpansionResult: band " + std::to_string(ell));
    return it->second;
}

NormalizeResult normalize_A0(const OperatorSpec& op) {
    const int n = op.n;
    std::vector<std::vector<double>> a0 = op.a0_numeric();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(a0[i][j] - a0[j][i]) > 1e-12)
                throw std::invalid_argument("normalize_A0: A(0) not symmetric");

    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> v;
    jacobi_eigen(a0, eigenvalues, v);
    for (double ev : eigenvalues)
        if (ev <= 1e-12) throw std::invalid_argument("normalize_A0: A(0) not positive definite");

    std::vector<std::vector<double>> identity(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) identity[i][i] = 1.0;

    if (op.a0_is_identity()) {
        std::vector<std::vector<Rational>> qr(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i) qr[i][i] = 1;
        return {identity, qr, op, true};
    }

    // Q = V sqrt(D) V^T, Q^{-1} = V D^{-1/2} V^T
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> qinv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                q[i][j] += v[i][m] * std::sqrt(eigenvalues[m]) * v[j][m];
                qinv[i][j] += v[i][m] * (1.0 / std::sqrt(eigenvalues[m])) * v[j][m];
            }

    const double tol = 1e-12;
    std::vector<std::vector<Rational>> q_rat(n, std::vector<Rational>(n));
    std::vector<std::vector<Rational>> qinv_rat(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double scale_q = std::max(1.0, std::abs(q[i][j]));
            const double scale_i = std::max(1.0, std::abs(qinv[i][j]));
            q_rat[i][j] = snap_to_rational(q[i][j], tol * scale_q);
            qinv_rat[i][j] = snap_to_rational(qinv[i][j], tol * scale_i);
        }

    // exact transform with the snapped matrices: A'(x) = Q^{-1} A(Qx) Q^{-1}
    std::vector<std::vector<MultiPoly>> a_new(n, std::vector<MultiPoly>(n, MultiPoly(n)));
    std::vector<MultiPoly> b_new(n, MultiPoly(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MultiPoly acc(n);
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    if (qinv_rat[i][s] == 0 || qinv_rat[t][j] == 0) continue;
                    acc += op.A[s][t].compose_linear(q_rat) * (qinv_rat[i][s] * qinv_rat[t][j]);
                }
            a_new[i][j] = acc;
        }
    for (int i = 0; i < n; ++i) {
        MultiPoly acc(n);
        for (int s = 0; s < n; ++s)
            if (qinv_rat[i][s] != 0) acc += op.b[s].compose_linear(q_rat) * qinv_rat[i][s];
        b_new[i] = acc;
    }
    MultiPoly c_new = op.c.compose_linear(q_rat);

    // symmetrize rounding asymmetries introduced by the snap (exact check
    // below decides the `exact` flag)
    bool exact = true;
    const Exponents zero(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(a_new[i][j] == a_new[j][i])) {
                MultiPoly sym = (a_new[i][j] + a_new[j][i]) / rat(2);
                a_new[i][j] = sym;
                a_new[j][i] = sym;
                exact = false;
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational want = (i == j) ? Rational(1) : Rational(0);
            const Rational have = a_new[i][j].coeff(zero);
            if (have == want) continue;
            if (std::abs(rat_to_double(have - want)) > 1e-9)
                throw std::invalid_argument("normalize_A0: snapped A'(0) too far from the identity");
            a_new[i][j].add_term(zero, want - have);  // force A'(0) = id
            exact = false;
        }

    return {q, q_rat, OperatorSpec(n, std::move(a_new), std::move(b_new), std::move(c_new)), exact};
}

OperatorSpec rescale(const OperatorSpec& op, const Rational& r) {
    if (r <= 0) throw std::invalid_argument("rescale: r must be positive");
    const int n = op.n;
    std::vector<std::vector<MultiPoly>> a_new(n, std::vector<MultiPoly>(n, MultiPoly(n)));
    std::vector<MultiPoly> b_new(n, MultiPoly(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a_new[i][j] = op.A[i][j].scale_vars(r);
        b_new[i] = op.b[i].scale_vars(r) * r;
    }
    MultiPoly c_new = op.c.scale_vars(r) * (r * r);
    return OperatorSpec(n, std::move(a_new), std::move(b_new), std::move(c_new));
}

HSeries t_power_delta(const OperatorSpec& op, int ell) {
    if (ell < 0) throw std::invalid_argument("t_power_delta: negative power");
    if (ell == 0) return HSeries::single(HarmonicElement::make_delta(op.n));
    HSeries cur = t_delta(op);
    for (int i = 1; i < ell; ++i) {
        if (cur.empty()) break;
        cur = apply_T(op, cur);
    }
    return cur;
}

ExpansionResult build_expansion(const OperatorSpec& op, int N, Normalization normalization) {
    if (N < 0) throw std::invalid_argument("build_expansion: N must be nonnegative");
    if (!op.a0_is_identity())
        throw std::invalid_argument("build_expansion: A(0) must equal the identity (run normalize_A0 first)");
    const int n = op.n;

    HSeries u(n);
    HSeries term = t_power_delta(op, 0);
    for (int ell = 0;; ++ell) {
        if (term.empty()) break;
        if (term.min_total_homogeneity() > N - n) break;  // no band <= N left to feed
        if (ell > N + n + 1) throw std::logic_error("build_expansion: truncation bound exceeded");
        u.add(inv_laplacian_series(term));
        term = (ell == 0) ? t_delta(op) : apply_T(op, term);
    }

    ExpansionResult res;
    res.n = n;
    res.normalization = normalization;
    res.N = N;

    std::map<int, MultiPoly> numerators;
    std::map<int, MultiPoly> logs;
    for (const auto& [idx, el] : u.entries()) {
        if (el.is_delta()) throw std::logic_error("build_expansion: delta survived inversion");
        const int k = idx.k, h = idx.h;
        const int ell = k + h + (n - 2);  // band of total homogeneity k+h
        if (ell < 0) throw std::logic_error("build_expansion: component below homogeneity -(n-2) at " + idx_str(idx));
        if ((h + n) % 2 != 0) throw std::logic_error("build_expansion: odd-parity component at " + idx_str(idx));
        if (ell > N) continue;  // tail beyond the requested truncation
        if (!el.p().is_zero()) {
            const int e = 3 * ell - k;  // p_ell = sum p |x|^{3 ell - k}
            if (e < 0 || e % 2 != 0)
                throw std::logic_error("build_expansion: band exponent violation at " + idx_str(idx));
            auto it = numerators.emplace(ell, MultiPoly(n)).first;
            it->second += el.p().poly().times_r2_pow(e / 2);
        }
        if (!el.q().is_zero()) {
            auto it = logs.emplace(ell, MultiPoly(n)).first;
            it->second += el.q().poly().times_r2_pow(h / 2);  // v_{k+h} += q |x|^h
        }
    }

    LambdaReport lr = compute_lambda(op);
    res.lambda = lr.lambda;

    for (int ell = 0; ell <= N; ++ell) {
        auto pn = numerators.find(ell);
        HomoPoly p = pn == numerators.end() ? HomoPoly::zero(n, 3 * ell) : HomoPoly(pn->second, 3 * ell);
        auto lg = logs.find(ell);
        const int vdeg = ell - (n - 2);
        HomoPoly log_part = (lg == logs.end() || vdeg < 0) ? HomoPoly::zero(n, std::max(vdeg, 0))
                                                           : HomoPoly(lg->second, vdeg);
        const int denom_exp = res.lambda ? (2 * ell) / (*res.lambda - 2) : 0;
        // p_ell = |x|^E p_reduced with E = 2 ell - denom_exp. Exponents of
        // |x| in p_ell are even, so an odd E (possible for even lambda off
        // the sharp bands) is strengthened to E+1.
        const int strip = (2 * ell - denom_exp + 1) / 2;
        HomoPoly reduced = p;
        for (int s = 0; s < strip; ++s) {
            auto d = divide_by_r2(reduced);
            if (!d)
                throw std::logic_error("build_expansion: p_" + std::to_string(ell) +
                                       " not divisible by |x|^" + std::to_string(2 * strip));
            reduced = *d;
        }
        res.bands.emplace(ell, ExpansionBand{ell, std::move(p), std::move(reduced), denom_exp,
                                             std::move(log_part)});
    }
    return res;
}

LambdaReport compute_lambda(const OperatorSpec& op) {
    if (!op.a0_is_identity())
        throw std::invalid_argument("compute_lambda: A(0) must equal the identity");
    const int n = op.n;
    MultiPoly alpha(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            alpha += op.a_perturbation(i - 1, j - 1) * MultiPoly::variable(n, i) * MultiPoly::variable(n, j);

    LambdaReport rep{alpha, std::nullopt, HomoPoly::zero(n, 0)};
    const int top = alpha.total_degree();
    for (int d = 3; d <= top; ++d) {
        MultiPoly part = alpha.homogeneous_part(d);
        if (part.is_zero()) continue;
        HomoPoly hp(part, d);
        if (!divide_by_r2(hp)) {
            rep.lambda = d;
            rep.witness = project(hp, d, 0);  // nonzero exactly when division fails
            if (rep.witness.is_zero())
                throw std::logic_error("compute_lambda: division and projection disagree");
            break;
        }
    }
    return rep;
}

std::string NeumannWitness::describe() const {
    if (ok()) return "residual exactly zero";
    std::ostringstream os;
    os << "nonzero residual at";
    for (const auto& [idx, el] : residual.entries()) os << " " << idx_str(idx);
    return os.str();
}

NeumannWitness verify_neumann(const OperatorSpec& op, int m) {
    if (m < 1) throw std::invalid_argument("verify_neumann: m must be >= 1");
    if (!op.a0_is_identity())
        throw std::invalid_argument("verify_neumann: A(0) must equal the identity");
    const int n = op.n;

    // S = sum_{ell < m} T^ell delta, v = Delta^{-1} S. Distributionally
    // L v = delta - T^m delta; apply_L computes the pointwise value, which
    // differs exactly by the Dirac mass of Delta psi, so the check is
    // apply_L(v) + T^m delta == 0 with no delta bookkeeping left over.
    HSeries s = t_power_delta(op, 0);
    HSeries cur = s;
    for (int ell = 1; ell < m; ++ell) {
        cur = (ell == 1) ? t_delta(op) : apply_T(op, cur);
        s.add(cur);
        if (cur.empty()) break;
    }
    HSeries v = inv_laplacian_series(s);
    HSeries residual = apply_L(op, v);
    HSeries tail = (m == 1) ? t_delta(op) : (cur.empty() ? HSeries(n) : apply_T(op, cur));
    residual.add(tail);
    return {std::move(residual)};
}

StructureReport structure_check(const ExpansionResult& e) {
    StructureReport rep;
    const int n = e.n;
    auto complain = [&rep](int ell, const std::string& what) {
        rep.violations.push_back("band " + std::to_string(ell) + ": " + what);
    };
    for (const auto& [ell, band] : e.bands) {
        if (!band.p.is_zero() && band.p.degree() != 3 * ell)
            complain(ell, "numerator degree " + std::to_string(band.p.degree()) + " != 3*ell");
        // exact reduced decomposition p = |x|^{2ell - denom_exp} p_reduced
        const int want_exp = e.lambda ? (2 * ell) / (*e.lambda - 2) : 0;
        if (band.denom_exp != want_exp)
            complain(ell, "denominator exponent " + std::to_string(band.denom_exp) + " != floor(2ell/(lambda-2))");
        MultiPoly rebuilt = band.p_reduced.poly().times_r2_pow((2 * ell - band.denom_exp + 1) / 2);
        if (!(rebuilt == band.p.poly())) complain(ell, "p != |x|^{2ell - denom_exp} * p_reduced");
        // sharpness: when lambda < infinity and (lambda-2) | ell, no further
        // simplification is possible
        if (e.lambda && ell >= 1 && ell % (*e.lambda - 2) == 0) {
            if (band.p.is_zero())
                complain(ell, "numerator vanishes on a band whose reduced numerator must be nonzero");
            else if (divide_by_r2(band.p_reduced))
                complain(ell, "p_reduced divisible by |x|^2");
        }
        // parity: harmonic components of p_ell sit at degrees k with
        // 3*ell - k even, i.e. k = ell (mod 2); same for the log part
        if (!band.p.is_zero()) {
            auto comps = harmonic_decompose(band.p);
            for (std::size_t j = 0; j < comps.size(); ++j) {
                const int k = band.p.degree() - 2 * static_cast<int>(j);
                if (!comps[j].is_zero() && (k - ell) % 2 != 0)
                    complain(ell, "odd-parity harmonic component at degree " + std::to_string(k));
            }
        }
        if (n % 2 != 0 && !band.log_part.is_zero()) complain(ell, "log term in odd dimension");
        if (!band.log_part.is_zero()) {
            auto comps = harmonic_decompose(band.log_part);
            for (std::size_t j = 0; j < comps.size(); ++j) {
                const int k = band.log_part.degree() - 2 * static_cast<int>(j);
                if (!comps[j].is_zero() && (k - (ell - (n - 2))) % 2 != 0)
                    complain(ell, "odd-parity log component at degree " + std::to_string(k));
            }
        }
    }
    return rep;
}

DecayReport decay_diagnostic(const OperatorSpec& op, const Rational& r, int ell_max) {
    if (!op.a0_is_identity())
        throw std::invalid_argument("decay_diagnostic: A(0) must equal the identity");
    const OperatorSpec scaled = rescale(op, r);
    DecayReport rep;
    rep.scale = r;
    rep.fitted_ratio = 0.0;
    HSeries cur(op.n);
    for (int ell = 1; ell <= ell_max; ++ell) {
        cur = (ell == 1) ? t_delta(scaled) : apply_T(scaled, cur);
        if (cur.empty()) break;
        for (const auto& [idx, el] : cur.entries()) {
            DecayRow row;
            row.ell = ell;
            row.idx = idx;
            row.norm = std::sqrt(rat_to_double(element_norm_sq(el)));
            const int expo = idx.k + idx.h + op.n;
            if (expo > 0 && row.norm > 0)
                rep.fitted_ratio = std::max(rep.fitted_ratio, std::pow(row.norm, 1.0 / expo));
            rep.rows.push_back(row);
        }
    }
    return rep;
}

}  // namespace fundsol
