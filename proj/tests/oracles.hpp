#ifndef FUNDSOL_TESTS_ORACLES_HPP
#define FUNDSOL_TESTS_ORACLES_HPP

#include <random>
#include <utility>
#include <vector>

#include "fundsol/harmonic.hpp"

// Test-only oracles, independent of the H^{k,h} operator calculus: a naive
// closed-form engine for functions N(x)|x|^{-m} + L(x)|x|^{-m} log|x|, a
// Gaussian-elimination route to the harmonic decomposition, Monte-Carlo
// sphere quadrature, and deterministic random generators.
namespace fundsol::oracles {

// N(x) |x|^{-inv_pow} + L(x) |x|^{-inv_pow} log|x| with plain (not
// necessarily homogeneous) polynomials N, L. Derivatives are taken by the
// product rule alone -- no harmonic splitting anywhere.
struct RadialForm {
    MultiPoly num;
    MultiPoly log_num;
    int inv_pow;

    explicit RadialForm(int n) : num(n), log_num(n), inv_pow(0) {}
    RadialForm(MultiPoly n_, MultiPoly l_, int m) : num(std::move(n_)), log_num(std::move(l_)), inv_pow(m) {}

    int n() const { return num.n(); }
    bool is_zero() const { return num.is_zero() && log_num.is_zero(); }
};

RadialForm to_radial(const HarmonicElement& f);
RadialForm to_radial(const HSeries& s);

RadialForm radial_partial(const RadialForm& f, int axis);
RadialForm radial_laplacian(const RadialForm& f);
RadialForm radial_mul(const MultiPoly& a, const RadialForm& f);
RadialForm radial_add(const RadialForm& a, const RadialForm& b);
RadialForm radial_scale(const RadialForm& a, const Rational& c);
bool radial_equal(const RadialForm& a, const RadialForm& b);

// value at a rational point whose |x| is the rational `radius`
// (radius^2 == sum x_i^2 required): returns (A, B) with value A + B log|x|.
std::pair<Rational, Rational> radial_eval(const RadialForm& f, const std::vector<Rational>& x,
                                          const Rational& radius);
std::pair<Rational, Rational> eval_closed_form(const HSeries& s, const std::vector<Rational>& x,
                                               const Rational& radius);

// Rational points with rational Euclidean norm, away from the origin.
std::vector<std::pair<std::vector<Rational>, Rational>> pythagorean_points(int n);

// Independent harmonic decomposition: solve sum_j |x|^{2j} h_j = p with
// Delta h_j = 0 by exact Gaussian elimination over the monomial basis.
std::vector<HomoPoly> gauss_decompose(const HomoPoly& p);

// Monte-Carlo estimate of (1/omega_{n-1}) int_{S^{n-1}} p q.
double mc_sphere_inner(const HomoPoly& p, const HomoPoly& q, int samples, unsigned seed);

using Rng = std::mt19937;

Rational random_coeff(Rng& rng);
HomoPoly random_homo(int n, int degree, Rng& rng, int terms = 6);
HomoPoly random_harmonic(int n, int degree, Rng& rng);

}  // namespace fundsol::oracles

#endif
