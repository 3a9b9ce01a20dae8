#ifndef FUNDSOL_MULTIPOLY_HPP
#define FUNDSOL_MULTIPOLY_HPP

#include <map>
#include <optional>
#include <vector>

#include "fundsol/rational.hpp"

namespace fundsol {

// Exponent vector of a monomial; always length n.
using Exponents = std::vector<unsigned>;

inline int exponents_degree(const Exponents& e) {
    int d = 0;
    for (unsigned x : e) d += static_cast<int>(x);
    return d;
}

// Sparse multivariate polynomial in n >= 2 variables over Rational.
// Invariants: no stored zero coefficients, every exponent vector has
// length n. Terms are kept in lexicographic exponent order, which is the
// canonical order used by the serialization layer.
class MultiPoly {
public:
    explicit MultiPoly(int n);

    static MultiPoly constant(int n, const Rational& c);
    static MultiPoly variable(int n, int axis);  // 1-based axis
    static MultiPoly monomial(int n, const Exponents& e, const Rational& c);
    static MultiPoly r2(int n);  // |x|^2

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    Rational coeff(const Exponents& e) const;
    void add_term(const Exponents& e, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rational& c) const;
    MultiPoly operator/(const Rational& c) const;
    bool operator==(const MultiPoly& o) const = default;

    MultiPoly partial(int axis) const;  // exact d/dx_axis, 1-based
    MultiPoly laplacian() const;

    // -1 for the zero polynomial.
    int total_degree() const;
    int min_total_degree() const;
    bool is_homogeneous() const;
    MultiPoly homogeneous_part(int d) const;

    MultiPoly times_r2_pow(int j) const;
    MultiPoly pow(unsigned e) const;

    // p(Mx) for a rational n x n matrix M.
    MultiPoly compose_linear(const std::vector<std::vector<Rational>>& m) const;
    // p(rx)
    MultiPoly scale_vars(const Rational& r) const;

    Rational eval(const std::vector<Rational>& x) const;
    double eval_double(const std::vector<double>& x) const;

    std::string to_string() const;  // human-readable, canonical term order

private:
    int n_;
    std::map<Exponents, Rational> terms_;
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

// Homogeneous polynomial: a MultiPoly whose terms all have total degree
// exactly `degree`. The degree is carried explicitly so the zero
// polynomial keeps its grading.
class HomoPoly {
public:
    HomoPoly(MultiPoly p, int degree);
    static HomoPoly zero(int n, int degree);
    static HomoPoly constant(int n, const Rational& c) { return HomoPoly(MultiPoly::constant(n, c), 0); }

    const MultiPoly& poly() const { return poly_; }
    int degree() const { return degree_; }
    int n() const { return poly_.n(); }
    bool is_zero() const { return poly_.is_zero(); }

    HomoPoly operator+(const HomoPoly& o) const;
    HomoPoly operator-(const HomoPoly& o) const;
    HomoPoly operator*(const Rational& c) const { return HomoPoly(poly_ * c, degree_); }
    HomoPoly operator/(const Rational& c) const { return HomoPoly(poly_ / c, degree_); }
    bool operator==(const HomoPoly& o) const { return degree_ == o.degree_ && poly_ == o.poly_; }

private:
    MultiPoly poly_;
    int degree_;
};

// Surface moment (1/omega_{n-1}) * int_{S^{n-1}} x^e, exact:
// zero if any exponent is odd, otherwise
// prod_i (e_i - 1)!! / (n (n+2) ... (n + |e| - 2)).
Rational sphere_moment(int n, const Exponents& e);

// (1/omega_{n-1}) * int_{S^{n-1}} p q. Bilinear, symmetric, exact.
Rational sphere_inner(const HomoPoly& p, const HomoPoly& q);

// Exact division: returns q with p == |x|^2 q when it exists.
std::optional<MultiPoly> divide_by_r2(const MultiPoly& p);
std::optional<HomoPoly> divide_by_r2(const HomoPoly& p);

}  // namespace fundsol

#endif
