#ifndef FUNDSOL_HARMONIC_HPP
#define FUNDSOL_HARMONIC_HPP

#include <map>
#include <vector>

#include "fundsol/multipoly.hpp"

namespace fundsol {

// Index of the weighted harmonic space H^{k,h}: harmonic degree k,
// radial exponent h. Ordered by (k+h, k), the canonical series order.
struct Index {
    int k;
    int h;

    int total() const { return k + h; }
    friend bool operator==(const Index&, const Index&) = default;
    friend bool operator<(const Index& a, const Index& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.k < b.k;
    }
};

// Omega = {k >= 0, k+h > -n}: indices of locally integrable spaces.
inline bool in_omega(const Index& idx, int n) { return idx.k >= 0 && idx.k + idx.h > -n; }

// k+h == -n: the boundary line carrying delta (at (0,-n)) and the
// transient function components produced while differentiating psi.
inline bool on_critical_boundary(const Index& idx, int n) { return idx.k >= 0 && idx.k + idx.h == -n; }

// True when H^{k,h} carries a log branch (h a nonnegative even integer).
inline bool has_log_branch(int h) { return h >= 0 && h % 2 == 0; }

// One element of H^{k,h}: f = p|x|^h + q|x|^h log|x| with p, q harmonic of
// degree k. The distinguished Dirac delta is stored with `is_delta` set;
// its coefficient rides in the (degree-0) p slot and it is never mixed
// into pointwise evaluation.
class HarmonicElement {
public:
    HarmonicElement(Index idx, HomoPoly p, HomoPoly q);
    static HarmonicElement pure(Index idx, HomoPoly p);
    static HarmonicElement make_delta(int n, const Rational& coefficient = Rational(1));

    const Index& idx() const { return idx_; }
    const HomoPoly& p() const { return p_; }
    const HomoPoly& q() const { return q_; }
    int n() const { return p_.n(); }
    bool is_delta() const { return is_delta_; }
    Rational delta_coefficient() const;

    bool is_zero() const { return p_.is_zero() && q_.is_zero(); }

    HarmonicElement operator+(const HarmonicElement& o) const;  // same index
    HarmonicElement operator*(const Rational& c) const;

private:
    HarmonicElement(Index idx, HomoPoly p, HomoPoly q, bool is_delta);

    Index idx_;
    HomoPoly p_;
    HomoPoly q_;
    bool is_delta_;
};

// Gauss decomposition p = sum_j |x|^{2j} h_j with h_j harmonic of degree
// deg(p) - 2j. Returns (h_0, ..., h_{floor(deg/2)}); unique.
std::vector<HomoPoly> harmonic_decompose(const HomoPoly& p);

// Orthogonal projection Pi_{i,j}: V_{i+j} -> H^{i,j}; returns the harmonic
// factor h such that |x|^j h is the H^{i,j}-component of p. j must be even.
HomoPoly project(const HomoPoly& p, int i, int j);

// ||f||^2 = (1/omega_{n-1}) int_{dB_1} (p^2 + q^2).
Rational element_norm_sq(const HarmonicElement& f);

// Finite-support element of H^{.,.}: map Index -> HarmonicElement.
// Stored entries are nonzero and lie in Omega or on the critical boundary.
class HSeries {
public:
    explicit HSeries(int n);
    static HSeries single(const HarmonicElement& f);

    int n() const { return n_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<Index, HarmonicElement>& entries() const { return entries_; }

    // nullptr when the index is absent (projection pi_{k,h}).
    const HarmonicElement* find(const Index& idx) const;

    void add(const HarmonicElement& f);
    void add(const HSeries& o);
    bool contains_delta() const;

    // min over the support of k+h; INT_MAX for the empty series.
    int min_total_homogeneity() const;

private:
    int n_;
    std::map<Index, HarmonicElement> entries_;
};

HSeries series_add(const HSeries& a, const HSeries& b);
HSeries series_scale(const HSeries& a, const Rational& c);

}  // namespace fundsol

#endif
