#include "fundsol/harmonic.hpp"

#include <climits>
#include <stdexcept>
#include <string>

namespace fundsol {

namespace {

std::string idx_str(const Index& i) {
    return "(" + std::to_string(i.k) + "," + std::to_string(i.h) + ")";
}

}  // namespace

HarmonicElement::HarmonicElement(Index idx, HomoPoly p, HomoPoly q)
    : HarmonicElement(idx, std::move(p), std::move(q), false) {}

HarmonicElement::HarmonicElement(Index idx, HomoPoly p, HomoPoly q, bool is_delta)
    : idx_(idx), p_(std::move(p)), q_(std::move(q)), is_delta_(is_delta) {
    if (p_.n() != q_.n()) throw std::invalid_argument("HarmonicElement: dimension mismatch");
    if (is_delta_) return;
    if (idx_.k < 0) throw std::invalid_argument("HarmonicElement: negative harmonic degree");
    if (p_.degree() != idx_.k || q_.degree() != idx_.k)
        throw std::invalid_argument("HarmonicElement: polynomial degree does not match index " + idx_str(idx_));
    if (!p_.poly().laplacian().is_zero())
        throw std::invalid_argument("HarmonicElement: p is not harmonic at " + idx_str(idx_));
    if (!q_.poly().laplacian().is_zero())
        throw std::invalid_argument("HarmonicElement: q is not harmonic at " + idx_str(idx_));
    if (!q_.is_zero() && !has_log_branch(idx_.h))
        throw std::invalid_argument("HarmonicElement: log part outside the log branch at " + idx_str(idx_));
}

HarmonicElement HarmonicElement::pure(Index idx, HomoPoly p) {
    const int n = p.n();
    const int k = p.degree();
    return HarmonicElement(idx, std::move(p), HomoPoly::zero(n, k));
}

HarmonicElement HarmonicElement::make_delta(int n, const Rational& coefficient) {
    HomoPoly c(MultiPoly::constant(n, coefficient), 0);
    return HarmonicElement(Index{0, -n}, std::move(c), HomoPoly::zero(n, 0), true);
}

Rational HarmonicElement::delta_coefficient() const {
    if (!is_delta_) throw std::logic_error("delta_coefficient on a regular element");
    return p_.poly().coeff(Exponents(n(), 0));
}

HarmonicElement HarmonicElement::operator+(const HarmonicElement& o) const {
    if (!(idx_ == o.idx_)) throw std::invalid_argument("HarmonicElement: index mismatch in addition");
    if (is_delta_ != o.is_delta_)
        throw std::invalid_argument("HarmonicElement: cannot mix delta and function components at " + idx_str(idx_));
    return HarmonicElement(idx_, p_ + o.p_, q_ + o.q_, is_delta_);
}

HarmonicElement HarmonicElement::operator*(const Rational& c) const {
    return HarmonicElement(idx_, p_ * c, q_ * c, is_delta_);
}

std::vector<HomoPoly> harmonic_decompose(const HomoPoly& p) {
    const int n = p.n();
    const int l = p.degree();
    std::vector<HomoPoly> out;
    if (l <= 1) {
        out.push_back(p);
        return out;
    }
    // Invert Delta(|x|^{2j} h_j) = 2j(2l-2j+n-2)|x|^{2j-2} h_j against the
    // decomposition of Delta p, then recover h_0 by subtraction.
    HomoPoly lap(p.poly().laplacian(), l - 2);
    std::vector<HomoPoly> sub = harmonic_decompose(lap);
    out.resize(l / 2 + 1, HomoPoly::zero(n, 0));
    MultiPoly acc(n);
    for (std::size_t j = 1; j < out.size(); ++j) {
        const long factor = 2L * j * (2L * l - 2L * j + n - 2);
        out[j] = sub[j - 1] / rat(factor);
        acc += out[j].poly().times_r2_pow(static_cast<int>(j));
    }
    out[0] = HomoPoly(p.poly() - acc, l);
    return out;
}

HomoPoly project(const HomoPoly& p, int i, int j) {
    if (j < 0 || j % 2 != 0) throw std::invalid_argument("project: radial weight must be even and nonnegative");
    if (i < 0 || i + j != p.degree())
        throw std::invalid_argument("project: index (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") incompatible with degree " + std::to_string(p.degree()));
    return harmonic_decompose(p)[j / 2];
}

Rational element_norm_sq(const HarmonicElement& f) {
    if (f.is_delta()) throw std::invalid_argument("element_norm_sq: delta has no L^2 norm");
    return sphere_inner(f.p(), f.p()) + sphere_inner(f.q(), f.q());
}

HSeries::HSeries(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("HSeries: dimension must be >= 2");
}

HSeries HSeries::single(const HarmonicElement& f) {
    HSeries s(f.n());
    s.add(f);
    return s;
}

const HarmonicElement* HSeries::find(const Index& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? nullptr : &it->second;
}

void HSeries::add(const HarmonicElement& f) {
    if (f.n() != n_) throw std::invalid_argument("HSeries: dimension mismatch");
    if (f.is_zero()) return;
    const Index idx = f.idx();
    if (!in_omega(idx, n_) && !on_critical_boundary(idx, n_))
        throw std::invalid_argument("HSeries: index " + idx_str(idx) + " below the critical boundary");
    auto it = entries_.find(idx);
    if (it == entries_.end()) {
        entries_.emplace(idx, f);
        return;
    }
    HarmonicElement sum = it->second + f;
    if (sum.is_zero())
        entries_.erase(it);
    else
        it->second = sum;
}

void HSeries::add(const HSeries& o) {
    if (o.n_ != n_) throw std::invalid_argument("HSeries: dimension mismatch");
    for (const auto& [idx, f] : o.entries_) add(f);
}

bool HSeries::contains_delta() const {
    for (const auto& [idx, f] : entries_)
        if (f.is_delta()) return true;
    return false;
}

int HSeries::min_total_homogeneity() const {
    if (entries_.empty()) return INT_MAX;
    return entries_.begin()->first.total();  // map ordered by (k+h, k)
}

HSeries series_add(const HSeries& a, const HSeries& b) {
    HSeries r = a;
    r.add(b);
    return r;
}

HSeries series_scale(const HSeries& a, const Rational& c) {
    HSeries r(a.n());
    if (c == 0) return r;
    for (const auto& [idx, f] : a.entries()) r.add(f * c);
    return r;
}

}  // namespace fundsol
