#include "fundsol/multipoly.hpp"

#include <sstream>
#include <stdexcept>

namespace fundsol {

MultiPoly::MultiPoly(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("MultiPoly: dimension must be >= 2");
}

MultiPoly MultiPoly::constant(int n, const Rational& c) {
    MultiPoly p(n);
    p.add_term(Exponents(n, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int n, int axis) {
    if (axis < 1 || axis > n) throw std::invalid_argument("MultiPoly::variable: axis out of range");
    Exponents e(n, 0);
    e[axis - 1] = 1;
    return monomial(n, e, rat(1));
}

MultiPoly MultiPoly::monomial(int n, const Exponents& e, const Rational& c) {
    MultiPoly p(n);
    p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::r2(int n) {
    MultiPoly p(n);
    for (int i = 1; i <= n; ++i) {
        Exponents e(n, 0);
        e[i - 1] = 2;
        p.add_term(e, rat(1));
    }
    return p;
}

Rational MultiPoly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != n_)
        throw std::invalid_argument("MultiPoly::add_term: exponent vector has wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (n_ != o.n_) throw std::invalid_argument("MultiPoly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (n_ != o.n_) throw std::invalid_argument("MultiPoly: dimension mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    r += o;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    r -= o;
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("MultiPoly: dimension mismatch");
    MultiPoly r(n_);
    Exponents e(n_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    MultiPoly r(n_);
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

MultiPoly MultiPoly::operator/(const Rational& c) const {
    if (c == 0) throw std::invalid_argument("MultiPoly: division by zero");
    return *this * (Rational(1) / c);
}

MultiPoly MultiPoly::partial(int axis) const {
    if (axis < 1 || axis > n_) throw std::invalid_argument("MultiPoly::partial: axis out of range");
    MultiPoly r(n_);
    const int a = axis - 1;
    for (const auto& [e, c] : terms_) {
        if (e[a] == 0) continue;
        Exponents d = e;
        d[a] -= 1;
        r.add_term(d, c * rat(static_cast<long>(e[a])));
    }
    return r;
}

MultiPoly MultiPoly::laplacian() const {
    MultiPoly r(n_);
    for (const auto& [e, c] : terms_) {
        for (int a = 0; a < n_; ++a) {
            if (e[a] < 2) continue;
            Exponents d = e;
            d[a] -= 2;
            r.add_term(d, c * rat(static_cast<long>(e[a]) * (static_cast<long>(e[a]) - 1)));
        }
    }
    return r;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exponents_degree(e));
    return d;
}

int MultiPoly::min_total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int t = exponents_degree(e);
        if (d < 0 || t < d) d = t;
    }
    return d;
}

bool MultiPoly::is_homogeneous() const {
    return terms_.empty() || total_degree() == min_total_degree();
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
    MultiPoly r(n_);
    for (const auto& [e, c] : terms_)
        if (exponents_degree(e) == d) r.terms_.emplace(e, c);
    return r;
}

MultiPoly MultiPoly::times_r2_pow(int j) const {
    if (j < 0) throw std::invalid_argument("times_r2_pow: negative power");
    MultiPoly r = *this;
    const MultiPoly s = r2(n_);
    for (int i = 0; i < j; ++i) r = r * s;
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly r = constant(n_, rat(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

MultiPoly MultiPoly::compose_linear(const std::vector<std::vector<Rational>>& m) const {
    if (static_cast<int>(m.size()) != n_)
        throw std::invalid_argument("compose_linear: matrix has wrong size");
    std::vector<MultiPoly> images;
    images.reserve(n_);
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(m[i].size()) != n_)
            throw std::invalid_argument("compose_linear: matrix has wrong size");
        MultiPoly img(n_);
        for (int j = 0; j < n_; ++j)
            if (m[i][j] != 0) img += MultiPoly::variable(n_, j + 1) * m[i][j];
        images.push_back(img);
    }
    MultiPoly r(n_);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = constant(n_, c);
        for (int i = 0; i < n_; ++i)
            for (unsigned rep = 0; rep < e[i]; ++rep) t = t * images[i];
        r += t;
    }
    return r;
}

MultiPoly MultiPoly::scale_vars(const Rational& r) const {
    MultiPoly out(n_);
    for (const auto& [e, c] : terms_) {
        Rational f = c;
        int d = exponents_degree(e);
        for (int i = 0; i < d; ++i) f *= r;
        out.add_term(e, f);
    }
    return out;
}

Rational MultiPoly::eval(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("eval: point has wrong dimension");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < n_; ++i)
            for (unsigned rep = 0; rep < e[i]; ++rep) t *= x[i];
        acc += t;
    }
    return acc;
}

double MultiPoly::eval_double(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("eval: point has wrong dimension");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = rat_to_double(c);
        for (int i = 0; i < n_; ++i)
            for (unsigned rep = 0; rep < e[i]; ++rep) t *= x[i];
        acc += t;
    }
    return acc;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c);
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            os << "*x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

HomoPoly::HomoPoly(MultiPoly p, int degree) : poly_(std::move(p)), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("HomoPoly: negative degree");
    for (const auto& [e, c] : poly_.terms())
        if (exponents_degree(e) != degree)
            throw std::invalid_argument("HomoPoly: term of degree " +
                                        std::to_string(exponents_degree(e)) + " in degree-" +
                                        std::to_string(degree) + " polynomial");
}

HomoPoly HomoPoly::zero(int n, int degree) { return HomoPoly(MultiPoly(n), degree); }

HomoPoly HomoPoly::operator+(const HomoPoly& o) const {
    if (degree_ != o.degree_) throw std::invalid_argument("HomoPoly: degree mismatch in addition");
    return HomoPoly(poly_ + o.poly_, degree_);
}

HomoPoly HomoPoly::operator-(const HomoPoly& o) const {
    if (degree_ != o.degree_) throw std::invalid_argument("HomoPoly: degree mismatch in subtraction");
    return HomoPoly(poly_ - o.poly_, degree_);
}

namespace {

Integer double_factorial(long m) {
    // (-1)!! = 1 by convention.
    Integer r(1);
    for (long v = m; v > 1; v -= 2) r *= v;
    return r;
}

}  // namespace

Rational sphere_moment(int n, const Exponents& e) {
    long total = 0;
    for (unsigned x : e) {
        if (x % 2 == 1) return Rational(0);
        total += x;
    }
    Integer num(1);
    for (unsigned x : e) num *= double_factorial(static_cast<long>(x) - 1);
    Integer den(1);
    for (long j = 0; j < total / 2; ++j) den *= (n + 2 * j);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational sphere_inner(const HomoPoly& p, const HomoPoly& q) {
    if (p.n() != q.n()) throw std::invalid_argument("sphere_inner: dimension mismatch");
    const int n = p.n();
    Rational acc(0);
    Exponents e(n);
    for (const auto& [ea, ca] : p.poly().terms()) {
        for (const auto& [eb, cb] : q.poly().terms()) {
            for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            acc += ca * cb * sphere_moment(n, e);
        }
    }
    return acc;
}

std::optional<MultiPoly> divide_by_r2(const MultiPoly& p) {
    // Division with remainder by |x|^2 in lex order; a single divisor is a
    // Groebner basis of its ideal, so remainder == 0 decides divisibility.
    const int n = p.n();
    MultiPoly work = p;
    MultiPoly quotient(n);
    const MultiPoly s = MultiPoly::r2(n);
    while (!work.is_zero()) {
        // leading term in lex order = last entry of the ordered map
        auto it = std::prev(work.terms().end());
        const Exponents e = it->first;
        const Rational c = it->second;
        if (e[0] < 2) return std::nullopt;  // remainder would be nonzero
        Exponents q = e;
        q[0] -= 2;
        quotient.add_term(q, c);
        work -= MultiPoly::monomial(n, q, c) * s;
    }
    return quotient;
}

std::optional<HomoPoly> divide_by_r2(const HomoPoly& p) {
    if (p.is_zero()) {
        if (p.degree() < 2) return std::nullopt;
        return HomoPoly::zero(p.n(), p.degree() - 2);
    }
    auto q = divide_by_r2(p.poly());
    if (!q) return std::nullopt;
    return HomoPoly(*q, p.degree() - 2);
}

}  // namespace fundsol
