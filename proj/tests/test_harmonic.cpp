#include <doctest.h>

#include "fundsol/harmonic.hpp"
#include "oracles.hpp"

using namespace fundsol;

namespace {

MultiPoly x(int n, int axis) { return MultiPoly::variable(n, axis); }

}  // namespace

TEST_CASE("decomposition of simple inputs") {
    // n=3: |x|^2 = 0 + |x|^2 * 1
    auto d = harmonic_decompose(HomoPoly(MultiPoly::r2(3), 2));
    REQUIRE(d.size() == 2);
    CHECK(d[0].is_zero());
    CHECK(d[1].poly() == MultiPoly::constant(3, rat(1)));

    // n=2: x1^2 = (x1^2-x2^2)/2 + |x|^2 * 1/2
    auto d2 = harmonic_decompose(HomoPoly(x(2, 1).pow(2), 2));
    REQUIRE(d2.size() == 2);
    CHECK(d2[0].poly() == (x(2, 1).pow(2) - x(2, 2).pow(2)) / rat(2));
    CHECK(d2[1].poly() == MultiPoly::constant(2, rat(1, 2)));

    // already harmonic
    auto d3 = harmonic_decompose(HomoPoly(x(4, 1) * x(4, 2), 2));
    CHECK(d3[0].poly() == x(4, 1) * x(4, 2));
    CHECK(d3[1].is_zero());
}

TEST_CASE("reconstruction, harmonicity, orthogonality, Pythagoras") {
    oracles::Rng rng(101);
    for (int n = 2; n <= 4; ++n) {
        for (int deg = 0; deg <= 12; deg += 3) {
            HomoPoly p = oracles::random_homo(n, deg, rng);
            auto parts = harmonic_decompose(p);
            REQUIRE(static_cast<int>(parts.size()) == deg / 2 + 1);
            MultiPoly sum(n);
            for (std::size_t j = 0; j < parts.size(); ++j) {
                CHECK(parts[j].poly().laplacian().is_zero());
                sum += parts[j].poly().times_r2_pow(static_cast<int>(j));
            }
            CHECK(sum == p.poly());
            // orthogonality of distinct-degree harmonics on the sphere
            for (std::size_t i = 0; i < parts.size(); ++i)
                for (std::size_t j = i + 1; j < parts.size(); ++j)
                    CHECK(sphere_inner(parts[i], parts[j]) == 0);
            // Pythagoras: |p|^2 = sum_j |h_j|^2 on the sphere
            Rational total(0);
            for (const auto& h : parts) total += sphere_inner(h, h);
            CHECK(total == sphere_inner(p, p));
        }
    }
}

TEST_CASE("decomposition agrees with the Gaussian-elimination oracle") {
    oracles::Rng rng(7);
    for (int n = 2; n <= 3; ++n) {
        for (int deg : {2, 3, 5, 6, 8}) {
            HomoPoly p = oracles::random_homo(n, deg, rng);
            auto fast = harmonic_decompose(p);
            auto slow = oracles::gauss_decompose(p);
            REQUIRE(fast.size() == slow.size());
            for (std::size_t j = 0; j < fast.size(); ++j) CHECK(fast[j] == slow[j]);
        }
    }
}

TEST_CASE("projections") {
    // Pi_{2,0}(x1^2) in n=2
    CHECK(project(HomoPoly(x(2, 1).pow(2), 2), 2, 0).poly() ==
          (x(2, 1).pow(2) - x(2, 2).pow(2)) / rat(2));
    // Pi_{0,2}(|x|^2) = 1
    CHECK(project(HomoPoly(MultiPoly::r2(3), 2), 0, 2).poly() == MultiPoly::constant(3, rat(1)));
    // Pi_{3,0}(|x|^2 x1) = 0 in n=2 (input entirely in H^{1,2})
    CHECK(project(HomoPoly(x(2, 1).times_r2_pow(1), 3), 3, 0).is_zero());
    // parity mismatch rejected
    CHECK_THROWS_AS(project(HomoPoly(x(2, 1).pow(2), 2), 1, 1), std::invalid_argument);

    // idempotence: extracting a component and re-projecting returns it
    oracles::Rng rng(5);
    HomoPoly p = oracles::random_homo(3, 6, rng);
    HomoPoly h = project(p, 2, 4);
    CHECK(project(HomoPoly(h.poly().times_r2_pow(2), 6), 2, 4) == h);
}

TEST_CASE("harmonic element validation") {
    // x1^2 is not harmonic
    CHECK_THROWS_AS(HarmonicElement::pure(Index{2, 0}, HomoPoly(x(2, 1).pow(2), 2)),
                    std::invalid_argument);
    // log part outside the log branch
    CHECK_THROWS_AS(HarmonicElement(Index{0, -1}, HomoPoly::constant(3, rat(0)) * rat(0),
                                    HomoPoly::constant(3, rat(1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(HarmonicElement(Index{1, 1}, HomoPoly(x(2, 1), 1), HomoPoly(x(2, 2), 1)),
                    std::invalid_argument);
    // degree mismatch
    CHECK_THROWS_AS(HarmonicElement::pure(Index{2, 0}, HomoPoly(x(2, 1), 1)), std::invalid_argument);
    // valid log element at h = 0
    HarmonicElement ok(Index{1, 0}, HomoPoly(x(2, 1), 1), HomoPoly(x(2, 2), 1));
    CHECK_FALSE(ok.is_zero());
}

TEST_CASE("element norms") {
    // f = |x|^h with p = 1: norm 1
    HarmonicElement f1 = HarmonicElement::pure(Index{0, -3}, HomoPoly::constant(3, rat(1)));
    CHECK(element_norm_sq(f1) == rat(1));
    // f = x1 |x|^{-1} in n=3: 1/3
    HarmonicElement f2 = HarmonicElement::pure(Index{1, -1}, HomoPoly(x(3, 1), 1));
    CHECK(element_norm_sq(f2) == rat(1, 3));
    // f = |x|^2 + |x|^2 log|x|: 2
    HarmonicElement f3(Index{0, 2}, HomoPoly::constant(3, rat(1)), HomoPoly::constant(3, rat(1)));
    CHECK(element_norm_sq(f3) == rat(2));
}

TEST_CASE("series arithmetic") {
    const int n = 3;
    HarmonicElement a = HarmonicElement::pure(Index{1, 0}, HomoPoly(x(n, 1), 1));
    HarmonicElement b = HarmonicElement::pure(Index{2, -1}, HomoPoly(x(n, 1) * x(n, 2), 2));

    // a + (-1) a = empty
    HSeries s = HSeries::single(a);
    CHECK(series_add(s, series_scale(s, rat(-1))).empty());

    // disjoint supports: union
    HSeries t = series_add(HSeries::single(a), HSeries::single(b));
    CHECK(t.size() == 2);
    REQUIRE(t.find(Index{1, 0}) != nullptr);
    REQUIRE(t.find(Index{2, -1}) != nullptr);
    CHECK(t.find(Index{0, 0}) == nullptr);

    // overlapping index: p-parts add
    HarmonicElement a2 = HarmonicElement::pure(Index{1, 0}, HomoPoly(x(n, 2) * rat(2), 1));
    HSeries u = series_add(HSeries::single(a), HSeries::single(a2));
    CHECK(u.size() == 1);
    CHECK(u.find(Index{1, 0})->p().poly() == x(n, 1) + x(n, 2) * rat(2));

    // ordering of entries is by (k+h, k): both have total 1, k breaks the tie
    CHECK(t.entries().begin()->first == Index{1, 0});
    CHECK(t.min_total_homogeneity() == 1);

    // indices below the boundary rejected
    CHECK_THROWS_AS(HSeries::single(HarmonicElement::pure(Index{0, -n - 1}, HomoPoly::constant(n, rat(1)))),
                    std::invalid_argument);
}

TEST_CASE("delta bookkeeping") {
    HarmonicElement d = HarmonicElement::make_delta(3, rat(2));
    CHECK(d.is_delta());
    CHECK(d.delta_coefficient() == rat(2));
    CHECK(d.idx() == Index{0, -3});

    HSeries s = HSeries::single(d);
    CHECK(s.contains_delta());
    // delta coefficients add; cancelled delta leaves the series empty
    HSeries z = series_add(s, series_scale(s, rat(-1)));
    CHECK(z.empty());
    CHECK_THROWS_AS(element_norm_sq(d), std::invalid_argument);
}
