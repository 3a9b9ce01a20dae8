#include <doctest.h>

#include "fundsol/expansion.hpp"
#include "fundsol/graph_bounds.hpp"
#include "fundsol/io.hpp"

using namespace fundsol;

namespace {

OperatorSpec fixture(const std::string& name) {
    return load_operator_file(std::string(FUNDSOL_FIXTURE_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("g1 weights") {
    // (5,-3) -> (3,-1): <max{5,3}>/<-3> = 6/4 = 3/2
    CHECK(g1_weight({5, -3}, {3, -1}) == rat(3, 2));
    // self loop
    CHECK(g1_weight({4, 7}, {4, 7}) == rat(1));
    CHECK(g1_weight({0, -9}, {0, -9}) == rat(1));
    // red edge needs k >= 2
    CHECK(g1_weight({1, 0}, {-1, 2}) == 0);
    // blue edge
    CHECK(g1_weight({0, 4}, {2, 2}) == rat(5, 5));
    CHECK(g1_weight({3, -1}, {5, -3}) == rat(2, 4));
    // anything else is absent
    CHECK(g1_weight({3, 3}, {4, 3}) == 0);
}

TEST_CASE("g2 weights") {
    CHECK(g2_weight({0, -3}, {1, -3}) == rat(1));   // a=1, b=0
    CHECK(g2_weight({2, 0}, {1, 2}) == rat(1));     // a=0, b=1
    CHECK(g2_weight({0, 0}, {0, 1}) == 0);          // odd vertical step
    CHECK(g2_weight({0, 0}, {0, 0}) == 0);          // no self edge
    CHECK(g2_weight({0, 0}, {-1, 2}) == 0);         // target k < 0
    CHECK(g2_weight({3, 1}, {1, 5}) == rat(1));     // a=0, b=2
    CHECK(g2_weight({3, 1}, {2, 1}) == 0);          // a = -1 impossible
}

TEST_CASE("sigma membership") {
    CHECK(sigma_member(1, {1, 0}));
    CHECK_FALSE(sigma_member(1, {0, 1}));  // odd y
    // (3,-2) has x+y = 1, so it enters no Sigma_ell with ell >= 2
    CHECK(sigma_member(1, {3, -2}));
    CHECK_FALSE(sigma_member(2, {3, -2}));
    CHECK_FALSE(sigma_member(3, {3, -2}));
    CHECK(sigma_member(2, {4, -2}));
    CHECK(sigma_member(1, {1, 2}));
    CHECK_FALSE(sigma_member(1, {0, -2}));  // 2x+3y = -6 < 0
    CHECK_THROWS_AS(sigma_member(0, {0, 0}), std::invalid_argument);
    // Sigma_ell = Sigma_1 + ... + Sigma_1: spot-check closure under sums
    CHECK(sigma_member(2, {2, 0}));
    CHECK(sigma_member(3, {3, 0}));
}

TEST_CASE("product entries") {
    const Box box{25};
    // (G1 G2)((0,-n),(1,-n)), n = 3: two paths, self-loop + a=1 and
    // blue (0,-3)->(2,-5) (weight <−3>/<3> = 1) + b=1; brute-force total 2
    const WeightedGraph g1 = graph_g1();
    const WeightedGraph g2 = graph_g2();
    Rational brute(0);
    for (const Vertex& r : g1.out({0, -3}, box)) brute += g1.weight({0, -3}, r) * g2.weight(r, {1, -3});
    CHECK(brute == rat(2));
    CHECK(g1g2_power_entry(1, {0, -3}, {1, -3}, box) == brute);

    // zero whenever q - p is outside Sigma_1
    const Vertex p{0, -3};
    for (const Vertex q : {Vertex{0, -5}, Vertex{5, -9}, Vertex{1, -2}, Vertex{0, -3}}) {
        const Vertex d{q.k - p.k, q.h - p.h};
        if (!sigma_member(1, d)) CHECK(g1g2_power_entry(1, p, q, box) == 0);
    }
    // full support of (G1 G2) from a source lies in Sigma_1
    auto row = g1g2_power_row(1, p, Box{15});
    for (const auto& [q, w] : row) {
        if (w == 0) continue;
        CHECK(sigma_member(1, {q.k - p.k, q.h - p.h}));
    }

    // product_entry agrees with the alternating power for a composite list
    std::vector<WeightedGraph> factors{graph_g1(), graph_g2(), graph_g1(), graph_g2()};
    const Vertex q{2, -3};
    CHECK(product_entry(factors, p, q, box) == g1g2_power_entry(2, p, q, box));
}

TEST_CASE("(G1 G2)^2 entry: DP vs explicit path enumeration") {
    // cross-oracle: enumerate all G1,G2,G1,G2 4-step paths explicitly
    const Box box{20};
    const Vertex p{0, -2};
    const Vertex q{2, -2};
    const WeightedGraph g1 = graph_g1();
    const WeightedGraph g2 = graph_g2();

    Rational total(0);
    for (const Vertex& r1 : g1.out(p, box)) {
        const Rational w1 = g1.weight(p, r1);
        for (const Vertex& r2 : g2.out(r1, box)) {
            const Rational w2 = g2.weight(r1, r2);
            if (w2 == 0) continue;
            for (const Vertex& r3 : g1.out(r2, box)) {
                const Rational w3 = g1.weight(r2, r3);
                for (const Vertex& r4 : g2.out(r3, box)) {
                    if (!(r4 == q)) continue;
                    total += w1 * w2 * w3 * g2.weight(r3, r4);
                }
            }
        }
    }
    CHECK(total == g1g2_power_entry(2, p, q, box));
    CHECK(total > 0);
}

TEST_CASE("power support vanishes off Sigma_ell") {
    // (G1 G2)^ell((0,-n), q) = 0 whenever q - (0,-n) is outside Sigma_ell;
    // radius-20 box, ell <= 4
    const Box box{20};
    for (int n : {2, 3}) {
        const Vertex source{0, -n};
        for (int ell = 1; ell <= 4; ++ell) {
            auto row = g1g2_power_row(ell, source, box);
            for (const auto& [q, w] : row) {
                if (w == 0) continue;
                CHECK(sigma_member(ell, Vertex{q.k - source.k, q.h - source.h}));
            }
            // and the support is nonempty well inside the cone
            CHECK(row.count(Vertex{ell, -n}) == 1);
        }
    }
}

TEST_CASE("semigroup consistency of powers") {
    const Box box{30};
    const Vertex p{0, -2};
    for (const Vertex q : {Vertex{3, -1}, Vertex{2, 0}, Vertex{4, -4}}) {
        // (G1G2)^{1+2}(p,q) = sum_r (G1G2)^1(p,r) (G1G2)^2(r,q)
        Rational conv(0);
        auto row1 = g1g2_power_row(1, p, box);
        for (const auto& [r, w] : row1) {
            if (w == 0) continue;
            conv += w * g1g2_power_entry(2, r, q, box);
        }
        CHECK(conv == g1g2_power_entry(3, p, q, box));
    }
}

TEST_CASE("path enumeration") {
    const WeightedGraph sum = graph_sum(graph_g1(), graph_g2());
    // p = q, ell = 1: exactly the self-loop, weight 1
    auto loops = enumerate_paths(sum, {2, 1}, {2, 1}, 1, Box{12});
    REQUIRE(loops.size() == 1);
    CHECK(loops[0].weight == rat(1));
    CHECK(loops[0].vertices.size() == 2);

    // empty when q - p violates the cone (sum must not decrease)
    CHECK(enumerate_paths(sum, {2, 1}, {1, 0}, 2, Box{12}).empty());

    // box below the containment estimate rejected
    CHECK_THROWS_AS(enumerate_paths(sum, {0, -2}, {4, 2}, 3, Box{10}), std::invalid_argument);

    // each path's weight is the product of its edge weights
    auto paths = enumerate_paths(sum, {0, -2}, {1, 0}, 2, Box{32});
    CHECK(!paths.empty());
    for (const PathRecord& rec : paths) {
        Rational w(1);
        for (std::size_t i = 0; i + 1 < rec.vertices.size(); ++i)
            w *= sum.weight(rec.vertices[i], rec.vertices[i + 1]);
        CHECK(w == rec.weight);
        CHECK(w > 0);
    }
}

TEST_CASE("path counts match a unit-weight DP") {
    // count length-2 (G1+G2)-paths between fixed endpoints two ways
    const WeightedGraph sum = graph_sum(graph_g1(), graph_g2());
    const Box box{32};
    const Vertex p{0, -2};
    for (const Vertex q : {Vertex{2, -2}, Vertex{1, 0}, Vertex{3, -1}}) {
        auto paths = enumerate_paths(sum, p, q, 2, box);
        // DP with all weights replaced by 1
        std::map<Vertex, long> cur{{p, 1}};
        for (int step = 0; step < 2; ++step) {
            std::map<Vertex, long> next;
            for (const auto& [v, c] : cur)
                for (const Vertex& t : sum.out(v, box))
                    if (sum.weight(v, t) > 0) next[t] += c;
            cur = std::move(next);
        }
        CHECK(static_cast<long>(paths.size()) == cur[q]);
    }
}

TEST_CASE("red-blue crossing pairs telescope") {
    // a red edge followed by a blue edge across the same horizontal line has
    // weight product <= 9
    for (int k = 2; k <= 12; k += 2) {
        for (int h = -10; h <= 10; h += 2) {
            const Vertex a{k, h};
            const Vertex b{k - 2, h + 2};  // red
            // any blue edge leaving a vertex with y = h+2 and x' >= k-2
            // (monotone x+y along the path forces x' >= k-2 ... keep exact pairs)
            for (int kp = k - 2; kp <= k + 4; ++kp) {
                const Vertex c{kp, h + 2};
                const Vertex d{kp + 2, h};  // blue
                const Rational w = g1_weight(a, b) * g1_weight(c, d);
                if (w == 0) continue;
                // telescoping bound for crossing pairs under the nondecreasing-sum constraint
                if (kp >= k - 2) CHECK(w <= rat(9));
            }
        }
    }
}

TEST_CASE("path count growth is at most geometric") {
    const WeightedGraph sum = graph_sum(graph_g1(), graph_g2());
    const Box box{40};
    const Vertex p{0, -2};
    double max_base = 0.0;
    for (int d = 1; d <= 4; ++d) {
        const Vertex q{d, -2 + d};  // |q-p| grows linearly
        std::map<Vertex, long> cur{{p, 1}};
        long count = 0;
        for (int step = 0; step < 4; ++step) {
            std::map<Vertex, long> next;
            for (const auto& [v, c] : cur)
                for (const Vertex& t : sum.out(v, box))
                    if (sum.weight(v, t) > 0) next[t] += c;
            cur = std::move(next);
        }
        count = cur.count(q) ? cur[q] : 0;
        if (count > 0) {
            const double dist = std::sqrt(static_cast<double>((q.k - p.k) * (q.k - p.k) +
                                                              (q.h - p.h) * (q.h - p.h)));
            max_base = std::max(max_base, std::pow(static_cast<double>(count), 1.0 / dist));
        }
    }
    CHECK(max_base > 0.0);
    CHECK(max_base < 64.0);  // fitted C1 stays finite and modest at this scale
}

TEST_CASE("crux fit at small scale") {
    CruxFit fit = crux_fit(3, 8);
    // the weight-1 self-loop gives the baseline
    CHECK(fit.fitted_c >= 1.0);
    CHECK(fit.fitted_c < 4.0);
    CHECK(fit.best_weight >= 1);
    REQUIRE(!fit.best_path.empty());
    // reported maximizer is a genuine path with the reported weight
    const WeightedGraph sum = graph_sum(graph_g1(), graph_g2());
    Rational w(1);
    long max_rsq = fit.best_path.front().norm_sq();
    for (std::size_t i = 0; i + 1 < fit.best_path.size(); ++i) {
        w *= sum.weight(fit.best_path[i], fit.best_path[i + 1]);
        max_rsq = std::max(max_rsq, fit.best_path[i + 1].norm_sq());
    }
    CHECK(w == fit.best_weight);
    CHECK(max_rsq <= fit.best_max_radius_sq);
}

TEST_CASE("graph majorizes the operator: bridge to T powers") {
    for (const char* name : {"x1d11_2d.json", "coordchange_2d.json"}) {
        OperatorSpec op = fixture(name);
        const int n = op.n;
        const Vertex source{0, -n};
        const Box box{30};
        HSeries cur = t_delta(op);
        for (int ell = 1; ell <= 2; ++ell) {
            auto row = g1g2_power_row(ell, source, box);
            for (const auto& [idx, el] : cur.entries()) {
                auto it = row.find(Vertex{idx.k, idx.h});
                REQUIRE(it != row.end());
                CHECK(it->second > 0);
            }
            cur = apply_T(op, cur);
        }
    }
}
