#include "fundsol/graph_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fundsol {

namespace {

inline long jb(long x) { return 1 + std::labs(x); }  // <x> = 1+|x|

}  // namespace

Rational g1_weight(const Vertex& p, const Vertex& q) {
    if (p.k >= 0 && q == p) return rat(1);
    if (p.k >= 2 && q.k == p.k - 2 && q.h == p.h + 2)
        return rat(jb(std::max<long>(p.k, std::labs(p.h))), jb(p.h));  // red
    if (p.k >= 0 && q.k == p.k + 2 && q.h == p.h - 2)
        return rat(jb(p.h), jb(std::max<long>(p.k, std::labs(p.h))));  // blue
    return Rational(0);
}

Rational g2_weight(const Vertex& p, const Vertex& q) {
    if (p.k < 0 || q.k < 0 || p == q) return Rational(0);
    // q - p = a(1,0) + b(-1,2) with a,b in N
    const int dy = q.h - p.h;
    if (dy < 0 || dy % 2 != 0) return Rational(0);
    const int b = dy / 2;
    const int a = (q.k - p.k) + b;
    if (a < 0) return Rational(0);
    return rat(1);
}

WeightedGraph graph_g1() {
    WeightedGraph g;
    g.weight = g1_weight;
    g.out = [](const Vertex& p, const Box& box) {
        std::vector<Vertex> r;
        if (p.k < 0) return r;
        if (box.contains(p)) r.push_back(p);
        if (p.k >= 2) {
            Vertex red{p.k - 2, p.h + 2};
            if (box.contains(red)) r.push_back(red);
        }
        Vertex blue{p.k + 2, p.h - 2};
        if (box.contains(blue)) r.push_back(blue);
        return r;
    };
    return g;
}

WeightedGraph graph_g2() {
    WeightedGraph g;
    g.weight = g2_weight;
    g.out = [](const Vertex& p, const Box& box) {
        std::vector<Vertex> r;
        if (p.k < 0 || !box.contains(p)) return r;
        for (int b = 0;; ++b) {
            const int h = p.h + 2 * b;
            if (h > box.radius) break;
            const long h2 = static_cast<long>(h) * h;
            const long cap2 = static_cast<long>(box.radius) * box.radius;
            if (h2 > cap2) continue;
            const int kmax = static_cast<int>(std::floor(std::sqrt(static_cast<double>(cap2 - h2))));
            for (int k = std::max(0, p.k - b); k <= kmax; ++k) {
                if (b == 0 && k <= p.k) continue;  // a >= 1 when b == 0
                Vertex q{k, h};
                if (box.contains(q)) r.push_back(q);
            }
        }
        return r;
    };
    return g;
}

WeightedGraph graph_sum(const WeightedGraph& a, const WeightedGraph& b) {
    WeightedGraph g;
    // explicit return type: a deduced one would be a gmpxx expression
    // template referencing dead temporaries
    g.weight = [a, b](const Vertex& p, const Vertex& q) -> Rational {
        return a.weight(p, q) + b.weight(p, q);
    };
    g.out = [a, b](const Vertex& p, const Box& box) {
        std::vector<Vertex> r = a.out(p, box);
        std::vector<Vertex> s = b.out(p, box);
        r.insert(r.end(), s.begin(), s.end());
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        return r;
    };
    return g;
}

Rational product_entry(const std::vector<WeightedGraph>& factors, const Vertex& p, const Vertex& q,
                       const Box& box) {
    std::map<Vertex, Rational> dist;
    dist.emplace(p, rat(1));
    for (const WeightedGraph& g : factors) {
        std::map<Vertex, Rational> next;
        for (const auto& [v, w] : dist) {
            for (const Vertex& t : g.out(v, box)) {
                const Rational e = g.weight(v, t);
                if (e == 0) continue;
                auto [it, inserted] = next.emplace(t, w * e);
                if (!inserted) it->second += w * e;
            }
        }
        dist = std::move(next);
    }
    auto it = dist.find(q);
    return it == dist.end() ? Rational(0) : it->second;
}

std::map<Vertex, Rational> g1g2_power_row(int ell, const Vertex& p, const Box& box) {
    const WeightedGraph g1 = graph_g1();
    const WeightedGraph g2 = graph_g2();
    std::map<Vertex, Rational> dist;
    dist.emplace(p, rat(1));
    for (int step = 0; step < ell; ++step) {
        for (const WeightedGraph* g : {&g1, &g2}) {
            std::map<Vertex, Rational> next;
            for (const auto& [v, w] : dist) {
                for (const Vertex& t : g->out(v, box)) {
                    const Rational e = g->weight(v, t);
                    if (e == 0) continue;
                    auto [it, inserted] = next.emplace(t, w * e);
                    if (!inserted) it->second += w * e;
                }
            }
            dist = std::move(next);
        }
    }
    return dist;
}

Rational g1g2_power_entry(int ell, const Vertex& p, const Vertex& q, const Box& box) {
    auto row = g1g2_power_row(ell, p, box);
    auto it = row.find(q);
    return it == row.end() ? Rational(0) : it->second;
}

bool sigma_member(int ell, const Vertex& v) {
    if (ell < 1) throw std::invalid_argument("sigma_member: ell must be >= 1");
    const int x = v.k, y = v.h;
    return x + y >= ell && y >= -2 * ell && 4 * x + 3 * y >= 0 && 2 * x + 3 * y >= 0 && y % 2 == 0;
}

namespace {

void enumerate_rec(const WeightedGraph& g, const Vertex& cur, const Vertex& target, int steps_left,
                   const Box& box, std::vector<Vertex>& path, const Rational& weight, long max_rsq,
                   std::vector<PathRecord>& out) {
    if (steps_left == 0) {
        if (cur == target) out.push_back({path, weight, max_rsq});
        return;
    }
    // p_x+p_y is non-decreasing along G1+G2 edges: prune overshoot
    if (cur.sum() > target.sum()) return;
    for (const Vertex& t : g.out(cur, box)) {
        const Rational e = g.weight(cur, t);
        if (e == 0) continue;
        path.push_back(t);
        enumerate_rec(g, t, target, steps_left - 1, box, path, weight * e,
                      std::max(max_rsq, t.norm_sq()), out);
        path.pop_back();
    }
}

}  // namespace

std::vector<PathRecord> enumerate_paths(const WeightedGraph& g, const Vertex& p, const Vertex& q,
                                        int ell, const Box& box) {
    if (ell < 0) throw std::invalid_argument("enumerate_paths: negative length");
    const double needed =
        std::sqrt(static_cast<double>(p.norm_sq())) + 5.0 * std::max(0, q.sum() - p.sum());
    if (static_cast<double>(box.radius) < needed)
        throw std::invalid_argument("enumerate_paths: box radius " + std::to_string(box.radius) +
                                    " below the containment estimate " + std::to_string(needed));
    std::vector<PathRecord> out;
    std::vector<Vertex> path{p};
    if (!box.contains(p)) return out;
    enumerate_rec(g, p, q, ell, box, path, rat(1), p.norm_sq(), out);
    return out;
}

CruxFit crux_fit(int max_len, int box_radius) {
    if (max_len < 1 || box_radius < 1) throw std::invalid_argument("crux_fit: bad parameters");
    const Box box{box_radius};

    // vertices with k >= 0 (no edge of G1+G2 leaves the half-plane)
    std::vector<Vertex> verts;
    for (int k = 0; k <= box_radius; ++k)
        for (int h = -box_radius; h <= box_radius; ++h)
            if (box.contains({k, h})) verts.push_back({k, h});
    std::map<Vertex, int> id;
    for (std::size_t i = 0; i < verts.size(); ++i) id.emplace(verts[i], static_cast<int>(i));

    const WeightedGraph sum = graph_sum(graph_g1(), graph_g2());
    // adjacency with targets sorted by norm_sq so a radius-s sweep uses a prefix
    struct Edge {
        int to;
        long to_rsq;
        Rational w;
    };
    std::vector<std::vector<Edge>> adj(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (const Vertex& t : sum.out(verts[i], box)) {
            const Rational w = sum.weight(verts[i], t);
            if (w == 0) continue;
            adj[i].push_back({id.at(t), t.norm_sq(), w});
        }
        std::sort(adj[i].begin(), adj[i].end(),
                  [](const Edge& a, const Edge& b) { return a.to_rsq < b.to_rsq; });
    }

    std::set<long> radii;
    for (const Vertex& v : verts) radii.insert(v.norm_sq());

    // For each confining radius s and each length t: the maximum weight of a
    // length-t path inside B_sqrt(s). A path is counted at its own maximal
    // radius, so max over (s,t) of W(s,t)^{1/(t+sqrt(s))} is the exact fit.
    CruxFit fit;
    fit.fitted_c = 1.0;  // weight-1 self-loop paths
    fit.best_weight = rat(1);
    fit.best_len = 1;
    fit.best_max_radius_sq = 0;
    long best_s = 0;
    int best_t = 1;
    bool have_best = false;

    for (long s : radii) {
        std::vector<Rational> cur(verts.size(), Rational(0));
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (verts[i].norm_sq() <= s) cur[i] = 1;
        for (int t = 1; t <= max_len; ++t) {
            std::vector<Rational> next(verts.size(), Rational(0));
            for (std::size_t i = 0; i < verts.size(); ++i) {
                if (cur[i] == 0 || verts[i].norm_sq() > s) continue;
                for (const Edge& e : adj[i]) {
                    if (e.to_rsq > s) break;
                    Rational cand = cur[i] * e.w;
                    if (cand > next[e.to]) next[e.to] = std::move(cand);
                }
            }
            Rational best(0);
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (next[i] > best) best = next[i];
            if (best > 1) {
                const double c = std::pow(rat_to_double(best),
                                          1.0 / (t + std::sqrt(static_cast<double>(s))));
                if (c > fit.fitted_c) {
                    fit.fitted_c = c;
                    fit.best_weight = best;
                    fit.best_len = t;
                    fit.best_max_radius_sq = s;
                    best_s = s;
                    best_t = t;
                    have_best = true;
                }
            }
            cur = std::move(next);
        }
    }

    if (have_best) {
        // rerun the winning (s, t) with parent tracking to recover the path
        const long s = best_s;
        std::vector<std::vector<Rational>> w(best_t + 1, std::vector<Rational>(verts.size(), Rational(0)));
        std::vector<std::vector<int>> parent(best_t + 1, std::vector<int>(verts.size(), -1));
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (verts[i].norm_sq() <= s) w[0][i] = 1;
        for (int t = 1; t <= best_t; ++t)
            for (std::size_t i = 0; i < verts.size(); ++i) {
                if (w[t - 1][i] == 0 || verts[i].norm_sq() > s) continue;
                for (const Edge& e : adj[i]) {
                    if (e.to_rsq > s) break;
                    Rational cand = w[t - 1][i] * e.w;
                    if (cand > w[t][e.to]) {
                        w[t][e.to] = std::move(cand);
                        parent[t][e.to] = static_cast<int>(i);
                    }
                }
            }
        int arg = 0;
        for (std::size_t i = 1; i < verts.size(); ++i)
            if (w[best_t][i] > w[best_t][arg]) arg = static_cast<int>(i);
        std::vector<Vertex> rev;
        int v = arg;
        for (int t = best_t; t >= 0 && v >= 0; --t) {
            rev.push_back(verts[v]);
            v = t > 0 ? parent[t][v] : -1;
        }
        fit.best_path.assign(rev.rbegin(), rev.rend());
    } else {
        fit.best_path = {Vertex{0, 0}, Vertex{0, 0}};  // weight-1 self-loop
    }
    return fit;
}

}  // namespace fundsol
