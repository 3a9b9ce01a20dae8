#ifndef FUNDSOL_GRAPH_BOUNDS_HPP
#define FUNDSOL_GRAPH_BOUNDS_HPP

#include <functional>
#include <map>
#include <vector>

#include "fundsol/rational.hpp"

namespace fundsol {

// A point of Z^2; x-coordinate k, y-coordinate h, matching the H^{k,h}
// bookkeeping the graphs majorize.
struct Vertex {
    int k;
    int h;

    long norm_sq() const { return static_cast<long>(k) * k + static_cast<long>(h) * h; }
    int sum() const { return k + h; }
    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend bool operator<(const Vertex& a, const Vertex& b) {
        return a.k != b.k ? a.k < b.k : a.h < b.h;
    }
};

struct Box {
    int radius;
    bool contains(const Vertex& v) const {
        return v.norm_sq() <= static_cast<long>(radius) * radius;
    }
};

// G1: self-loop of weight 1 (k >= 0), red edge (k,h)->(k-2,h+2) of weight
// <max{k,|h|}>/<h> (k >= 2), blue edge (k,h)->(k+2,h-2) of weight
// <h>/<max{k,|h|}> (k >= 0), where <x> = 1+|x|.
Rational g1_weight(const Vertex& p, const Vertex& q);

// G2: weight 1 iff k,k' >= 0, q != p and q-p in N(1,0)+N(-1,2).
Rational g2_weight(const Vertex& p, const Vertex& q);

// A directed weighted Z^2-graph given as a weight rule plus an enumerator
// of out-neighbors; G2 has infinite out-neighborhoods, so the enumerator
// always takes an explicit bounding box.
struct WeightedGraph {
    std::function<Rational(const Vertex&, const Vertex&)> weight;
    std::function<std::vector<Vertex>(const Vertex&, const Box&)> out;
};

WeightedGraph graph_g1();
WeightedGraph graph_g2();
// (G1+G2)(p,q) = G1(p,q) + G2(p,q)
WeightedGraph graph_sum(const WeightedGraph& a, const WeightedGraph& b);

// Convolution (F1 . F2 ... Fm)(p,q) = sum over intermediate vertices inside
// the box; exact dynamic programming.
Rational product_entry(const std::vector<WeightedGraph>& factors, const Vertex& p, const Vertex& q,
                       const Box& box);

// (G1.G2)^ell(p, q) and the full row (G1.G2)^ell(p, .).
Rational g1g2_power_entry(int ell, const Vertex& p, const Vertex& q, const Box& box);
std::map<Vertex, Rational> g1g2_power_row(int ell, const Vertex& p, const Box& box);

// Sigma_ell = {x+y >= ell, y >= -2 ell, 4x+3y >= 0, 2x+3y >= 0, y even}.
bool sigma_member(int ell, const Vertex& v);

struct PathRecord {
    std::vector<Vertex> vertices;  // p_0 ... p_ell
    Rational weight;
    long max_radius_sq;  // max |p_i|^2
};

// All length-ell paths from p to q with every vertex inside the box,
// pruned by the monotone quantity p_x+p_y (non-decreasing along G1+G2
// edges). The box must cover the containment estimate
// |r| <= |p| + 5(q_x+q_y-p_x-p_y).
std::vector<PathRecord> enumerate_paths(const WeightedGraph& g, const Vertex& p, const Vertex& q,
                                        int ell, const Box& box);

struct CruxFit {
    double fitted_c;       // min C with weight <= C^{len + max|p_i|} over all paths
    Rational best_weight;  // weight of the maximizing path
    int best_len;
    long best_max_radius_sq;
    std::vector<Vertex> best_path;
};

// Fit over all (G1+G2)-paths of length 1..max_len with vertices of
// nonnegative k inside the radius-`box_radius` box. Exact interior
// arithmetic; only the final root is floated.
CruxFit crux_fit(int max_len, int box_radius);

}  // namespace fundsol

#endif
