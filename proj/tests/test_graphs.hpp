#pragma once

// Small graph builders shared by the test suites. Everything here is
// deliberately naive; tests want independent constructions, not the
// library's own generators.

#include <algorithm>
#include <numeric>
#include <vector>

#include "refill/elimination.hpp"
#include "refill/graph.hpp"
#include "refill/rng.hpp"

namespace refill::testing {

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

// vertex 0 is the hub
inline Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph grid_graph(int rows, int cols) {
    Graph g(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
            if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
        }
    return g;
}

// Star at 0 over {1, 3, 4} plus the pendant 2-3:
//
//      1
//      |
//      0 --- 4
//      |
//      3 --- 2
//
// The hub's three neighbors are pairwise nonadjacent, so eliminating 0
// first costs exactly three fill edges, while leaves-first costs zero.
inline Graph hub_tree5() {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(0, 3);
    g.add_edge(0, 4);
    g.add_edge(2, 3);
    return g;
}

inline Graph random_gnp(int n, double p, Rng& rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

// uniform random attachment; always connected
inline Graph random_tree(int n, Rng& rng) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng.uniform_int(0, v - 1)));
    return g;
}

// intersection graph of random intervals; interval graphs are chordal
inline Graph random_interval_graph(int n, Rng& rng) {
    std::vector<std::pair<double, double>> spans;
    spans.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double a = rng.uniform(), b = rng.uniform();
        if (a > b) std::swap(a, b);
        spans.emplace_back(a, b);
    }
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const auto& [a1, b1] = spans[static_cast<std::size_t>(u)];
            const auto& [a2, b2] = spans[static_cast<std::size_t>(v)];
            if (std::max(a1, a2) <= std::min(b1, b2)) g.add_edge(u, v);
        }
    return g;
}

inline std::vector<int> identity_order(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> order = identity_order(n);
    rng.shuffle(order);
    return order;
}

// relabeled copy: edge (u, v) becomes (sigma[u], sigma[v])
inline Graph relabel(const Graph& g, const std::vector<int>& sigma) {
    Graph out(g.num_vertices());
    for (const auto& [u, v] : g.edges())
        out.add_edge(sigma[static_cast<std::size_t>(u)], sigma[static_cast<std::size_t>(v)]);
    return out;
}

// peel vertices of degree <= 1 first; zero-fill on any tree
inline std::vector<int> leaves_first_order(const Graph& tree) {
    Graph work = tree;
    std::vector<bool> removed(static_cast<std::size_t>(tree.num_vertices()), false);
    std::vector<int> order;
    for (int step = 0; step < tree.num_vertices(); ++step) {
        for (int v = 0; v < tree.num_vertices(); ++v) {
            if (!removed[static_cast<std::size_t>(v)] && work.degree(v) <= 1) {
                order.push_back(v);
                removed[static_cast<std::size_t>(v)] = true;
                work.isolate(v);
                break;
            }
        }
    }
    return order;
}

// minimum fill by scanning every permutation with fill_in_cost; the
// third, dumbest implementation, used to referee the other two
inline std::int64_t brute_min_fill(const Graph& g) {
    std::vector<int> order = identity_order(g.num_vertices());
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        best = std::min(best, fill_in_cost(g, order));
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace refill::testing
