#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace refill {

// Undirected edge; normalized to first < second wherever returned.
using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1. No self loops, no parallel
// edges. Adjacency is kept as sorted neighbor vectors so membership tests
// and common-neighbor scans are cheap.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    // throws on out-of-range endpoints or self loops in `edges`
    static Graph from_edges(int n, std::span<const Edge> edges);

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    std::int64_t num_edges() const { return num_edges_; }

    bool has_edge(int u, int v) const;

    // true if the edge was inserted, false if it already existed
    bool add_edge(int u, int v);
    bool remove_edge(int u, int v);

    // drop every edge incident to v
    void isolate(int v);

    int degree(int v) const;
    const std::vector<int>& neighbors(int v) const;  // ascending

    // all edges as (u, v) with u < v, lexicographically sorted
    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    void check_vertex(int v) const;

    std::vector<std::vector<int>> adj_;
    std::int64_t num_edges_ = 0;
};

// |a ∩ b| for ascending-sorted vectors
int count_common(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace refill
