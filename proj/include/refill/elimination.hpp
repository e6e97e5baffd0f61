#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "refill/graph.hpp"

namespace refill {

// State of the elimination game on a graph. Eliminating v connects v's
// current neighbors into a clique (the fill edges) and then isolates v.
// Eliminated vertices stay in the vertex set as isolated vertices so ids
// remain stable for downstream consumers.
class ElimState {
public:
    explicit ElimState(const Graph& g);
    explicit ElimState(std::shared_ptr<const Graph> g);

    const Graph& original() const { return *original_; }
    std::shared_ptr<const Graph> original_ptr() const { return original_; }
    const Graph& current() const { return current_; }

    int num_vertices() const { return current_.num_vertices(); }
    bool is_eliminated(int v) const;
    int remaining() const { return remaining_; }
    bool done() const { return remaining_ == 0; }

    // vertices eliminated so far, in elimination order
    const std::vector<int>& order_so_far() const { return order_; }
    int step_index() const { return static_cast<int>(order_.size()); }
    std::int64_t cumulative_fill() const { return cumulative_fill_; }

    // number of fill edges eliminating v would create; state unchanged
    std::int64_t fill_if_eliminated(int v) const;

    // eliminate v, returning the number of fill edges added; the pairs
    // themselves are materialized into *fill_out only when requested
    std::int64_t eliminate(int v, std::vector<Edge>* fill_out = nullptr);

private:
    void check_eliminable(int v) const;

    std::shared_ptr<const Graph> original_;
    Graph current_;
    std::vector<std::uint8_t> eliminated_;
    std::vector<int> order_;
    std::int64_t cumulative_fill_ = 0;
    int remaining_ = 0;
};

// throws InvalidPermutationError unless `order` is a permutation of 0..n-1
void validate_permutation(int n, std::span<const int> order);

// total fill of eliminating g in the given order
std::int64_t fill_in_cost(const Graph& g, std::span<const int> order);

// fill edges of the whole elimination, by direct simulation; (u, v) pairs
// with u < v, lexicographically sorted
std::vector<Edge> fill_in_edges(const Graph& g, std::span<const int> order);

// Fill edges by the path characterization: a non-edge (i, j) of g fills
// exactly when the original graph has an i-j path whose interior vertices
// are all ranked before both i and j. Walks only the original graph, so it
// is independent of the elimination simulation above. Intended as a
// cross-check; quadratic-ish, not for hot paths.
std::vector<Edge> rose_tarjan_fill(const Graph& g, std::span<const int> order);

// An elimination order together with its total fill.
struct Ordering {
    std::vector<int> perm;      // perm[i] = vertex eliminated at step i
    std::int64_t fill_cost = 0;
};

}  // namespace refill
