#include "refill/elimination.hpp"

#include <algorithm>
#include <string>

#include "refill/errors.hpp"

namespace refill {

ElimState::ElimState(const Graph& g) : ElimState(std::make_shared<const Graph>(g)) {}

ElimState::ElimState(std::shared_ptr<const Graph> g)
    : original_(std::move(g)),
      current_(*original_),
      eliminated_(static_cast<std::size_t>(original_->num_vertices()), 0),
      remaining_(original_->num_vertices()) {
    order_.reserve(static_cast<std::size_t>(remaining_));
}

bool ElimState::is_eliminated(int v) const {
    if (v < 0 || v >= num_vertices())
        throw InvalidVertexError("vertex " + std::to_string(v) + " outside [0, " +
                                 std::to_string(num_vertices()) + ")");
    return eliminated_[static_cast<std::size_t>(v)] != 0;
}

void ElimState::check_eliminable(int v) const {
    if (is_eliminated(v))
        throw InvalidVertexError("vertex " + std::to_string(v) + " already eliminated");
}

std::int64_t ElimState::fill_if_eliminated(int v) const {
    check_eliminable(v);
    // Each unordered neighbor pair (a, b) with b not adjacent to a is one
    // fill edge. Counted from both ends via common-neighbor scans:
    // for a in N(v), the pairs {a, b} missing at a number
    // deg(v) - 1 - |N(v) ∩ N(a)|.
    const auto& nv = current_.neighbors(v);
    const std::int64_t deg = static_cast<std::int64_t>(nv.size());
    std::int64_t missing_twice = 0;
    for (const int a : nv)
        missing_twice += deg - 1 - count_common(nv, current_.neighbors(a));
    return missing_twice / 2;
}

std::int64_t ElimState::eliminate(int v, std::vector<Edge>* fill_out) {
    check_eliminable(v);
    const auto& nv = current_.neighbors(v);

    std::vector<Edge> fill;
    for (std::size_t i = 0; i < nv.size(); ++i) {
        const int a = nv[i];
        const auto& na = current_.neighbors(a);
        for (std::size_t j = i + 1; j < nv.size(); ++j) {
            const int b = nv[j];
            if (!std::binary_search(na.begin(), na.end(), b)) fill.emplace_back(a, b);
        }
    }
    for (const auto& [a, b] : fill) current_.add_edge(a, b);
    current_.isolate(v);

    eliminated_[static_cast<std::size_t>(v)] = 1;
    order_.push_back(v);
    cumulative_fill_ += static_cast<std::int64_t>(fill.size());
    --remaining_;

    const std::int64_t added = static_cast<std::int64_t>(fill.size());
    if (fill_out) *fill_out = std::move(fill);
    return added;
}

void validate_permutation(int n, std::span<const int> order) {
    if (static_cast<int>(order.size()) != n)
        throw InvalidPermutationError("order has " + std::to_string(order.size()) +
                                      " entries, graph has " + std::to_string(n) + " vertices");
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
    for (const int v : order) {
        if (v < 0 || v >= n)
            throw InvalidPermutationError("order entry " + std::to_string(v) + " outside [0, " +
                                          std::to_string(n) + ")");
        if (seen[static_cast<std::size_t>(v)])
            throw InvalidPermutationError("order repeats vertex " + std::to_string(v));
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

std::int64_t fill_in_cost(const Graph& g, std::span<const int> order) {
    validate_permutation(g.num_vertices(), order);
    ElimState state(g);
    for (const int v : order) state.eliminate(v);
    return state.cumulative_fill();
}

std::vector<Edge> fill_in_edges(const Graph& g, std::span<const int> order) {
    validate_permutation(g.num_vertices(), order);
    ElimState state(g);
    std::vector<Edge> all;
    std::vector<Edge> step;
    for (const int v : order) {
        state.eliminate(v, &step);
        all.insert(all.end(), step.begin(), step.end());
    }
    for (auto& [u, v] : all)
        if (u > v) std::swap(u, v);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<Edge> rose_tarjan_fill(const Graph& g, std::span<const int> order) {
    const int n = g.num_vertices();
    validate_permutation(n, order);
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[i])] = i;

    // For source u, a BFS that only passes through interiors ranked below
    // u reaches exactly the v with a qualifying u-v path among later-ranked
    // targets: interiors < rank(u) <= min of the pair once rank(v) > rank(u).
    // The other orientation of each pair is covered from the lower-ranked
    // endpoint, so scanning every u finds every fill edge once.
    std::vector<Edge> out;
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(n));
    std::vector<int> queue;
    for (int u = 0; u < n; ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        visited[static_cast<std::size_t>(u)] = 1;
        queue.assign(1, u);
        const int ru = rank[static_cast<std::size_t>(u)];
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int w = queue[head];
            for (const int x : g.neighbors(w)) {
                if (visited[static_cast<std::size_t>(x)]) continue;
                visited[static_cast<std::size_t>(x)] = 1;
                if (rank[static_cast<std::size_t>(x)] < ru)
                    queue.push_back(x);  // usable interior, keep expanding
                if (rank[static_cast<std::size_t>(x)] > ru && !g.has_edge(u, x))
                    out.emplace_back(std::min(u, x), std::max(u, x));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace refill
