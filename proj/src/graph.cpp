#include "refill/graph.hpp"

#include <algorithm>
#include <string>

#include "refill/errors.hpp"

namespace refill {

Graph::Graph(int n) {
    if (n < 0) throw ConfigError("graph: negative vertex count " + std::to_string(n));
    adj_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= num_vertices())
        throw InvalidVertexError("vertex " + std::to_string(v) + " outside [0, " +
                                 std::to_string(num_vertices()) + ")");
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    const auto& nu = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nu.begin(), nu.end(), v);
}

bool Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvalidVertexError("self loop at vertex " + std::to_string(u));
    auto& nu = adj_[static_cast<std::size_t>(u)];
    const auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return false;
    nu.insert(it, v);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++num_edges_;
    return true;
}

bool Graph::remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    auto& nu = adj_[static_cast<std::size_t>(u)];
    const auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it == nu.end() || *it != v) return false;
    nu.erase(it);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
    --num_edges_;
    return true;
}

void Graph::isolate(int v) {
    check_vertex(v);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    for (const int u : nv) {
        auto& nu = adj_[static_cast<std::size_t>(u)];
        nu.erase(std::lower_bound(nu.begin(), nu.end(), v));
    }
    num_edges_ -= static_cast<std::int64_t>(nv.size());
    nv.clear();
}

int Graph::degree(int v) const {
    check_vertex(v);
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(num_edges_));
    for (int u = 0; u < num_vertices(); ++u)
        for (const int v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

int count_common(const std::vector<int>& a, const std::vector<int>& b) {
    int count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

}  // namespace refill
