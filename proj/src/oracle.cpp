#include "refill/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "refill/errors.hpp"

namespace refill {

namespace {

// Elimination on a scratch graph with enough bookkeeping to undo it, so
// the searches below can walk the tree of orders without copying graphs.
struct UndoRecord {
    int v = -1;
    std::vector<int> saved_neighbors;
    std::vector<Edge> fill;
};

UndoRecord eliminate_scratch(Graph& g, int v) {
    UndoRecord rec;
    rec.v = v;
    rec.saved_neighbors = g.neighbors(v);
    const auto& nv = rec.saved_neighbors;
    for (std::size_t i = 0; i < nv.size(); ++i)
        for (std::size_t j = i + 1; j < nv.size(); ++j)
            if (!g.has_edge(nv[i], nv[j])) rec.fill.emplace_back(nv[i], nv[j]);
    for (const auto& [a, b] : rec.fill) g.add_edge(a, b);
    g.isolate(v);
    return rec;
}

void undo_eliminate(Graph& g, const UndoRecord& rec) {
    for (const int u : rec.saved_neighbors) g.add_edge(rec.v, u);
    for (const auto& [a, b] : rec.fill) g.remove_edge(a, b);
}

constexpr std::int64_t kUnknown = -1;

// Hard structural cap: the memo table is dense in 2^n.
constexpr int kOracleHardCap = 22;

struct SubsetMemo {
    std::vector<std::int64_t> best;
    std::vector<std::int8_t> choice;
};

std::int64_t solve_subset(Graph& work, std::uint32_t mask, std::uint32_t full, int n,
                          SubsetMemo& memo) {
    if (mask == full) return 0;
    if (memo.best[mask] != kUnknown) return memo.best[mask];
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::int8_t choice = -1;
    for (int v = 0; v < n; ++v) {
        if (mask & (1u << v)) continue;
        const UndoRecord rec = eliminate_scratch(work, v);
        const std::int64_t total = static_cast<std::int64_t>(rec.fill.size()) +
                                   solve_subset(work, mask | (1u << v), full, n, memo);
        undo_eliminate(work, rec);
        if (total < best) {
            best = total;
            choice = static_cast<std::int8_t>(v);
        }
    }
    memo.best[mask] = best;
    memo.choice[mask] = choice;
    return best;
}

}  // namespace

Ordering exact_min_fill(const Graph& g, int limit_n) {
    const int n = g.num_vertices();
    if (limit_n < 0 || limit_n > kOracleHardCap)
        throw ConfigError("exact_min_fill: limit must be in [0, " +
                          std::to_string(kOracleHardCap) + "], got " + std::to_string(limit_n));
    if (n > limit_n)
        throw InstanceTooLargeError("exact_min_fill: " + std::to_string(n) +
                                    " vertices exceeds limit " + std::to_string(limit_n));
    if (n == 0) return {};

    SubsetMemo memo;
    memo.best.assign(std::size_t{1} << n, kUnknown);
    memo.choice.assign(std::size_t{1} << n, -1);
    Graph work = g;
    const auto full = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    const std::int64_t cost = solve_subset(work, 0, full, n, memo);

    Ordering out;
    out.fill_cost = cost;
    out.perm.reserve(static_cast<std::size_t>(n));
    std::uint32_t mask = 0;
    while (mask != full) {
        const int v = memo.choice[mask];
        out.perm.push_back(v);
        mask |= 1u << v;
    }
    return out;
}

namespace {

void exhaust(Graph& work, std::vector<std::uint8_t>& used, int remaining, std::int64_t acc,
             std::int64_t& best) {
    if (remaining == 0) {
        best = std::min(best, acc);
        return;
    }
    const int n = work.num_vertices();
    for (int v = 0; v < n; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        used[static_cast<std::size_t>(v)] = 1;
        const UndoRecord rec = eliminate_scratch(work, v);
        exhaust(work, used, remaining - 1, acc + static_cast<std::int64_t>(rec.fill.size()), best);
        undo_eliminate(work, rec);
        used[static_cast<std::size_t>(v)] = 0;
    }
}

}  // namespace

std::int64_t exhaustive_min_fill(const Graph& g) {
    const int n = g.num_vertices();
    if (n > kExhaustiveLimit)
        throw InstanceTooLargeError("exhaustive_min_fill: " + std::to_string(n) +
                                    " vertices exceeds limit " + std::to_string(kExhaustiveLimit));
    if (n == 0) return 0;
    Graph work = g;
    std::vector<std::uint8_t> used(static_cast<std::size_t>(n), 0);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    exhaust(work, used, n, 0, best);
    return best;
}

}  // namespace refill
