#pragma once

#include <cstdint>

#include "refill/elimination.hpp"

namespace refill {

inline constexpr int kOracleDefaultLimit = 18;
inline constexpr int kExhaustiveLimit = 8;

// Exact minimum fill-in by dynamic programming over eliminated subsets:
//   best(S) = min over v not in S of fill(v | S) + best(S + v)
// which is valid because the graph after eliminating S does not depend on
// the order within S. Returns an optimal ordering with its cost.
// throws InstanceTooLargeError when g has more than limit_n vertices
Ordering exact_min_fill(const Graph& g, int limit_n = kOracleDefaultLimit);

// Minimum fill over every one of the n! elimination orders by direct
// simulation (orders sharing a prefix share its simulation). No subset
// memoization, so it cross-checks exact_min_fill from first principles.
// throws InstanceTooLargeError when g has more than kExhaustiveLimit
// vertices
std::int64_t exhaustive_min_fill(const Graph& g);

}  // namespace refill
