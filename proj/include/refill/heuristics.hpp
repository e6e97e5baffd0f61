#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "refill/elimination.hpp"
#include "refill/rng.hpp"

namespace refill {

// Tie handling for the greedy heuristics. LowestId keeps the heuristic a
// pure function of the graph; Random picks uniformly among the tied
// argmins with a dedicated seed.
struct TieBreak {
    enum class Mode { LowestId, Random };

    Mode mode = Mode::LowestId;
    std::uint64_t seed = 0;

    static TieBreak lowest_id() { return {}; }
    static TieBreak random(std::uint64_t seed) { return {Mode::Random, seed}; }
};

// Degree and prospective fill of every vertex in the current graph,
// computed in one pass so the action mask and the feature extractor share
// the work. Entries of eliminated vertices are zero and excluded from the
// minima.
struct StepScores {
    std::vector<int> degree;
    std::vector<std::int64_t> fill;
    int min_degree = 0;
    std::int64_t min_fill = 0;
};

// throws NoVerticesError when every vertex is already eliminated
StepScores step_scores(const ElimState& state);

// allowed[v] == 1 iff v is not eliminated and attains the minimum degree
// or the minimum prospective fill
struct CandidateMask {
    std::vector<std::uint8_t> allowed;
};

CandidateMask candidate_mask(const ElimState& state);
CandidateMask candidate_mask(const ElimState& state, const StepScores& scores);

// Repeatedly asks `choose` for the next vertex until the graph is fully
// eliminated. The chooser must return a non-eliminated vertex id; anything
// else raises ContractViolationError.
using StepChooser = std::function<int(const ElimState&)>;
Ordering greedy_rollout(const StepChooser& choose, const Graph& g);

// minimum degree heuristic: eliminate an argmin-degree vertex each step
Ordering mdh_order(const Graph& g, TieBreak tie = TieBreak::lowest_id());

// minimum fill-in heuristic: eliminate an argmin-prospective-fill vertex
Ordering mfillh_order(const Graph& g, TieBreak tie = TieBreak::lowest_id());

// best of `restarts` runs with random tie-breaking; restart i uses
// TieBreak::random(child_seed(seed, i)); ties on cost keep the earliest
Ordering mdh_best_of(const Graph& g, int restarts, std::uint64_t seed);
Ordering mfillh_best_of(const Graph& g, int restarts, std::uint64_t seed);

// uniformly random elimination order (baseline)
Ordering random_order(const Graph& g, std::uint64_t seed);

}  // namespace refill
