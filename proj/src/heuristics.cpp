#include "refill/heuristics.hpp"

#include <limits>
#include <string>

#include "refill/errors.hpp"

namespace refill {

StepScores step_scores(const ElimState& state) {
    if (state.done()) throw NoVerticesError("step_scores: no vertices remain");
    const int n = state.num_vertices();
    StepScores s;
    s.degree.assign(static_cast<std::size_t>(n), 0);
    s.fill.assign(static_cast<std::size_t>(n), 0);
    s.min_degree = std::numeric_limits<int>::max();
    s.min_fill = std::numeric_limits<std::int64_t>::max();
    for (int v = 0; v < n; ++v) {
        if (state.is_eliminated(v)) continue;
        const int deg = state.current().degree(v);
        const std::int64_t fill = state.fill_if_eliminated(v);
        s.degree[static_cast<std::size_t>(v)] = deg;
        s.fill[static_cast<std::size_t>(v)] = fill;
        s.min_degree = std::min(s.min_degree, deg);
        s.min_fill = std::min(s.min_fill, fill);
    }
    return s;
}

CandidateMask candidate_mask(const ElimState& state) {
    return candidate_mask(state, step_scores(state));
}

CandidateMask candidate_mask(const ElimState& state, const StepScores& scores) {
    const int n = state.num_vertices();
    CandidateMask mask;
    mask.allowed.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (state.is_eliminated(v)) continue;
        const auto i = static_cast<std::size_t>(v);
        if (scores.degree[i] == scores.min_degree || scores.fill[i] == scores.min_fill)
            mask.allowed[i] = 1;
    }
    return mask;
}

Ordering greedy_rollout(const StepChooser& choose, const Graph& g) {
    if (g.num_vertices() == 0) throw NoVerticesError("greedy_rollout: empty graph");
    ElimState state(g);
    while (!state.done()) {
        const int v = choose(state);
        if (v < 0 || v >= state.num_vertices() || state.is_eliminated(v))
            throw ContractViolationError("greedy_rollout: chooser returned unusable vertex " +
                                         std::to_string(v));
        state.eliminate(v);
    }
    return {state.order_so_far(), state.cumulative_fill()};
}

namespace {

// argmin of `score` over non-eliminated vertices, under the tie rule;
// rng is only consulted in Random mode
template <typename Score>
int argmin_step(const ElimState& state, Rng* rng, const Score& score) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<int> tied;
    for (int v = 0; v < state.num_vertices(); ++v) {
        if (state.is_eliminated(v)) continue;
        const std::int64_t s = score(v);
        if (s < best) {
            best = s;
            tied.assign(1, v);
        } else if (s == best) {
            tied.push_back(v);
        }
    }
    if (tied.empty()) throw NoVerticesError("argmin over empty vertex set");
    if (!rng || tied.size() == 1) return tied.front();
    return tied[static_cast<std::size_t>(rng->index(static_cast<int>(tied.size())))];
}

Ordering greedy_by_degree(const Graph& g, TieBreak tie) {
    Rng rng(tie.seed);
    Rng* r = tie.mode == TieBreak::Mode::Random ? &rng : nullptr;
    return greedy_rollout(
        [r](const ElimState& s) {
            return argmin_step(s, r, [&s](int v) {
                return static_cast<std::int64_t>(s.current().degree(v));
            });
        },
        g);
}

Ordering greedy_by_fill(const Graph& g, TieBreak tie) {
    Rng rng(tie.seed);
    Rng* r = tie.mode == TieBreak::Mode::Random ? &rng : nullptr;
    return greedy_rollout(
        [r](const ElimState& s) {
            return argmin_step(s, r, [&s](int v) { return s.fill_if_eliminated(v); });
        },
        g);
}

template <typename Run>
Ordering best_of(const Graph& g, int restarts, std::uint64_t seed, const Run& run) {
    if (restarts < 1) throw ConfigError("restarts must be >= 1");
    Ordering best = run(g, TieBreak::random(child_seed(seed, 0)));
    for (int i = 1; i < restarts; ++i) {
        Ordering o = run(g, TieBreak::random(child_seed(seed, static_cast<std::uint64_t>(i))));
        if (o.fill_cost < best.fill_cost) best = std::move(o);
    }
    return best;
}

}  // namespace

Ordering mdh_order(const Graph& g, TieBreak tie) { return greedy_by_degree(g, tie); }

Ordering mfillh_order(const Graph& g, TieBreak tie) { return greedy_by_fill(g, tie); }

Ordering mdh_best_of(const Graph& g, int restarts, std::uint64_t seed) {
    return best_of(g, restarts, seed, [](const Graph& gg, TieBreak t) { return mdh_order(gg, t); });
}

Ordering mfillh_best_of(const Graph& g, int restarts, std::uint64_t seed) {
    return best_of(g, restarts, seed,
                   [](const Graph& gg, TieBreak t) { return mfillh_order(gg, t); });
}

Ordering random_order(const Graph& g, std::uint64_t seed) {
    Rng rng(seed);
    return greedy_rollout(
        [&rng](const ElimState& s) {
            std::vector<int> alive;
            alive.reserve(static_cast<std::size_t>(s.remaining()));
            for (int v = 0; v < s.num_vertices(); ++v)
                if (!s.is_eliminated(v)) alive.push_back(v);
            return alive[static_cast<std::size_t>(rng.index(static_cast<int>(alive.size())))];
        },
        g);
}

}  // namespace refill
