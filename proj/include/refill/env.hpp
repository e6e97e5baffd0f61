#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "refill/elimination.hpp"
#include "refill/heuristics.hpp"

namespace refill {

// Which graph the policy's message passing runs over: the input graph, or
// the current partially eliminated graph including fill edges.
enum class AdjacencyMode { Original, Current };

struct EnvConfig {
    bool masking_enabled = true;
    std::uint64_t seed = 0;  // reserved for sampling graph sources; fixed instances ignore it
    AdjacencyMode adjacency = AdjacencyMode::Current;
};

inline constexpr int kNumNodeFeatures = 3;

// Per-node features are (degree / (n-1), prospective fill / C(n-1, 2)
// clamped to [0, 1], eliminated flag), row-major. Eliminated nodes carry
// (0, 0, 1) and are never mask-allowed.
struct Observation {
    int num_nodes = 0;
    std::vector<double> features;
    std::shared_ptr<const Graph> adjacency;
    std::vector<std::uint8_t> action_mask;
};

struct StepResult {
    Observation observation;
    double reward = 0.0;
    bool done = false;
    std::int64_t fill_added = 0;
};

// One elimination episode: an action eliminates a vertex, the reward is
// the negative fill added, the episode ends when every vertex is gone.
class Env {
public:
    Env(std::shared_ptr<const Graph> graph, EnvConfig cfg);

    Observation reset();
    StepResult step(int action);

    const ElimState& state() const { return *state_; }
    const Graph& graph() const { return *graph_; }
    const EnvConfig& config() const { return cfg_; }
    int num_nodes() const { return graph_->num_vertices(); }

private:
    Observation observe();

    std::shared_ptr<const Graph> graph_;
    EnvConfig cfg_;
    std::optional<ElimState> state_;
    std::vector<std::uint8_t> mask_;  // mask of the latest observation
};

// Lock-step batch of envs. A finished env is reset in place and the fresh
// observation returned, so callers always hold something to act on.
class VectorEnv {
public:
    explicit VectorEnv(std::vector<Env> envs);

    int size() const { return static_cast<int>(envs_.size()); }
    Env& env(int i) { return envs_[static_cast<std::size_t>(i)]; }
    const Env& env(int i) const { return envs_[static_cast<std::size_t>(i)]; }

    std::vector<Observation> reset();

    struct Batch {
        std::vector<Observation> observations;
        std::vector<double> rewards;
        std::vector<std::uint8_t> dones;
        std::vector<std::int64_t> fill_added;
    };

    // `finished` collects (env index, completed episode ordering)
    Batch step(std::span<const int> actions,
               std::vector<std::pair<int, Ordering>>* finished = nullptr);

private:
    std::vector<Env> envs_;
};

}  // namespace refill
