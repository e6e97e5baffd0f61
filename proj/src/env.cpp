#include "refill/env.hpp"

#include <algorithm>
#include <string>

#include "refill/errors.hpp"

namespace refill {

Env::Env(std::shared_ptr<const Graph> graph, EnvConfig cfg)
    : graph_(std::move(graph)), cfg_(cfg) {
    if (!graph_ || graph_->num_vertices() == 0)
        throw ConfigError("env: instance has no vertices");
    state_.emplace(graph_);
    mask_.assign(static_cast<std::size_t>(graph_->num_vertices()), 0);
}

Observation Env::reset() {
    state_.emplace(graph_);
    return observe();
}

Observation Env::observe() {
    const ElimState& st = *state_;
    const int n = st.num_vertices();
    Observation obs;
    obs.num_nodes = n;
    obs.features.assign(static_cast<std::size_t>(n) * kNumNodeFeatures, 0.0);
    obs.action_mask.assign(static_cast<std::size_t>(n), 0);

    if (!st.done()) {
        const StepScores scores = step_scores(st);
        const double degree_denom = std::max(1, n - 1);
        const double fill_denom =
            std::max<std::int64_t>(1, static_cast<std::int64_t>(n - 1) * (n - 2) / 2);
        for (int v = 0; v < n; ++v) {
            const auto i = static_cast<std::size_t>(v);
            double* row = obs.features.data() + i * kNumNodeFeatures;
            if (st.is_eliminated(v)) {
                row[2] = 1.0;
                continue;
            }
            row[0] = scores.degree[i] / degree_denom;
            row[1] = std::clamp(scores.fill[i] / fill_denom, 0.0, 1.0);
        }
        if (cfg_.masking_enabled) {
            obs.action_mask = candidate_mask(st, scores).allowed;
        } else {
            for (int v = 0; v < n; ++v)
                if (!st.is_eliminated(v)) obs.action_mask[static_cast<std::size_t>(v)] = 1;
        }
    } else {
        for (int v = 0; v < n; ++v)
            obs.features[static_cast<std::size_t>(v) * kNumNodeFeatures + 2] = 1.0;
    }

    obs.adjacency = cfg_.adjacency == AdjacencyMode::Original
                        ? graph_
                        : std::make_shared<const Graph>(st.current());
    mask_ = obs.action_mask;
    return obs;
}

StepResult Env::step(int action) {
    if (state_->done()) throw InvalidActionError("step on a finished episode");
    if (action < 0 || action >= num_nodes())
        throw InvalidActionError("action " + std::to_string(action) + " outside [0, " +
                                 std::to_string(num_nodes()) + ")");
    if (!mask_[static_cast<std::size_t>(action)])
        throw InvalidActionError("action " + std::to_string(action) +
                                 " is not allowed by the current mask");

    StepResult result;
    result.fill_added = state_->eliminate(action);
    result.reward = -static_cast<double>(result.fill_added);
    result.done = state_->done();
    result.observation = observe();
    return result;
}

VectorEnv::VectorEnv(std::vector<Env> envs) : envs_(std::move(envs)) {
    if (envs_.empty()) throw ConfigError("vector env: need at least one env");
}

std::vector<Observation> VectorEnv::reset() {
    std::vector<Observation> obs;
    obs.reserve(envs_.size());
    for (auto& env : envs_) obs.push_back(env.reset());
    return obs;
}

VectorEnv::Batch VectorEnv::step(std::span<const int> actions,
                                 std::vector<std::pair<int, Ordering>>* finished) {
    if (actions.size() != envs_.size())
        throw ConfigError("vector env: got " + std::to_string(actions.size()) +
                          " actions for " + std::to_string(envs_.size()) + " envs");
    Batch batch;
    const auto k = envs_.size();
    batch.observations.reserve(k);
    batch.rewards.resize(k);
    batch.dones.resize(k);
    batch.fill_added.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        StepResult r = envs_[i].step(actions[i]);
        batch.rewards[i] = r.reward;
        batch.dones[i] = r.done ? 1 : 0;
        batch.fill_added[i] = r.fill_added;
        if (r.done) {
            if (finished)
                finished->emplace_back(static_cast<int>(i),
                                       Ordering{envs_[i].state().order_so_far(),
                                                envs_[i].state().cumulative_fill()});
            batch.observations.push_back(envs_[i].reset());
        } else {
            batch.observations.push_back(std::move(r.observation));
        }
    }
    return batch;
}

}  // namespace refill
