#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refill/env.hpp"
#include "refill/policy.hpp"
#include "refill/rng.hpp"

namespace refill {

struct TrainConfig {
    std::int64_t total_timesteps = 500'000;
    int parallel_envs = 5;
    double learning_rate = 1e-4;
    int node_dim = 32;
    std::vector<int> policy_sizes;  // value-head hidden widths
    double ent_coef = 0.002;
    bool masking_enabled = true;
    AdjacencyMode adjacency = AdjacencyMode::Current;
    std::uint64_t seed = 0;

    // optimization schedule; rollout_length 0 picks a batch of about 2048
    // transitions split across the envs
    int rollout_length = 0;
    int ppo_epochs = 10;
    int minibatch_size = 64;
    double gamma = 0.99;
    double gae_lambda = 0.95;
    double clip_epsilon = 0.2;
    double value_coef = 0.5;
    double max_grad_norm = 0.5;

    int effective_rollout_length() const;
    void validate() const;  // throws ConfigError

    PolicyConfig policy_config() const { return {node_dim, policy_sizes, adjacency}; }
};

// Transitions laid out step-major: index t * num_envs + e.
struct RolloutBuffer {
    int num_steps = 0;
    int num_envs = 0;
    std::vector<Observation> observations;  // the observation acted on
    std::vector<int> actions;
    std::vector<double> log_probs;
    std::vector<double> values;
    std::vector<double> rewards;
    std::vector<std::uint8_t> dones;  // this transition ended its episode
    std::vector<double> bootstrap_values;  // per env, value after the last step
    std::vector<double> advantages;        // filled by compute_gae
    std::vector<double> returns;           // advantages + values

    std::size_t size() const { return observations.size(); }
    void clear();
};

// Run every env `num_steps` steps in lock step, sampling from the policy
// with each env's own rng; finished episodes auto-reset. Returns the
// (env index, completed ordering) pairs in completion order.
std::vector<std::pair<int, Ordering>> collect_rollouts(const PolicyParams& params,
                                                       VectorEnv& venv,
                                                       std::vector<Observation>& obs,
                                                       int num_steps, std::span<Rng> action_rngs,
                                                       RolloutBuffer& out);

// Generalized advantage estimation, backward over steps per env:
//
//   delta_t = r_t + gamma * (1 - done_t) * V(s_{t+1}) - V(s_t)
//   A_t     = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
//
// Advantages are left unnormalized here (lambda = 0 gives A_t = delta_t
// exactly); the update normalizes its own copy.
void compute_gae(RolloutBuffer& buffer, double gamma, double lambda);

struct AdamState {
    std::vector<double> m, v;
    std::int64_t step_count = 0;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

// Scale `grads` so its global L2 norm is at most `max_norm` (no-op when
// max_norm <= 0); returns the norm before clipping.
double clip_gradients(std::span<double> grads, double max_norm);

struct UpdateStats {
    double policy_loss = 0.0;
    double value_loss = 0.0;  // unweighted mean squared error
    double entropy = 0.0;
    int minibatches = 0;
};

// One PPO update over the buffer: normalize advantages across the whole
// batch, then ppo_epochs passes of shuffled minibatches (final partial
// minibatch included), each taking a clipped Adam step. Throws
// ContractViolationError if a loss goes non-finite. Stats are
// sample-weighted means over everything processed.
UpdateStats ppo_update(PolicyParams& params, PolicyParams& grads, AdamState& adam,
                       const RolloutBuffer& buffer, const TrainConfig& cfg, Rng& shuffle_rng);

struct TrainLogRow {
    std::int64_t timesteps = 0;
    double mean_fill = 0.0;  // mean fill over episodes finished this update
    double best_fill = 0.0;  // mean over graphs of the best fill seen so far
    double policy_loss = 0.0;
    double value_loss = 0.0;
    double entropy = 0.0;
};

inline constexpr const char* kTrainCsvHeader =
    "timesteps,mean_fill,best_fill,policy_loss,value_loss,entropy";

struct TrainSinks {
    std::string checkpoint_path;        // overwritten after every update; empty = off
    std::string csv_path;               // progress log; empty = off
    std::vector<std::string> csv_echo;  // written as leading '# ' lines before the header
    std::function<void(int graph_index, const Ordering&)> on_best;  // strict improvements
};

struct TrainResult {
    PolicyParams params;
    std::vector<Ordering> best;  // per input graph; perm empty until an episode finishes
    std::vector<TrainLogRow> log;
};

// Train a policy on the given instances. One graph is shared by every env;
// otherwise there must be exactly one graph per env. Updates repeat until
// at least total_timesteps env transitions are consumed, so the last
// update may overshoot. Fully deterministic for a fixed config.
TrainResult train(const std::vector<std::shared_ptr<const Graph>>& graphs,
                  const TrainConfig& cfg, const TrainSinks& sinks = {});

}  // namespace refill
