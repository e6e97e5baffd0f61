#include "refill/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "refill/errors.hpp"
#include "refill/text.hpp"

namespace refill {

int TrainConfig::effective_rollout_length() const {
    if (rollout_length > 0) return rollout_length;
    return std::max(1, static_cast<int>(std::lround(2048.0 / parallel_envs)));
}

void TrainConfig::validate() const {
    if (total_timesteps < 0) throw ConfigError("train: total_timesteps must be >= 0");
    if (parallel_envs < 1) throw ConfigError("train: parallel_envs must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("train: learning_rate must be > 0");
    if (rollout_length < 0) throw ConfigError("train: rollout_length must be >= 0");
    if (ppo_epochs < 1) throw ConfigError("train: ppo_epochs must be >= 1");
    if (minibatch_size < 1) throw ConfigError("train: minibatch_size must be >= 1");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("train: gamma must be in [0, 1]");
    if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0))
        throw ConfigError("train: gae_lambda must be in [0, 1]");
    if (!(clip_epsilon > 0.0)) throw ConfigError("train: clip_epsilon must be > 0");
    if (value_coef < 0.0) throw ConfigError("train: value_coef must be >= 0");
    if (ent_coef < 0.0) throw ConfigError("train: ent_coef must be >= 0");
    if (max_grad_norm < 0.0) throw ConfigError("train: max_grad_norm must be >= 0");
    policy_config().validate();
}

void RolloutBuffer::clear() {
    num_steps = num_envs = 0;
    observations.clear();
    actions.clear();
    log_probs.clear();
    values.clear();
    rewards.clear();
    dones.clear();
    bootstrap_values.clear();
    advantages.clear();
    returns.clear();
}

std::vector<std::pair<int, Ordering>> collect_rollouts(const PolicyParams& params,
                                                       VectorEnv& venv,
                                                       std::vector<Observation>& obs,
                                                       int num_steps, std::span<Rng> action_rngs,
                                                       RolloutBuffer& out) {
    const int num_envs = venv.size();
    if (num_steps < 1) throw ConfigError("collect_rollouts: num_steps must be >= 1");
    if (static_cast<int>(obs.size()) != num_envs)
        throw ConfigError("collect_rollouts: need one observation per env");
    if (static_cast<int>(action_rngs.size()) != num_envs)
        throw ConfigError("collect_rollouts: need one rng per env");

    out.clear();
    out.num_steps = num_steps;
    out.num_envs = num_envs;
    const std::size_t total = static_cast<std::size_t>(num_steps) * num_envs;
    out.observations.reserve(total);
    out.actions.reserve(total);
    out.log_probs.reserve(total);
    out.values.reserve(total);
    out.rewards.reserve(total);
    out.dones.reserve(total);

    std::vector<std::pair<int, Ordering>> finished;
    std::vector<int> actions(static_cast<std::size_t>(num_envs));
    for (int t = 0; t < num_steps; ++t) {
        for (int e = 0; e < num_envs; ++e) {
            const auto ee = static_cast<std::size_t>(e);
            const PolicyOutput po = forward(params, obs[ee]);
            const auto [action, logp] = sample_action(po, action_rngs[ee]);
            actions[ee] = action;
            out.observations.push_back(std::move(obs[ee]));
            out.actions.push_back(action);
            out.log_probs.push_back(logp);
            out.values.push_back(po.value);
        }
        VectorEnv::Batch batch = venv.step(actions, &finished);
        for (int e = 0; e < num_envs; ++e) {
            out.rewards.push_back(batch.rewards[static_cast<std::size_t>(e)]);
            out.dones.push_back(batch.dones[static_cast<std::size_t>(e)]);
        }
        obs = std::move(batch.observations);
    }
    out.bootstrap_values.reserve(static_cast<std::size_t>(num_envs));
    for (int e = 0; e < num_envs; ++e)
        out.bootstrap_values.push_back(forward(params, obs[static_cast<std::size_t>(e)]).value);
    return finished;
}

void compute_gae(RolloutBuffer& buffer, double gamma, double lambda) {
    const int steps = buffer.num_steps, envs = buffer.num_envs;
    if (buffer.size() != static_cast<std::size_t>(steps) * envs ||
        buffer.bootstrap_values.size() != static_cast<std::size_t>(envs))
        throw ConfigError("compute_gae: buffer shape mismatch");
    buffer.advantages.assign(buffer.size(), 0.0);
    buffer.returns.assign(buffer.size(), 0.0);
    for (int e = 0; e < envs; ++e) {
        double lastgae = 0.0;
        for (int t = steps - 1; t >= 0; --t) {
            const auto i = static_cast<std::size_t>(t) * envs + e;
            const double nonterminal = buffer.dones[i] ? 0.0 : 1.0;
            const double next_value = t + 1 < steps
                                          ? buffer.values[i + static_cast<std::size_t>(envs)]
                                          : buffer.bootstrap_values[static_cast<std::size_t>(e)];
            const double delta =
                buffer.rewards[i] + gamma * nonterminal * next_value - buffer.values[i];
            lastgae = delta + gamma * lambda * nonterminal * lastgae;
            buffer.advantages[i] = lastgae;
            buffer.returns[i] = lastgae + buffer.values[i];
        }
    }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr, double beta1, double beta2, double eps) {
    if (params.size() != grads.size() || params.size() != state.m.size())
        throw ConfigError("adam_step: size mismatch");
    state.step_count += 1;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step_count));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step_count));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * g;
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * g * g;
        const double mhat = state.m[i] / bc1;
        const double vhat = state.v[i] / bc2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

double clip_gradients(std::span<double> grads, double max_norm) {
    double sq = 0.0;
    for (const double g : grads) sq += g * g;
    const double norm = std::sqrt(sq);
    if (max_norm > 0.0 && norm > max_norm) {
        const double scale = max_norm / norm;
        for (double& g : grads) g *= scale;
    }
    return norm;
}

UpdateStats ppo_update(PolicyParams& params, PolicyParams& grads, AdamState& adam,
                       const RolloutBuffer& buffer, const TrainConfig& cfg, Rng& shuffle_rng) {
    const std::size_t n = buffer.size();
    if (n == 0) throw ConfigError("ppo_update: empty buffer");
    if (buffer.advantages.size() != n || buffer.returns.size() != n)
        throw ConfigError("ppo_update: run compute_gae first");

    // batch-level advantage normalization
    double mean = 0.0;
    for (const double a : buffer.advantages) mean += a;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const double a : buffer.advantages) var += (a - mean) * (a - mean);
    var /= static_cast<double>(n);
    const double denom = std::sqrt(var) + 1e-8;
    std::vector<double> adv(n);
    for (std::size_t i = 0; i < n; ++i) adv[i] = (buffer.advantages[i] - mean) / denom;

    const LossCoeffs coeffs{cfg.clip_epsilon, cfg.value_coef, cfg.ent_coef};
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    UpdateStats stats;
    std::size_t processed = 0;
    std::vector<const Observation*> mb_obs;
    std::vector<SampleTarget> mb_targets;
    for (int epoch = 0; epoch < cfg.ppo_epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.minibatch_size)) {
            const std::size_t stop = std::min(n, start + static_cast<std::size_t>(cfg.minibatch_size));
            mb_obs.clear();
            mb_targets.clear();
            for (std::size_t k = start; k < stop; ++k) {
                const std::size_t i = order[k];
                mb_obs.push_back(&buffer.observations[i]);
                mb_targets.push_back(
                    {buffer.actions[i], buffer.log_probs[i], adv[i], buffer.returns[i]});
            }
            const LossBreakdown lb = backward(params, mb_obs, mb_targets, coeffs, grads);
            if (!std::isfinite(lb.total))
                throw ContractViolationError("ppo_update: loss went non-finite");
            clip_gradients(grads.flat(), cfg.max_grad_norm);
            adam_step(params.flat(), grads.flat(), adam, cfg.learning_rate);

            const double weight = static_cast<double>(stop - start);
            stats.policy_loss += lb.policy * weight;
            stats.value_loss += lb.value * weight;
            stats.entropy += lb.entropy * weight;
            processed += stop - start;
            stats.minibatches += 1;
        }
    }
    const double inv = 1.0 / static_cast<double>(processed);
    stats.policy_loss *= inv;
    stats.value_loss *= inv;
    stats.entropy *= inv;
    return stats;
}

namespace {

void write_csv_row(std::ofstream& csv, const TrainLogRow& row) {
    csv << row.timesteps << ',' << format_double(row.mean_fill) << ','
        << format_double(row.best_fill) << ',' << format_double(row.policy_loss) << ','
        << format_double(row.value_loss) << ',' << format_double(row.entropy) << '\n';
    csv.flush();
}

}  // namespace

TrainResult train(const std::vector<std::shared_ptr<const Graph>>& graphs,
                  const TrainConfig& cfg, const TrainSinks& sinks) {
    cfg.validate();
    if (graphs.empty()) throw ConfigError("train: no graphs");
    for (const auto& g : graphs)
        if (!g || g->num_vertices() == 0) throw ConfigError("train: null or empty graph");

    const int num_envs = cfg.parallel_envs;
    std::vector<int> graph_of_env;
    if (graphs.size() == 1) {
        graph_of_env.assign(static_cast<std::size_t>(num_envs), 0);
    } else if (static_cast<int>(graphs.size()) == num_envs) {
        graph_of_env.resize(static_cast<std::size_t>(num_envs));
        std::iota(graph_of_env.begin(), graph_of_env.end(), 0);
    } else {
        throw ConfigError("train: pass one graph, or exactly one per env (" +
                          std::to_string(graphs.size()) + " graphs for " +
                          std::to_string(num_envs) + " envs)");
    }

    PolicyParams params = PolicyParams::random_init(cfg.policy_config(), child_seed(cfg.seed, 1));
    PolicyParams grads(cfg.policy_config());
    AdamState adam(params.size());
    Rng shuffle_rng(child_seed(cfg.seed, 3));

    std::vector<Rng> action_rngs;
    action_rngs.reserve(static_cast<std::size_t>(num_envs));
    std::vector<Env> envs;
    envs.reserve(static_cast<std::size_t>(num_envs));
    for (int e = 0; e < num_envs; ++e) {
        action_rngs.emplace_back(child_seed(cfg.seed, 2000 + static_cast<std::uint64_t>(e)));
        EnvConfig ecfg;
        ecfg.masking_enabled = cfg.masking_enabled;
        ecfg.seed = child_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(e));
        ecfg.adjacency = cfg.adjacency;
        envs.emplace_back(graphs[static_cast<std::size_t>(graph_of_env[static_cast<std::size_t>(e)])],
                          ecfg);
    }
    VectorEnv venv(std::move(envs));
    std::vector<Observation> obs = venv.reset();

    if (!sinks.checkpoint_path.empty()) save_checkpoint(params, sinks.checkpoint_path);
    std::ofstream csv;
    if (!sinks.csv_path.empty()) {
        csv.open(sinks.csv_path);
        if (!csv) throw ParseError("cannot write '" + sinks.csv_path + "'");
        for (const auto& line : sinks.csv_echo) csv << "# " << line << '\n';
        csv << kTrainCsvHeader << '\n';
        csv.flush();
    }

    constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
    std::vector<Ordering> best(graphs.size(), Ordering{{}, -1});
    std::vector<TrainLogRow> log;
    RolloutBuffer buffer;
    const int rollout_len = cfg.effective_rollout_length();
    std::int64_t steps_done = 0;
    while (steps_done < cfg.total_timesteps) {
        const auto finished =
            collect_rollouts(params, venv, obs, rollout_len, action_rngs, buffer);
        steps_done += static_cast<std::int64_t>(rollout_len) * num_envs;
        compute_gae(buffer, cfg.gamma, cfg.gae_lambda);
        const UpdateStats stats = ppo_update(params, grads, adam, buffer, cfg, shuffle_rng);

        double fill_sum = 0.0;
        for (const auto& [env_idx, ordering] : finished) {
            fill_sum += static_cast<double>(ordering.fill_cost);
            const auto gi = static_cast<std::size_t>(graph_of_env[static_cast<std::size_t>(env_idx)]);
            if (best[gi].perm.empty() || ordering.fill_cost < best[gi].fill_cost) {
                best[gi] = ordering;
                if (sinks.on_best) sinks.on_best(static_cast<int>(gi), ordering);
            }
        }

        TrainLogRow row;
        row.timesteps = steps_done;
        row.mean_fill =
            finished.empty() ? kNan : fill_sum / static_cast<double>(finished.size());
        double best_sum = 0.0;
        bool all_seen = true;
        for (const auto& b : best) {
            if (b.perm.empty()) {
                all_seen = false;
                break;
            }
            best_sum += static_cast<double>(b.fill_cost);
        }
        row.best_fill = all_seen ? best_sum / static_cast<double>(best.size()) : kNan;
        row.policy_loss = stats.policy_loss;
        row.value_loss = stats.value_loss;
        row.entropy = stats.entropy;
        log.push_back(row);

        if (csv.is_open()) write_csv_row(csv, row);
        if (!sinks.checkpoint_path.empty()) save_checkpoint(params, sinks.checkpoint_path);
    }

    return {std::move(params), std::move(best), std::move(log)};
}

}  // namespace refill
