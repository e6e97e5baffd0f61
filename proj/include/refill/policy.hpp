#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refill/env.hpp"
#include "refill/mat.hpp"
#include "refill/rng.hpp"

namespace refill {

struct PolicyConfig {
    int node_dim = 32;
    std::vector<int> policy_sizes;  // value-head hidden widths; empty = linear head
    AdjacencyMode adjacency = AdjacencyMode::Current;
    int num_features = kNumNodeFeatures;

    void validate() const;  // throws ConfigError
    bool operator==(const PolicyConfig&) const = default;
};

// Two graph-convolution layers with mean aggregation over closed
// neighborhoods, a per-node scalar score head, and a value head reading
// the mean-pooled embedding of the non-eliminated nodes:
//
//   H1 = tanh(avg(X)  W1)        X: n*f   W1: f*d
//   H2 = tanh(avg(H1) W2)                 W2: d*d
//   logit_i = H2_i . s + b                s: d
//   value   = mlp(mean_{i alive} H2_i)    hidden widths = policy_sizes
//
// All tensors live in one flat buffer so the optimizer, the gradient
// clipper, and finite differencing can treat parameters uniformly.
class PolicyParams {
public:
    explicit PolicyParams(PolicyConfig cfg);  // zero-initialized

    // orthogonal-style init, zero biases, deterministic under seed
    static PolicyParams random_init(PolicyConfig cfg, std::uint64_t seed);

    const PolicyConfig& config() const { return cfg_; }
    std::span<double> flat() { return flat_; }
    std::span<const double> flat() const { return flat_; }
    std::size_t size() const { return flat_.size(); }
    void zero();

    MatView w1();
    ConstMatView w1() const;
    MatView w2();
    ConstMatView w2() const;
    std::span<double> score_w();
    std::span<const double> score_w() const;
    double& score_b();
    double score_b() const;

    // value head: layer k maps value_size(k) -> value_size(k+1); the last
    // layer is linear with output width 1, the others take tanh
    int num_value_layers() const { return static_cast<int>(value_sizes_.size()) - 1; }
    int value_size(int k) const { return value_sizes_[static_cast<std::size_t>(k)]; }
    MatView value_w(int k);
    ConstMatView value_w(int k) const;
    std::span<double> value_b(int k);
    std::span<const double> value_b(int k) const;

private:
    PolicyConfig cfg_;
    std::vector<int> value_sizes_;  // [d, policy_sizes..., 1]
    std::size_t off_w2_ = 0, off_score_w_ = 0, off_score_b_ = 0;
    std::vector<std::size_t> off_value_w_, off_value_b_;
    std::vector<double> flat_;
};

struct PolicyOutput {
    std::vector<double> logits;
    std::vector<double> masked_log_probs;  // -inf on masked entries
    double value = 0.0;
};

// intermediates needed by the backward pass
struct ForwardTrace {
    Mat s0, h1, s1, h2;
    std::vector<double> probs;           // 0 on masked entries
    std::vector<int> pooled_rows;        // non-eliminated rows
    std::vector<double> pooled;          // mean of h2 over pooled_rows
    std::vector<std::vector<double>> value_acts;  // activations per layer, [0] = pooled
    double entropy = 0.0;
};

PolicyOutput forward(const PolicyParams& params, const Observation& obs,
                     ForwardTrace* trace = nullptr);

// draw from the masked categorical; returns (action, log prob);
// throws ContractViolationError when everything is masked
std::pair<int, double> sample_action(const PolicyOutput& out, Rng& rng);

// argmax probability, ties to the lowest id
int greedy_action(const PolicyOutput& out);

struct LossCoeffs {
    double clip_epsilon = 0.2;
    double value_coef = 0.5;
    double ent_coef = 0.0;
};

struct SampleTarget {
    int action = 0;
    double old_log_prob = 0.0;
    double advantage = 0.0;
    double value_target = 0.0;
};

struct LossBreakdown {
    double policy = 0.0;
    double value = 0.0;    // unweighted mean squared error
    double entropy = 0.0;  // mean entropy
    double total = 0.0;    // policy + value_coef*value - ent_coef*entropy
};

// Mean clipped-surrogate loss over the batch; writes the exact gradient
// of `total` with respect to every parameter into `grads` (overwriting).
LossBreakdown backward(const PolicyParams& params,
                       std::span<const Observation* const> obs_batch,
                       std::span<const SampleTarget> targets, const LossCoeffs& coeffs,
                       PolicyParams& grads);

void save_checkpoint(const PolicyParams& params, const std::string& path);
PolicyParams load_checkpoint(const std::string& path);

// One full episode driven by the policy (sampled or greedy); the returned
// cost is re-verified against the env's own accounting.
Ordering rollout_ordering(const PolicyParams& params, std::shared_ptr<const Graph> graph,
                          const EnvConfig& cfg, bool greedy, Rng& rng);

}  // namespace refill
