#include "refill/policy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "refill/errors.hpp"

namespace refill {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// out = avg(in): row i becomes the mean of row i and its neighbors' rows
// (mean aggregation over closed neighborhoods; isolated rows pass through)
void apply_avg(const Graph& g, ConstMatView in, MatView out) {
    const int n = in.rows, d = in.cols;
    for (int i = 0; i < n; ++i) {
        const auto& nbrs = g.neighbors(i);
        double* oi = out.row(i);
        const double* ii = in.row(i);
        for (int c = 0; c < d; ++c) oi[c] = ii[c];
        for (const int j : nbrs) {
            const double* ij = in.row(j);
            for (int c = 0; c < d; ++c) oi[c] += ij[c];
        }
        const double inv = 1.0 / (1.0 + static_cast<double>(nbrs.size()));
        for (int c = 0; c < d; ++c) oi[c] *= inv;
    }
}

// out = avg(.)^T applied to in: scale each row by its own closed-degree
// inverse, then sum over closed neighborhoods
void apply_avg_transpose(const Graph& g, ConstMatView in, MatView out) {
    const int n = in.rows, d = in.cols;
    Mat scaled(n, d);
    for (int i = 0; i < n; ++i) {
        const double inv = 1.0 / (1.0 + static_cast<double>(g.degree(i)));
        const double* ii = in.row(i);
        double* si = scaled.row(i);
        for (int c = 0; c < d; ++c) si[c] = ii[c] * inv;
    }
    for (int j = 0; j < n; ++j) {
        double* oj = out.row(j);
        const double* sj = scaled.row(j);
        for (int c = 0; c < d; ++c) oj[c] = sj[c];
        for (const int i : g.neighbors(j)) {
            const double* si = scaled.row(i);
            for (int c = 0; c < d; ++c) oj[c] += si[c];
        }
    }
}

void tanh_inplace(Mat& m) {
    for (double& x : m.a) x = std::tanh(x);
}

// Fill `w` with an orthogonal-style matrix scaled by `gain`: random normal
// vectors along the smaller dimension, orthonormalized by modified
// Gram-Schmidt. Biases elsewhere start at zero.
void orthogonal_init(MatView w, double gain, Rng& rng) {
    const int rows = w.rows, cols = w.cols;
    const bool tall = rows >= cols;
    const int nvec = tall ? cols : rows;
    const int len = tall ? rows : cols;
    std::vector<std::vector<double>> basis(static_cast<std::size_t>(nvec));
    for (int i = 0; i < nvec; ++i) {
        auto& v = basis[static_cast<std::size_t>(i)];
        v.resize(static_cast<std::size_t>(len));
        for (;;) {
            for (double& x : v) x = rng.normal();
            for (int j = 0; j < i; ++j) {
                const auto& u = basis[static_cast<std::size_t>(j)];
                double dot = 0.0;
                for (int c = 0; c < len; ++c) dot += v[static_cast<std::size_t>(c)] * u[static_cast<std::size_t>(c)];
                for (int c = 0; c < len; ++c) v[static_cast<std::size_t>(c)] -= dot * u[static_cast<std::size_t>(c)];
            }
            double norm = 0.0;
            for (const double x : v) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (double& x : v) x /= norm;
                break;
            }
            // degenerate draw; retry this vector
        }
    }
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            w(i, j) = gain * (tall ? basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                                   : basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
}

}  // namespace

void PolicyConfig::validate() const {
    if (node_dim < 1) throw ConfigError("policy: node_dim must be >= 1");
    if (num_features != kNumNodeFeatures)
        throw ConfigError("policy: node feature schema is fixed at " +
                          std::to_string(kNumNodeFeatures) + " features");
    for (const int h : policy_sizes)
        if (h < 1) throw ConfigError("policy: value-head widths must be >= 1");
}

PolicyParams::PolicyParams(PolicyConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const auto d = static_cast<std::size_t>(cfg_.node_dim);
    const auto f = static_cast<std::size_t>(cfg_.num_features);

    value_sizes_.push_back(cfg_.node_dim);
    for (const int h : cfg_.policy_sizes) value_sizes_.push_back(h);
    value_sizes_.push_back(1);

    std::size_t off = f * d;  // w1
    off_w2_ = off;
    off += d * d;
    off_score_w_ = off;
    off += d;
    off_score_b_ = off;
    off += 1;
    for (int k = 0; k + 1 < static_cast<int>(value_sizes_.size()); ++k) {
        const auto in = static_cast<std::size_t>(value_sizes_[static_cast<std::size_t>(k)]);
        const auto out = static_cast<std::size_t>(value_sizes_[static_cast<std::size_t>(k) + 1]);
        off_value_w_.push_back(off);
        off += in * out;
        off_value_b_.push_back(off);
        off += out;
    }
    flat_.assign(off, 0.0);
}

PolicyParams PolicyParams::random_init(PolicyConfig cfg, std::uint64_t seed) {
    PolicyParams p(std::move(cfg));
    Rng rng(seed);
    const double hidden_gain = std::sqrt(2.0);
    orthogonal_init(p.w1(), hidden_gain, rng);
    orthogonal_init(p.w2(), hidden_gain, rng);
    // small score head keeps the initial policy near uniform
    {
        auto s = p.score_w();
        MatView view(s.data(), static_cast<int>(s.size()), 1);
        orthogonal_init(view, 0.01, rng);
    }
    const int layers = p.num_value_layers();
    for (int k = 0; k < layers; ++k)
        orthogonal_init(p.value_w(k), k + 1 == layers ? 1.0 : hidden_gain, rng);
    return p;  // biases stay zero
}

void PolicyParams::zero() { std::fill(flat_.begin(), flat_.end(), 0.0); }

MatView PolicyParams::w1() { return {flat_.data(), cfg_.num_features, cfg_.node_dim}; }
ConstMatView PolicyParams::w1() const { return {flat_.data(), cfg_.num_features, cfg_.node_dim}; }
MatView PolicyParams::w2() { return {flat_.data() + off_w2_, cfg_.node_dim, cfg_.node_dim}; }
ConstMatView PolicyParams::w2() const {
    return {flat_.data() + off_w2_, cfg_.node_dim, cfg_.node_dim};
}
std::span<double> PolicyParams::score_w() {
    return {flat_.data() + off_score_w_, static_cast<std::size_t>(cfg_.node_dim)};
}
std::span<const double> PolicyParams::score_w() const {
    return {flat_.data() + off_score_w_, static_cast<std::size_t>(cfg_.node_dim)};
}
double& PolicyParams::score_b() { return flat_[off_score_b_]; }
double PolicyParams::score_b() const { return flat_[off_score_b_]; }

MatView PolicyParams::value_w(int k) {
    return {flat_.data() + off_value_w_[static_cast<std::size_t>(k)],
            value_sizes_[static_cast<std::size_t>(k) + 1], value_sizes_[static_cast<std::size_t>(k)]};
}
ConstMatView PolicyParams::value_w(int k) const {
    return {flat_.data() + off_value_w_[static_cast<std::size_t>(k)],
            value_sizes_[static_cast<std::size_t>(k) + 1], value_sizes_[static_cast<std::size_t>(k)]};
}
std::span<double> PolicyParams::value_b(int k) {
    return {flat_.data() + off_value_b_[static_cast<std::size_t>(k)],
            static_cast<std::size_t>(value_sizes_[static_cast<std::size_t>(k) + 1])};
}
std::span<const double> PolicyParams::value_b(int k) const {
    return {flat_.data() + off_value_b_[static_cast<std::size_t>(k)],
            static_cast<std::size_t>(value_sizes_[static_cast<std::size_t>(k) + 1])};
}

PolicyOutput forward(const PolicyParams& params, const Observation& obs, ForwardTrace* trace) {
    const PolicyConfig& cfg = params.config();
    const int n = obs.num_nodes;
    const int f = cfg.num_features;
    const int d = cfg.node_dim;
    if (n <= 0) throw ConfigError("forward: observation has no nodes");
    if (static_cast<int>(obs.features.size()) != n * f)
        throw ConfigError("forward: feature matrix is " + std::to_string(obs.features.size()) +
                          " values, expected " + std::to_string(n * f));
    if (static_cast<int>(obs.action_mask.size()) != n)
        throw ConfigError("forward: action mask size mismatch");
    if (!obs.adjacency || obs.adjacency->num_vertices() != n)
        throw ConfigError("forward: adjacency does not match observation");

    const Graph& g = *obs.adjacency;
    ForwardTrace local;
    ForwardTrace& tr = trace ? *trace : local;

    const ConstMatView x(obs.features.data(), n, f);
    tr.s0 = Mat(n, f);
    apply_avg(g, x, tr.s0);
    tr.h1 = Mat(n, d);
    mat_mul(tr.s0, params.w1(), tr.h1);
    tanh_inplace(tr.h1);
    tr.s1 = Mat(n, d);
    apply_avg(g, tr.h1, tr.s1);
    tr.h2 = Mat(n, d);
    mat_mul(tr.s1, params.w2(), tr.h2);
    tanh_inplace(tr.h2);

    PolicyOutput out;
    out.logits.resize(static_cast<std::size_t>(n));
    const auto score_w = params.score_w();
    for (int i = 0; i < n; ++i) {
        const double* hi = tr.h2.row(i);
        double z = params.score_b();
        for (int c = 0; c < d; ++c) z += hi[c] * score_w[static_cast<std::size_t>(c)];
        out.logits[static_cast<std::size_t>(i)] = z;
    }

    // masked log-softmax with max subtraction; masked entries stay at
    // probability exactly zero and log prob -inf
    out.masked_log_probs.assign(static_cast<std::size_t>(n), kNegInf);
    tr.probs.assign(static_cast<std::size_t>(n), 0.0);
    double zmax = kNegInf;
    for (int i = 0; i < n; ++i)
        if (obs.action_mask[static_cast<std::size_t>(i)])
            zmax = std::max(zmax, out.logits[static_cast<std::size_t>(i)]);
    if (zmax != kNegInf) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            if (obs.action_mask[static_cast<std::size_t>(i)])
                sum += std::exp(out.logits[static_cast<std::size_t>(i)] - zmax);
        const double lse = zmax + std::log(sum);
        tr.entropy = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!obs.action_mask[static_cast<std::size_t>(i)]) continue;
            const double lp = out.logits[static_cast<std::size_t>(i)] - lse;
            out.masked_log_probs[static_cast<std::size_t>(i)] = lp;
            const double p = std::exp(lp);
            tr.probs[static_cast<std::size_t>(i)] = p;
            if (p > 0.0) tr.entropy -= p * lp;
        }
    } else {
        tr.entropy = 0.0;
    }

    // value head over the mean-pooled live rows
    tr.pooled_rows.clear();
    for (int i = 0; i < n; ++i)
        if (obs.features[static_cast<std::size_t>(i) * f + 2] == 0.0)
            tr.pooled_rows.push_back(i);
    tr.pooled.assign(static_cast<std::size_t>(d), 0.0);
    if (!tr.pooled_rows.empty()) {
        for (const int i : tr.pooled_rows) {
            const double* hi = tr.h2.row(i);
            for (int c = 0; c < d; ++c) tr.pooled[static_cast<std::size_t>(c)] += hi[c];
        }
        const double inv = 1.0 / static_cast<double>(tr.pooled_rows.size());
        for (double& x : tr.pooled) x *= inv;
    }

    tr.value_acts.assign(1, tr.pooled);
    const int layers = params.num_value_layers();
    std::vector<double> act = tr.pooled;
    for (int k = 0; k < layers; ++k) {
        const ConstMatView w = params.value_w(k);
        const auto b = params.value_b(k);
        std::vector<double> next(static_cast<std::size_t>(w.rows));
        for (int o = 0; o < w.rows; ++o) {
            double z = b[static_cast<std::size_t>(o)];
            const double* wo = w.row(o);
            for (int c = 0; c < w.cols; ++c) z += wo[c] * act[static_cast<std::size_t>(c)];
            next[static_cast<std::size_t>(o)] = k + 1 == layers ? z : std::tanh(z);
        }
        act = std::move(next);
        tr.value_acts.push_back(act);
    }
    out.value = act[0];
    return out;
}

std::pair<int, double> sample_action(const PolicyOutput& out, Rng& rng) {
    double total = 0.0;
    for (std::size_t i = 0; i < out.masked_log_probs.size(); ++i)
        if (out.masked_log_probs[i] != kNegInf) total += std::exp(out.masked_log_probs[i]);
    if (total <= 0.0) throw ContractViolationError("sample_action: every action is masked");

    const double u = rng.uniform() * total;
    double acc = 0.0;
    int last_allowed = -1;
    for (std::size_t i = 0; i < out.masked_log_probs.size(); ++i) {
        if (out.masked_log_probs[i] == kNegInf) continue;
        last_allowed = static_cast<int>(i);
        acc += std::exp(out.masked_log_probs[i]);
        if (u < acc) return {last_allowed, out.masked_log_probs[i]};
    }
    return {last_allowed, out.masked_log_probs[static_cast<std::size_t>(last_allowed)]};
}

int greedy_action(const PolicyOutput& out) {
    int best = -1;
    for (std::size_t i = 0; i < out.masked_log_probs.size(); ++i) {
        if (out.masked_log_probs[i] == kNegInf) continue;
        if (best < 0 || out.masked_log_probs[i] > out.masked_log_probs[static_cast<std::size_t>(best)])
            best = static_cast<int>(i);
    }
    if (best < 0) throw ContractViolationError("greedy_action: every action is masked");
    return best;
}

LossBreakdown backward(const PolicyParams& params,
                       std::span<const Observation* const> obs_batch,
                       std::span<const SampleTarget> targets, const LossCoeffs& coeffs,
                       PolicyParams& grads) {
    if (obs_batch.size() != targets.size())
        throw ConfigError("backward: batch size mismatch");
    if (obs_batch.empty()) throw ConfigError("backward: empty batch");
    if (!(grads.config() == params.config()))
        throw ConfigError("backward: gradient buffer has a different config");
    grads.zero();

    const PolicyConfig& cfg = params.config();
    const int d = cfg.node_dim;
    const double inv_batch = 1.0 / static_cast<double>(obs_batch.size());
    LossBreakdown sums;

    for (std::size_t s = 0; s < obs_batch.size(); ++s) {
        const Observation& obs = *obs_batch[s];
        const SampleTarget& t = targets[s];
        const int n = obs.num_nodes;

        ForwardTrace tr;
        const PolicyOutput out = forward(params, obs, &tr);
        if (t.action < 0 || t.action >= n ||
            out.masked_log_probs[static_cast<std::size_t>(t.action)] == kNegInf)
            throw ContractViolationError("backward: stored action is masked in its observation");

        // clipped surrogate; gradient flows only through the unclipped
        // branch, so e.g. advantage > 0 with ratio above 1+eps contributes
        // no policy gradient at all
        const double logp = out.masked_log_probs[static_cast<std::size_t>(t.action)];
        const double ratio = std::exp(logp - t.old_log_prob);
        const double clipped =
            std::clamp(ratio, 1.0 - coeffs.clip_epsilon, 1.0 + coeffs.clip_epsilon);
        const double surr_un = ratio * t.advantage;
        const double surr_cl = clipped * t.advantage;
        const double policy_loss = -std::min(surr_un, surr_cl);
        const double g_logp = surr_un <= surr_cl ? -t.advantage * ratio : 0.0;

        const double verr = out.value - t.value_target;
        const double value_loss = verr * verr;

        sums.policy += policy_loss;
        sums.value += value_loss;
        sums.entropy += tr.entropy;

        // d(batch mean)/d(per-sample term)
        const double scale = inv_batch;

        // logits gradient: policy term and entropy term; masked entries
        // carry probability zero and receive none
        std::vector<double> g_logits(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            if (!obs.action_mask[ii]) continue;  // masked logits are out of the softmax
            const double p = tr.probs[ii];
            double g = -g_logp * p;  // d logp_a / dz_i = [i==a] - p_i
            if (i == t.action) g += g_logp;
            const double lp = out.masked_log_probs[ii];
            if (p > 0.0) g += coeffs.ent_coef * p * (lp + tr.entropy);
            g_logits[ii] = scale * g;
        }

        // value head backward
        const int layers = params.num_value_layers();
        std::vector<double> g_act(1, scale * coeffs.value_coef * 2.0 * verr);
        for (int k = layers - 1; k >= 0; --k) {
            const ConstMatView w = params.value_w(k);
            MatView gw = grads.value_w(k);
            auto gb = grads.value_b(k);
            const auto& a_in = tr.value_acts[static_cast<std::size_t>(k)];
            const auto& a_out = tr.value_acts[static_cast<std::size_t>(k) + 1];
            std::vector<double> g_z(static_cast<std::size_t>(w.rows));
            for (int o = 0; o < w.rows; ++o) {
                double gz = g_act[static_cast<std::size_t>(o)];
                if (k + 1 != layers) {
                    const double y = a_out[static_cast<std::size_t>(o)];
                    gz *= 1.0 - y * y;  // through tanh
                }
                g_z[static_cast<std::size_t>(o)] = gz;
                gb[static_cast<std::size_t>(o)] += gz;
                double* gwo = gw.row(o);
                for (int c = 0; c < w.cols; ++c) gwo[c] += gz * a_in[static_cast<std::size_t>(c)];
            }
            std::vector<double> g_prev(static_cast<std::size_t>(w.cols), 0.0);
            for (int o = 0; o < w.rows; ++o) {
                const double gz = g_z[static_cast<std::size_t>(o)];
                const double* wo = w.row(o);
                for (int c = 0; c < w.cols; ++c) g_prev[static_cast<std::size_t>(c)] += gz * wo[c];
            }
            g_act = std::move(g_prev);
        }
        // g_act is now the gradient at the pooled embedding

        // gradient into h2: score head plus mean pooling
        Mat g_h2(n, d);
        const auto score_w = params.score_w();
        auto g_score_w = grads.score_w();
        for (int i = 0; i < n; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            const double gz = g_logits[ii];
            if (gz != 0.0) {
                grads.score_b() += gz;
                const double* hi = tr.h2.row(i);
                double* ghi = g_h2.row(i);
                for (int c = 0; c < d; ++c) {
                    g_score_w[static_cast<std::size_t>(c)] += gz * hi[c];
                    ghi[c] += gz * score_w[static_cast<std::size_t>(c)];
                }
            }
        }
        if (!tr.pooled_rows.empty()) {
            const double inv_pool = 1.0 / static_cast<double>(tr.pooled_rows.size());
            for (const int i : tr.pooled_rows) {
                double* ghi = g_h2.row(i);
                for (int c = 0; c < d; ++c)
                    ghi[c] += g_act[static_cast<std::size_t>(c)] * inv_pool;
            }
        }

        // layer 2: h2 = tanh(s1 w2)
        Mat g_z2(n, d);
        for (int i = 0; i < n; ++i) {
            const double* h = tr.h2.row(i);
            const double* gh = g_h2.row(i);
            double* gz = g_z2.row(i);
            for (int c = 0; c < d; ++c) gz[c] = gh[c] * (1.0 - h[c] * h[c]);
        }
        mat_mul_tn(tr.s1, g_z2, grads.w2(), /*accumulate=*/true);
        Mat g_s1(n, d);
        mat_mul_nt(g_z2, params.w2(), g_s1);
        Mat g_h1(n, d);
        apply_avg_transpose(*obs.adjacency, g_s1, g_h1);

        // layer 1: h1 = tanh(s0 w1)
        Mat g_z1(n, d);
        for (int i = 0; i < n; ++i) {
            const double* h = tr.h1.row(i);
            const double* gh = g_h1.row(i);
            double* gz = g_z1.row(i);
            for (int c = 0; c < d; ++c) gz[c] = gh[c] * (1.0 - h[c] * h[c]);
        }
        mat_mul_tn(tr.s0, g_z1, grads.w1(), /*accumulate=*/true);
    }

    LossBreakdown mean;
    mean.policy = sums.policy * inv_batch;
    mean.value = sums.value * inv_batch;
    mean.entropy = sums.entropy * inv_batch;
    mean.total = mean.policy + coeffs.value_coef * mean.value - coeffs.ent_coef * mean.entropy;
    return mean;
}

namespace {

const char* adjacency_name(AdjacencyMode mode) {
    return mode == AdjacencyMode::Original ? "original" : "current";
}

AdjacencyMode adjacency_from_name(const std::string& name) {
    if (name == "original") return AdjacencyMode::Original;
    if (name == "current") return AdjacencyMode::Current;
    throw ConfigError("unknown adjacency mode '" + name + "'");
}

constexpr int kCheckpointVersion = 1;

}  // namespace

void save_checkpoint(const PolicyParams& params, const std::string& path) {
    const PolicyConfig& cfg = params.config();
    nlohmann::ordered_json j;
    j["format"] = "refill-policy";
    j["version"] = kCheckpointVersion;
    j["config"] = {{"num_features", cfg.num_features},
                   {"node_dim", cfg.node_dim},
                   {"policy_sizes", cfg.policy_sizes},
                   {"adjacency", adjacency_name(cfg.adjacency)}};

    const auto tensor = [](std::vector<int> shape, std::span<const double> data) {
        nlohmann::ordered_json t;
        t["shape"] = shape;
        t["data"] = std::vector<double>(data.begin(), data.end());
        return t;
    };
    nlohmann::ordered_json tensors;
    {
        const auto w = params.w1();
        tensors["w1"] = tensor({w.rows, w.cols}, {w.a, static_cast<std::size_t>(w.rows) * w.cols});
    }
    {
        const auto w = params.w2();
        tensors["w2"] = tensor({w.rows, w.cols}, {w.a, static_cast<std::size_t>(w.rows) * w.cols});
    }
    tensors["score_w"] = tensor({cfg.node_dim}, params.score_w());
    {
        const double b = params.score_b();
        tensors["score_b"] = tensor({1}, {&b, 1});
    }
    for (int k = 0; k < params.num_value_layers(); ++k) {
        const auto w = params.value_w(k);
        tensors["value_w_" + std::to_string(k)] =
            tensor({w.rows, w.cols}, {w.a, static_cast<std::size_t>(w.rows) * w.cols});
        tensors["value_b_" + std::to_string(k)] =
            tensor({w.rows}, params.value_b(k));
    }
    j["tensors"] = std::move(tensors);

    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out) throw ParseError("write failed for '" + path + "'");
}

PolicyParams load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("checkpoint '" + path + "': " + e.what());
    }

    try {
        if (j.at("format").get<std::string>() != "refill-policy")
            throw ConfigError("checkpoint '" + path + "': unrecognized format tag");
        if (j.at("version").get<int>() != kCheckpointVersion)
            throw ConfigError("checkpoint '" + path + "': unsupported version " +
                              std::to_string(j.at("version").get<int>()));
        const auto& c = j.at("config");
        PolicyConfig cfg;
        cfg.num_features = c.at("num_features").get<int>();
        cfg.node_dim = c.at("node_dim").get<int>();
        cfg.policy_sizes = c.at("policy_sizes").get<std::vector<int>>();
        cfg.adjacency = adjacency_from_name(c.at("adjacency").get<std::string>());
        PolicyParams params(cfg);

        const auto& tensors = j.at("tensors");
        const auto fill = [&](const std::string& name, std::vector<int> shape,
                              std::span<double> dst) {
            const auto& t = tensors.at(name);
            if (t.at("shape").get<std::vector<int>>() != shape)
                throw ConfigError("checkpoint '" + path + "': tensor '" + name +
                                  "' has the wrong shape");
            const auto data = t.at("data").get<std::vector<double>>();
            if (data.size() != dst.size())
                throw ConfigError("checkpoint '" + path + "': tensor '" + name +
                                  "' has the wrong element count");
            std::copy(data.begin(), data.end(), dst.begin());
        };
        {
            auto w = params.w1();
            fill("w1", {w.rows, w.cols}, {w.a, static_cast<std::size_t>(w.rows) * w.cols});
        }
        {
            auto w = params.w2();
            fill("w2", {w.rows, w.cols}, {w.a, static_cast<std::size_t>(w.rows) * w.cols});
        }
        fill("score_w", {cfg.node_dim}, params.score_w());
        {
            double b = 0.0;
            fill("score_b", {1}, {&b, 1});
            params.score_b() = b;
        }
        for (int k = 0; k < params.num_value_layers(); ++k) {
            auto w = params.value_w(k);
            fill("value_w_" + std::to_string(k), {w.rows, w.cols},
                 {w.a, static_cast<std::size_t>(w.rows) * w.cols});
            fill("value_b_" + std::to_string(k), {w.rows}, params.value_b(k));
        }
        return params;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("checkpoint '" + path + "': missing or mistyped field (" + e.what() +
                          ")");
    }
}

Ordering rollout_ordering(const PolicyParams& params, std::shared_ptr<const Graph> graph,
                          const EnvConfig& cfg, bool greedy, Rng& rng) {
    Env env(std::move(graph), cfg);
    Observation obs = env.reset();
    while (!env.state().done()) {
        const PolicyOutput out = forward(params, obs);
        const int action = greedy ? greedy_action(out) : sample_action(out, rng).first;
        StepResult r = env.step(action);
        obs = std::move(r.observation);
    }
    Ordering result{env.state().order_so_far(), env.state().cumulative_fill()};
    if (fill_in_cost(env.graph(), result.perm) != result.fill_cost)
        throw ContractViolationError("rollout_ordering: episode accounting mismatch");
    return result;
}

}  // namespace refill
