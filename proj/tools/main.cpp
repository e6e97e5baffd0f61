#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "refill/commands.hpp"

namespace {

// Accepts numbers written with digit-group underscores (e.g. 500_000).
const CLI::Validator kStripUnderscores(
    [](std::string& value) {
        value.erase(std::remove(value.begin(), value.end(), '_'), value.end());
        return std::string();
    },
    "INT_WITH_UNDERSCORES");

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-fill elimination orderings for sparse symmetric graphs"};
    app.name("refill");
    app.require_subcommand(1);

    refill::OrderArgs order_args;
    auto* order = app.add_subcommand("order", "Compute an elimination ordering for one graph");
    order->add_option("input", order_args.input, "graph file (edge list or matrix pattern)")
        ->required();
    order->add_option("--method", order_args.method, "mdh | mfillh | random | policy")
        ->capture_default_str();
    order->add_option("--tie", order_args.tie, "tie-break for mdh/mfillh: lowest | random")
        ->capture_default_str();
    order->add_option("--restarts", order_args.restarts, "independent restarts, best kept")
        ->capture_default_str();
    order->add_option("--checkpoint", order_args.checkpoint, "policy checkpoint (method=policy)");
    order
        ->add_option("--samples", order_args.samples,
                     "sampled policy rollouts tried beside the greedy one")
        ->capture_default_str();
    order->add_option("--seed", order_args.seed, "seed for randomized choices")
        ->envname("REFILL_SEED")
        ->capture_default_str();
    order->add_option("--output", order_args.output, "write the ordering to this file");
    order->add_flag("--write_mapping", order_args.write_mapping,
                    "also write <output>.map with 'id label' rows");

    refill::TrainArgs train_args;
    auto* train = app.add_subcommand("train", "Train an ordering policy with masked PPO");
    train
        ->add_option("inputs", train_args.inputs,
                     "training graph files: one shared by all envs, or one per env")
        ->required();
    train->add_option("--output_file", train_args.output_file, "artifact base path")
        ->capture_default_str();
    train
        ->add_option("--total_timesteps", train_args.config.total_timesteps,
                     "environment steps to train for (underscores allowed)")
        ->transform(kStripUnderscores)
        ->capture_default_str();
    train->add_option("--parallel_envs", train_args.config.parallel_envs, "parallel environments")
        ->capture_default_str();
    train->add_option("--learning_rate", train_args.config.learning_rate, "optimizer step size")
        ->capture_default_str();
    train->add_option("--node_dim", train_args.config.node_dim, "GCN hidden feature width")
        ->capture_default_str();
    train
        ->add_option("--policy_sizes", train_args.config.policy_sizes,
                     "value-head hidden widths; empty list = linear head")
        ->expected(0, -1);
    train->add_option("--ent_coef", train_args.config.ent_coef, "entropy bonus coefficient")
        ->capture_default_str();
    train
        ->add_option("--action_masking", train_args.config.masking_enabled,
                     "1 = restrict actions to min-degree/min-fill candidates, 0 = all vertices")
        ->capture_default_str();
    train->add_option("--seed", train_args.config.seed, "master seed")
        ->envname("REFILL_SEED")
        ->capture_default_str();
    train
        ->add_option("--rollout_length", train_args.config.rollout_length,
                     "steps per env per update; 0 = about 2048 split across envs")
        ->capture_default_str();
    train->add_option("--ppo_epochs", train_args.config.ppo_epochs, "optimization passes per update")
        ->capture_default_str();
    train->add_option("--minibatch_size", train_args.config.minibatch_size, "minibatch size")
        ->capture_default_str();
    train->add_option("--gamma", train_args.config.gamma, "discount factor")
        ->capture_default_str();
    train->add_option("--gae_lambda", train_args.config.gae_lambda, "GAE lambda")
        ->capture_default_str();
    train->add_option("--clip_epsilon", train_args.config.clip_epsilon, "PPO clip range")
        ->capture_default_str();
    train->add_option("--value_coef", train_args.config.value_coef, "value loss coefficient")
        ->capture_default_str();
    train->add_option("--max_grad_norm", train_args.config.max_grad_norm, "gradient clip norm")
        ->capture_default_str();

    refill::EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Compare a trained policy against the heuristics");
    eval->add_option("--checkpoint", eval_args.checkpoint, "policy checkpoint")->required();
    eval->add_option("inputs", eval_args.inputs, "instance files")->required();
    eval->add_option("--samples", eval_args.samples, "sampled rollouts per instance")
        ->capture_default_str();
    eval->add_flag("--greedy", eval_args.greedy_only, "greedy rollout only, no sampling");
    eval
        ->add_option("--action_masking", eval_args.masking_enabled,
                     "1 = mask rollouts to heuristic candidates")
        ->capture_default_str();
    eval
        ->add_option("--baseline_restarts", eval_args.baseline_restarts,
                     "random-tie restarts for the MDH/MFillH baselines")
        ->capture_default_str();
    eval->add_option("--seed", eval_args.seed, "seed for sampling and baselines")
        ->envname("REFILL_SEED")
        ->capture_default_str();
    eval->add_option("--output", eval_args.output, "write the CSV report to this file");

    refill::OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "Exact minimum fill-in for a small graph");
    oracle->add_option("input", oracle_args.input, "graph file")->required();
    oracle->add_option("--limit", oracle_args.limit, "largest vertex count accepted")
        ->capture_default_str();
    oracle->add_option("--output", oracle_args.output, "write the ordering to this file");
    oracle->add_flag("--write_mapping", oracle_args.write_mapping,
                     "also write <output>.map with 'id label' rows");

    refill::GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a benchmark instance");
    gen->add_option("--kind", gen_args.kind, "grid | gnp")->capture_default_str();
    gen->add_option("--rows", gen_args.rows, "grid rows");
    gen->add_option("--cols", gen_args.cols, "grid cols");
    gen->add_option("--n", gen_args.n, "gnp vertex count");
    gen->add_option("--p", gen_args.p, "gnp edge probability");
    gen->add_option("--seed", gen_args.seed, "gnp seed")
        ->envname("REFILL_SEED")
        ->capture_default_str();
    gen->add_option("--output", gen_args.output, "file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? refill::kExitOk : refill::kExitUsage;
    }

    if (order->parsed()) return refill::run_order(order_args, std::cout, std::cerr);
    if (train->parsed()) return refill::run_train(train_args, std::cout, std::cerr);
    if (eval->parsed()) return refill::run_eval(eval_args, std::cout, std::cerr);
    if (oracle->parsed()) return refill::run_oracle(oracle_args, std::cout, std::cerr);
    if (gen->parsed()) return refill::run_gen(gen_args, std::cout, std::cerr);
    return refill::kExitUsage;
}
