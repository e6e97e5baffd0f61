#include "refill/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "refill/errors.hpp"
#include "refill/heuristics.hpp"
#include "refill/rng.hpp"
#include "refill/text.hpp"

namespace refill {

namespace {

int run_guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InstanceTooLargeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const InvalidVertexError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const InvalidActionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const InvalidPermutationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const NoVerticesError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const ContractViolationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnexpected;
    }
}

void verify_fill(const Graph& g, const Ordering& ordering, const std::string& what) {
    if (fill_in_cost(g, ordering.perm) != ordering.fill_cost)
        throw ContractViolationError(what + ": emitted fill failed re-verification");
}

std::string join_labels(std::span<const int> perm, std::span<const std::string> labels) {
    std::string s;
    for (const int v : perm) {
        if (!s.empty()) s += ' ';
        s += labels[static_cast<std::size_t>(v)];
    }
    return s;
}

std::string join_ints(std::span<const int> values) {
    std::string s;
    for (const int v : values) {
        if (!s.empty()) s += ',';
        s += std::to_string(v);
    }
    return s;
}

std::string join_paths(std::span<const std::string> paths) {
    std::string s;
    for (const auto& p : paths) {
        if (!s.empty()) s += ',';
        s += p;
    }
    return s;
}

double gap_fraction(std::int64_t baseline, std::int64_t refill) {
    if (baseline == 0)
        return refill == 0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(baseline - refill) / static_cast<double>(baseline);
}

}  // namespace

double EvalReport::mean_refill() const {
    if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (const auto& r : rows) s += static_cast<double>(r.refill_fill);
    return s / static_cast<double>(rows.size());
}

double EvalReport::mean_mdh() const {
    if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (const auto& r : rows) s += static_cast<double>(r.mdh_fill);
    return s / static_cast<double>(rows.size());
}

double EvalReport::mean_mfillh() const {
    if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (const auto& r : rows) s += static_cast<double>(r.mfillh_fill);
    return s / static_cast<double>(rows.size());
}

int run_order(const OrderArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        if (args.input.empty()) throw ConfigError("order: an input graph file is required");
        if (args.restarts < 1) throw ConfigError("order: --restarts must be >= 1");
        if (args.samples < 0) throw ConfigError("order: --samples must be >= 0");
        if (args.tie != "lowest" && args.tie != "random")
            throw ConfigError("order: --tie must be 'lowest' or 'random'");

        const LoadedGraph lg = load_graph(args.input);
        const Graph& g = lg.graph;

        std::vector<std::string> echo;
        echo.push_back("command=order");
        echo.push_back("input=" + args.input);
        echo.push_back("method=" + args.method);
        echo.push_back("tie=" + args.tie);
        echo.push_back("restarts=" + std::to_string(args.restarts));
        echo.push_back("samples=" + std::to_string(args.samples));
        echo.push_back("seed=" + std::to_string(args.seed));
        if (!args.checkpoint.empty()) echo.push_back("checkpoint=" + args.checkpoint);

        Ordering best{{}, 0};
        if (args.method == "mdh" || args.method == "mfillh") {
            const bool is_mdh = args.method == "mdh";
            if (args.tie == "lowest") {
                if (args.restarts > 1)
                    throw ConfigError(
                        "order: restarts > 1 needs --tie random; lowest-id ties repeat one order");
                best = is_mdh ? mdh_order(g) : mfillh_order(g);
            } else {
                best = is_mdh ? mdh_best_of(g, args.restarts, args.seed)
                              : mfillh_best_of(g, args.restarts, args.seed);
            }
        } else if (args.method == "random") {
            for (int i = 0; i < args.restarts; ++i) {
                Ordering o = random_order(g, child_seed(args.seed, static_cast<std::uint64_t>(i)));
                if (i == 0 || o.fill_cost < best.fill_cost) best = std::move(o);
            }
        } else if (args.method == "policy") {
            if (args.checkpoint.empty())
                throw ConfigError("order: --method policy requires --checkpoint");
            const PolicyParams params = load_checkpoint(args.checkpoint);
            auto gp = std::make_shared<const Graph>(g);
            EnvConfig ecfg;
            ecfg.adjacency = params.config().adjacency;
            Rng greedy_rng(child_seed(args.seed, 0));
            best = rollout_ordering(params, gp, ecfg, /*greedy=*/true, greedy_rng);
            for (int s = 0; s < args.samples; ++s) {
                Rng rng(child_seed(args.seed, 1 + static_cast<std::uint64_t>(s)));
                Ordering o = rollout_ordering(params, gp, ecfg, /*greedy=*/false, rng);
                if (o.fill_cost < best.fill_cost) best = std::move(o);
            }
        } else {
            throw ConfigError("order: unknown method '" + args.method + "'");
        }

        verify_fill(g, best, "order");

        for (const auto& line : echo) out << "# " << line << "\n";
        out << "# instance=" << lg.name << " vertices=" << g.num_vertices()
            << " edges=" << g.num_edges() << "\n";
        out << "fill=" << best.fill_cost << "\n";
        out << "order=" << join_labels(best.perm, lg.labels) << "\n";

        if (!args.output.empty()) {
            write_ordering_file(args.output, best, lg.labels, echo);
            if (args.write_mapping) write_label_mapping(args.output + ".map", lg.labels);
        }
        return kExitOk;
    });
}

namespace {

std::vector<std::string> train_echo_lines(const TrainArgs& args) {
    const TrainConfig& cfg = args.config;
    std::vector<std::string> echo;
    echo.push_back("command=train");
    echo.push_back("inputs=" + join_paths(args.inputs));
    echo.push_back("output_file=" + args.output_file);
    echo.push_back("total_timesteps=" + std::to_string(cfg.total_timesteps));
    echo.push_back("parallel_envs=" + std::to_string(cfg.parallel_envs));
    echo.push_back("learning_rate=" + format_double(cfg.learning_rate));
    echo.push_back("node_dim=" + std::to_string(cfg.node_dim));
    echo.push_back("policy_sizes=" + join_ints(cfg.policy_sizes));
    echo.push_back("ent_coef=" + format_double(cfg.ent_coef));
    echo.push_back(std::string("action_masking=") + (cfg.masking_enabled ? "1" : "0"));
    echo.push_back(std::string("adjacency=") +
                   (cfg.adjacency == AdjacencyMode::Original ? "original" : "current"));
    echo.push_back("seed=" + std::to_string(cfg.seed));
    echo.push_back("rollout_length=" + std::to_string(cfg.rollout_length));
    echo.push_back("effective_rollout_length=" + std::to_string(cfg.effective_rollout_length()));
    echo.push_back("ppo_epochs=" + std::to_string(cfg.ppo_epochs));
    echo.push_back("minibatch_size=" + std::to_string(cfg.minibatch_size));
    echo.push_back("gamma=" + format_double(cfg.gamma));
    echo.push_back("gae_lambda=" + format_double(cfg.gae_lambda));
    echo.push_back("clip_epsilon=" + format_double(cfg.clip_epsilon));
    echo.push_back("value_coef=" + format_double(cfg.value_coef));
    echo.push_back("max_grad_norm=" + format_double(cfg.max_grad_norm));
    return echo;
}

}  // namespace

int run_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        if (args.inputs.empty()) throw ConfigError("train: at least one input graph is required");
        if (args.output_file.empty()) throw ConfigError("train: --output_file must not be empty");

        std::vector<LoadedGraph> loaded;
        std::vector<std::shared_ptr<const Graph>> graphs;
        loaded.reserve(args.inputs.size());
        graphs.reserve(args.inputs.size());
        for (const auto& path : args.inputs) {
            loaded.push_back(load_graph(path));
            graphs.push_back(std::make_shared<const Graph>(loaded.back().graph));
        }

        const std::vector<std::string> echo = train_echo_lines(args);
        const bool single = args.inputs.size() == 1;
        const auto order_path = [&](int gi) {
            return single ? args.output_file + ".order.txt"
                          : args.output_file + ".g" + std::to_string(gi) + ".order.txt";
        };

        TrainSinks sinks;
        sinks.checkpoint_path = args.output_file + ".ckpt.json";
        sinks.csv_path = args.output_file + ".log.csv";
        sinks.csv_echo = echo;
        sinks.on_best = [&](int gi, const Ordering& ordering) {
            const LoadedGraph& lg = loaded[static_cast<std::size_t>(gi)];
            verify_fill(lg.graph, ordering, "train");
            write_ordering_file(order_path(gi), ordering, lg.labels, echo);
        };

        const TrainResult result = train(graphs, args.config, sinks);

        for (const auto& line : echo) out << "# " << line << "\n";
        for (std::size_t gi = 0; gi < result.best.size(); ++gi) {
            const auto& best = result.best[gi];
            out << "best instance=" << loaded[gi].name;
            if (best.perm.empty())
                out << " fill=none (no episode finished)\n";
            else
                out << " fill=" << best.fill_cost << " ordering=" << order_path(static_cast<int>(gi))
                    << "\n";
        }
        out << "updates=" << result.log.size() << "\n";
        out << "checkpoint=" << sinks.checkpoint_path << "\n";
        out << "log=" << sinks.csv_path << "\n";
        return kExitOk;
    });
}

EvalReport evaluate_instances(const PolicyParams& params, std::span<const LoadedGraph> instances,
                              const EvalOptions& opts) {
    if (opts.samples < 0) throw ConfigError("eval: samples must be >= 0");
    if (opts.baseline_restarts < 1) throw ConfigError("eval: baseline_restarts must be >= 1");

    EnvConfig ecfg;
    ecfg.masking_enabled = opts.masking_enabled;
    ecfg.adjacency = params.config().adjacency;

    EvalReport report;
    report.rows.reserve(instances.size());
    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const LoadedGraph& lg = instances[idx];
        const Graph& g = lg.graph;
        const std::uint64_t base = child_seed(opts.seed, 1 + idx);
        auto gp = std::make_shared<const Graph>(g);

        Rng greedy_rng(child_seed(base, 0));
        Ordering best = rollout_ordering(params, gp, ecfg, /*greedy=*/true, greedy_rng);
        if (!opts.greedy_only) {
            for (int s = 0; s < opts.samples; ++s) {
                Rng rng(child_seed(base, 1 + static_cast<std::uint64_t>(s)));
                Ordering o = rollout_ordering(params, gp, ecfg, /*greedy=*/false, rng);
                if (o.fill_cost < best.fill_cost) best = std::move(o);
            }
        }

        Ordering mdh_best = opts.baseline_restarts == 1
                                ? mdh_order(g)
                                : mdh_best_of(g, opts.baseline_restarts, child_seed(base, 777));
        Ordering mfillh_best =
            opts.baseline_restarts == 1
                ? mfillh_order(g)
                : mfillh_best_of(g, opts.baseline_restarts, child_seed(base, 778));
        const Ordering mdh_low = mdh_order(g);
        const Ordering mfillh_low = mfillh_order(g);
        verify_fill(g, best, "eval");
        verify_fill(g, mdh_best, "eval");
        verify_fill(g, mfillh_best, "eval");
        verify_fill(g, mdh_low, "eval");
        verify_fill(g, mfillh_low, "eval");

        EvalRow row;
        row.name = lg.name;
        row.vertices = g.num_vertices();
        row.edges = g.num_edges();
        row.refill_fill = best.fill_cost;
        row.mdh_fill = mdh_best.fill_cost;
        row.mfillh_fill = mfillh_best.fill_cost;
        row.mdh_fill_lowest_id = mdh_low.fill_cost;
        row.mfillh_fill_lowest_id = mfillh_low.fill_cost;
        row.gap_mdh = gap_fraction(row.mdh_fill, row.refill_fill);
        row.gap_mfillh = gap_fraction(row.mfillh_fill, row.refill_fill);
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

void write_eval_csv(std::ostream& csv, const EvalReport& report,
                    std::span<const std::string> echo) {
    for (const auto& line : echo) csv << "# " << line << "\n";
    csv << kEvalCsvHeader << "\n";
    for (const auto& r : report.rows) {
        csv << r.name << ',' << r.vertices << ',' << r.edges << ',' << r.refill_fill << ','
            << r.mdh_fill << ',' << r.mfillh_fill << ',' << r.mdh_fill_lowest_id << ','
            << r.mfillh_fill_lowest_id << ',' << format_double(r.gap_mdh) << ','
            << format_double(r.gap_mfillh) << "\n";
    }
}

void print_eval_table(std::ostream& out, const EvalReport& report) {
    std::size_t name_width = 8;
    for (const auto& r : report.rows) name_width = std::max(name_width, r.name.size());
    const auto fmt_gap = [](double gap) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", gap);
        return std::string(buf);
    };

    out << std::left << std::setw(static_cast<int>(name_width) + 2) << "instance" << std::right
        << std::setw(6) << "V" << std::setw(8) << "E" << std::setw(8) << "refill" << std::setw(8)
        << "mdh" << std::setw(8) << "mfillh" << std::setw(9) << "mdh_low" << std::setw(11)
        << "mfillh_low" << std::setw(10) << "gap_mdh" << std::setw(11) << "gap_mfillh" << "\n";
    for (const auto& r : report.rows) {
        out << std::left << std::setw(static_cast<int>(name_width) + 2) << r.name << std::right
            << std::setw(6) << r.vertices << std::setw(8) << r.edges << std::setw(8)
            << r.refill_fill << std::setw(8) << r.mdh_fill << std::setw(8) << r.mfillh_fill
            << std::setw(9) << r.mdh_fill_lowest_id << std::setw(11) << r.mfillh_fill_lowest_id
            << std::setw(10) << fmt_gap(r.gap_mdh) << std::setw(11) << fmt_gap(r.gap_mfillh)
            << "\n";
    }
    out << "mean refill_fill=" << format_double(report.mean_refill())
        << " mdh_fill=" << format_double(report.mean_mdh())
        << " mfillh_fill=" << format_double(report.mean_mfillh()) << "\n";
}

}  // namespace

int run_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        if (args.checkpoint.empty()) throw ConfigError("eval: --checkpoint is required");
        if (args.inputs.empty()) throw ConfigError("eval: at least one instance is required");

        const PolicyParams params = load_checkpoint(args.checkpoint);
        std::vector<LoadedGraph> instances;
        instances.reserve(args.inputs.size());
        for (const auto& path : args.inputs) instances.push_back(load_graph(path));

        EvalOptions opts;
        opts.samples = args.samples;
        opts.greedy_only = args.greedy_only;
        opts.masking_enabled = args.masking_enabled;
        opts.baseline_restarts = args.baseline_restarts;
        opts.seed = args.seed;
        const EvalReport report = evaluate_instances(params, instances, opts);

        std::vector<std::string> echo;
        echo.push_back("command=eval");
        echo.push_back("checkpoint=" + args.checkpoint);
        echo.push_back("inputs=" + join_paths(args.inputs));
        echo.push_back("samples=" + std::to_string(args.samples));
        echo.push_back(std::string("greedy_only=") + (args.greedy_only ? "1" : "0"));
        echo.push_back(std::string("action_masking=") + (args.masking_enabled ? "1" : "0"));
        echo.push_back("baseline_restarts=" + std::to_string(args.baseline_restarts));
        echo.push_back("seed=" + std::to_string(args.seed));

        for (const auto& line : echo) out << "# " << line << "\n";
        print_eval_table(out, report);

        if (!args.output.empty()) {
            std::ofstream csv(args.output);
            if (!csv) throw ParseError("cannot write '" + args.output + "'");
            write_eval_csv(csv, report, echo);
            if (!csv) throw ParseError("write failed for '" + args.output + "'");
            out << "csv=" << args.output << "\n";
        } else {
            out << "\n";
            write_eval_csv(out, report, echo);
        }
        return kExitOk;
    });
}

int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        if (args.input.empty()) throw ConfigError("oracle: an input graph file is required");
        const LoadedGraph lg = load_graph(args.input);
        const Ordering best = exact_min_fill(lg.graph, args.limit);
        verify_fill(lg.graph, best, "oracle");

        std::vector<std::string> echo;
        echo.push_back("command=oracle");
        echo.push_back("input=" + args.input);
        echo.push_back("limit=" + std::to_string(args.limit));

        for (const auto& line : echo) out << "# " << line << "\n";
        out << "# instance=" << lg.name << " vertices=" << lg.graph.num_vertices()
            << " edges=" << lg.graph.num_edges() << "\n";
        out << "fill=" << best.fill_cost << "\n";
        out << "order=" << join_labels(best.perm, lg.labels) << "\n";

        if (!args.output.empty()) {
            write_ordering_file(args.output, best, lg.labels, echo);
            if (args.write_mapping) write_label_mapping(args.output + ".map", lg.labels);
        }
        return kExitOk;
    });
}

int run_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&]() -> int {
        if (args.output.empty()) throw ConfigError("gen: --output is required");

        std::vector<std::string> echo;
        echo.push_back("command=gen");
        echo.push_back("kind=" + args.kind);
        Graph g(0);
        if (args.kind == "grid") {
            g = gen_grid(args.rows, args.cols);
            echo.push_back("rows=" + std::to_string(args.rows));
            echo.push_back("cols=" + std::to_string(args.cols));
        } else if (args.kind == "gnp") {
            g = gen_gnp(args.n, args.p, args.seed);
            echo.push_back("n=" + std::to_string(args.n));
            echo.push_back("p=" + format_double(args.p));
            echo.push_back("seed=" + std::to_string(args.seed));
        } else {
            throw ConfigError("gen: unknown kind '" + args.kind + "', expected grid or gnp");
        }

        save_edge_list(g, args.output, {}, echo);
        out << "vertices=" << g.num_vertices() << "\n";
        out << "edges=" << g.num_edges() << "\n";
        out << "output=" << args.output << "\n";
        return kExitOk;
    });
}

}  // namespace refill
