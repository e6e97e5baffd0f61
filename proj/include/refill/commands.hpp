#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "refill/graph_io.hpp"
#include "refill/oracle.hpp"
#include "refill/policy.hpp"
#include "refill/ppo.hpp"

namespace refill {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;  // anything not classified below
inline constexpr int kExitUsage = 2;       // bad flag combination or config
inline constexpr int kExitParse = 3;       // unreadable or malformed input
inline constexpr int kExitContract = 4;    // invalid instance, size cap, broken invariant

struct OrderArgs {
    std::string input;
    std::string method = "mdh";  // mdh | mfillh | random | policy
    std::string tie = "lowest";  // lowest | random; random is required for restarts > 1
    int restarts = 1;
    std::string checkpoint;  // method=policy only
    int samples = 0;         // method=policy: sampled rollouts tried beside the greedy one
    std::uint64_t seed = 0;
    std::string output;        // ordering file; empty = stdout summary only
    bool write_mapping = false;  // also write <output>.map with "id label" rows
};

struct TrainArgs {
    std::vector<std::string> inputs;            // one graph, or one per env
    std::string output_file = "refill_model";   // artifact base path
    TrainConfig config;
};

struct EvalArgs {
    std::string checkpoint;
    std::vector<std::string> inputs;
    int samples = 25;     // stochastic rollouts per instance, beside one greedy
    bool greedy_only = false;
    bool masking_enabled = true;
    int baseline_restarts = 64;
    std::uint64_t seed = 0;
    std::string output;  // CSV path; empty = CSV follows the table on stdout
};

struct OracleArgs {
    std::string input;
    int limit = kOracleDefaultLimit;
    std::string output;  // optional ordering file
    bool write_mapping = false;
};

struct GenArgs {
    std::string kind = "grid";  // grid | gnp
    int rows = 0, cols = 0;     // grid
    int n = 0;                  // gnp
    double p = 0.0;             // gnp
    std::uint64_t seed = 0;     // gnp
    std::string output;
};

// One comparison row; gaps are fractions computed from the best-of-restarts
// baseline columns, 0 when both sides are 0 and NaN when only the baseline
// is 0.
struct EvalRow {
    std::string name;
    int vertices = 0;
    std::int64_t edges = 0;
    std::int64_t refill_fill = 0;
    std::int64_t mdh_fill = 0;
    std::int64_t mfillh_fill = 0;
    std::int64_t mdh_fill_lowest_id = 0;
    std::int64_t mfillh_fill_lowest_id = 0;
    double gap_mdh = 0.0;
    double gap_mfillh = 0.0;
};

struct EvalReport {
    std::vector<EvalRow> rows;

    double mean_refill() const;
    double mean_mdh() const;
    double mean_mfillh() const;
};

inline constexpr const char* kEvalCsvHeader =
    "name,vertices,edges,refill_fill,mdh_fill,mfillh_fill,"
    "mdh_fill_lowest_id,mfillh_fill_lowest_id,gap_mdh,gap_mfillh";

struct EvalOptions {
    int samples = 25;
    bool greedy_only = false;
    bool masking_enabled = true;
    int baseline_restarts = 64;
    std::uint64_t seed = 0;
};

// Policy vs. heuristic baselines on each instance, sequentially in input
// order. Every fill re-verifies against its ordering before it is reported.
EvalReport evaluate_instances(const PolicyParams& params, std::span<const LoadedGraph> instances,
                              const EvalOptions& opts);

// Subcommand drivers: human-readable output on `out`, errors on `err`,
// exceptions mapped to the exit codes above.
int run_order(const OrderArgs& args, std::ostream& out, std::ostream& err);
int run_train(const TrainArgs& args, std::ostream& out, std::ostream& err);
int run_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);
int run_gen(const GenArgs& args, std::ostream& out, std::ostream& err);

}  // namespace refill
