#pragma once

#include <stdexcept>
#include <string>

namespace refill {

// Each failure class gets its own type so tests can assert on the exact
// failure mode and the CLI can map classes to distinct exit codes.

// Vertex id outside [0, n) or otherwise unusable for the requested op.
struct InvalidVertexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Environment action rejected (masked, already eliminated, out of range).
struct InvalidActionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sequence is not a permutation of the vertex set.
struct InvalidPermutationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance exceeds a documented size cap (exact solvers).
struct InstanceTooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation needs at least one non-eliminated vertex.
struct NoVerticesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant was broken by a caller-supplied component
// (bad chooser result, non-finite loss, failed self-check).
struct ContractViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration value, unusable instance, or schema mismatch.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number when known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, long line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_number(line) {}

    long line_number;
};

}  // namespace refill
