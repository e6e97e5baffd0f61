#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "refill/errors.hpp"

namespace refill {

// splitmix64 finalizer; used to derive decorrelated child seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent stream seed for worker `stream` under a common base seed.
inline std::uint64_t child_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_seed(base ^ mix_seed(stream + 1));
}

// Deterministic generator with a platform-independent bit stream.
//
// The core is std::mt19937_64, whose output is pinned by the standard.
// The distribution helpers are hand-rolled because the standard library's
// distribution objects are allowed to differ across implementations; with
// these, a seed produces the same draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform double in [0, 1), 53 random bits
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform integer in [lo, hi], rejection keeps it exactly uniform
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw ConfigError("uniform_int: empty range");
        const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
        const std::uint64_t reject_above = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x = next_u64();
        while (x >= reject_above) x = next_u64();
        return lo + static_cast<std::int64_t>(x % range);
    }

    // uniform index in [0, n)
    int index(int n) { return static_cast<int>(uniform_int(0, n - 1)); }

    // standard normal via Box-Muller; one draw consumes two uniforms
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace refill
