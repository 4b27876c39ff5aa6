#pragma once

#include <cstdint>
#include <random>

namespace fixpoint {

// Deterministic random source. mt19937_64 is fully specified by the
// standard, and the derived draws below avoid std::uniform_int_distribution
// (whose output is implementation-defined), so a seed pins byte-identical
// output everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * (~std::uint64_t{0} / n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    bool coin() { return engine_() & 1u; }

    // True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
    std::mt19937_64 engine_;
};

} // namespace fixpoint
