#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace beecol {

// Draw interface shared by every stochastic operator. Satisfied by RngStream
// and by the scripted stubs the tests inject.
template <typename R>
concept UniformRng = requires(R& r, std::int64_t lo, std::int64_t hi, double a, double b) {
    { r.uniform01() } -> std::convertible_to<double>;
    { r.uniform_int(lo, hi) } -> std::convertible_to<std::int64_t>;
    { r.uniform_real(a, b) } -> std::convertible_to<double>;
};

// Seedable deterministic draw stream. The engine is std::mt19937_64, whose
// output sequence is fully specified by the standard; the mappings below
// avoid std::uniform_*_distribution, whose draw usage is implementation
// defined. Identical seeds therefore produce identical sequences on every
// platform and toolchain.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    // Uniform real in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform real in [lo, hi).
    double uniform_real(double lo, double hi) {
        if (!(lo < hi)) throw std::invalid_argument("uniform_real: lo must be < hi");
        return lo + uniform01() * (hi - lo);
    }

    // Uniform integer in [lo, hi], both ends inclusive. lo == hi consumes no
    // engine output; larger ranges use unbiased rejection sampling.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo must be <= hi");
        if (lo == hi) return lo;
        const std::uint64_t range =
            static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1u;
        if (range == 0)  // full 64-bit span
            return static_cast<std::int64_t>(engine_());
        return lo + static_cast<std::int64_t>(bounded(range));
    }

private:
    // Uniform in [0, range), range >= 2. Rejects the biased tail of the
    // 64-bit word so every residue is equally likely.
    std::uint64_t bounded(std::uint64_t range) {
        const std::uint64_t threshold = (0u - range) % range;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= threshold) return x % range;
        }
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace beecol
