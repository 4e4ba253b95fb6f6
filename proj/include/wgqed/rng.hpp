#ifndef WGQED_RNG_HPP
#define WGQED_RNG_HPP

// Seeded draw stream for randomized checks. The generator is pinned to
// std::mt19937_64 (whose output sequence the standard fixes exactly) with
// uniform doubles built as (x >> 11) * 2^-53, so a seed reproduces the same
// draws on every conforming platform.

#include <cstdint>
#include <random>

namespace wgqed {

class DrawStream {
public:
    explicit DrawStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // uniform integer in [0, n); n must be positive (modulo bias is
    // irrelevant at the n used here and keeps the mapping trivial to pin)
    std::uint64_t index(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

} // namespace wgqed

#endif // WGQED_RNG_HPP
