#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace idem {

/// Seedable stream on std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded draws and shuffles are implemented here rather than with
/// the library distributions, which are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r = 0;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

    std::size_t index(std::size_t size) { return static_cast<std::size_t>(below(size)); }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return uniform() < p; }
    bool coin() { return (engine_() >> 63) != 0; }

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace idem
