#pragma once

#include <cstdint>
#include <random>

namespace descomp
{
    /// Seeded generator with a fixed mapping to ranges, so streams agree across standard libraries.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : _engine(seed) {}

        auto next() -> std::uint64_t { return _engine(); }

        /// Uniform in [0, bound); bound must be positive.
        auto below(std::uint64_t bound) -> std::uint64_t
        {
            auto limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
            std::uint64_t x;
            do
                x = _engine();
            while (x >= limit);
            return x % bound;
        }

        /// Uniform in [0, 1).
        auto unit() -> double { return static_cast<double>(_engine() >> 11) * 0x1.0p-53; }

        auto chance(double p) -> bool { return unit() < p; }

    private:
        std::mt19937_64 _engine;
    };
}
