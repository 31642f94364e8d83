#pragma once

// Deterministic pseudo-random generation. Uses raw mt19937_64 output so that
// sequences are identical across standard library implementations.

#include <cstdint>
#include <random>
#include <vector>

#include "algmult/scalar.hpp"

namespace algmult {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do v = engine_();
        while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Nonzero integer in [−bound, bound].
    long nonzero(long bound) {
        long v = uniform(1, bound);
        return coin() ? v : -v;
    }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
    }

    std::uint64_t derive_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Small random field element: integers in [−bound, bound], occasionally halves,
/// and (over Q(i)) an imaginary part.
template <class F>
F random_scalar(Rng& rng, long bound) {
    auto part = [&]() {
        Rational v(rng.uniform(-bound, bound));
        if (rng.uniform(0, 4) == 0) v /= Rational(2);
        return v;
    };
    if constexpr (F::is_real_field) {
        return part();
    } else {
        if (rng.coin()) return F(part());
        return F(part(), part());
    }
}

}  // namespace algmult
