#ifndef MARKICA_RNG_HPP
#define MARKICA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace markica {

// Seeded generator whose output is identical on every conforming platform.
// The engine is std::mt19937_64 (its sequence is fixed by the standard);
// the distributions are implemented here because the standard library's
// are not required to be reproducible across implementations.
//   uniform(): top 53 bits of one engine draw, scaled to [0, 1)
//   normal():  Box-Muller, two uniform() draws per variate, no caching
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    // Fisher-Yates with below(); std::shuffle is implementation-defined.
    template <typename It>
    void shuffle(It first, It last) {
        const auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            const auto j = below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace markica

#endif
