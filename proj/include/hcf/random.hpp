#ifndef HCF_RANDOM_HPP
#define HCF_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace hcf {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of stream `index` under `master`. Streams depend only on the
/// (master, index) pair, never on the order in which they are requested.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index) {
    return Rng{derive_seed(master, index)};
}

/// Draws from CN(0, variance): real and imaginary parts are independent
/// N(0, variance / 2).
class ComplexNormal {
public:
    std::complex<double> operator()(Rng& rng, double variance) {
        const double s = std::sqrt(0.5 * variance);
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {s * re, s * im};
    }

private:
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hcf

#endif  // HCF_RANDOM_HPP
