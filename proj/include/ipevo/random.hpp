#pragma once
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ipevo {

using Rng = std::mt19937_64;

// splitmix64 finalizer, used to derive independent stream seeds
std::uint64_t mix64(std::uint64_t x);

// seed for replicate `index` of a named test under a master seed
std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index);
inline Rng make_rng(std::uint64_t master, std::string_view name, std::uint64_t index) {
    return Rng(derive_seed(master, name, index));
}

// open interval (0,1); never returns 0 so logs and negative powers are safe
inline double uniform_open(Rng& rng) {
    constexpr double k = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(rng() >> 11) + 0.5) * k;
}
inline double exponential(Rng& rng) { return -std::log(uniform_open(rng)); }
inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
inline double gamma(Rng& rng, double shape) {
    return std::gamma_distribution<double>(shape, 1.0)(rng);
}
inline std::uint64_t poisson(Rng& rng, double mean) {
    if (mean <= 0) return 0;
    return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

}  // namespace ipevo
