#pragma once
// Counter-free splitmix64 generator. The mixing function is fixed and
// documented so that (seed, stream) -> values is stable across platforms,
// compilers and thread counts: replica i of a run with master seed s always
// draws from Rng(mix_seed(s, i)).

#include <cmath>
#include <cstdint>
#include <utility>

namespace thick {

// splitmix64 finalizer (Stafford mix 13).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Per-replica seed derivation: mix_seed(s, i) = mix64(s ^ mix64(i + phi)).
// Stable contract; do not change without bumping the report schema version.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform on [0,1), 53-bit resolution.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1); never returns an endpoint (safe under log()).
    double next_unit_open() {
        return (double(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    // Uniform on (0,1]; safe as Box-Muller radius input.
    double next_unit_closed_top() {
        return (double(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Exponential(1).
    double next_exp() { return -std::log(next_unit_closed_top()); }

    // One of 0,1,2,3 (top two bits), used for lattice steps.
    unsigned next_dir() { return unsigned(next_u64() >> 62); }

    // Box-Muller pair of independent standard normals.
    std::pair<double, double> next_gauss_pair() {
        const double u1 = next_unit_closed_top();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

  private:
    std::uint64_t state_;
};

} // namespace thick
