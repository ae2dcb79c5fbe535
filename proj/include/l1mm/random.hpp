#pragma once

// Portable sampling primitives on top of std::mt19937_64. The standard
// distribution classes are implementation-defined, so everything that must
// reproduce across platforms goes through these functions instead.

#include <cmath>
#include <cstdint>
#include <random>

#include "l1mm/numeric.hpp"

namespace l1mm::rng {

using Engine = std::mt19937_64;

/// Seed of stream `index` under `master`: a counter hash, so stream r can
/// be regenerated without touching streams 0..r-1.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return numeric::splitmix64(master ^ numeric::splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Uniform integer on [0, bound), bound >= 1, by rejection (no modulo bias).
inline std::uint64_t uniform_below(Engine& g, std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);  // largest multiple of bound
    std::uint64_t x = g();
    while (x >= limit) x = g();
    return x % bound;
}

/// Binomial(n, p) by inversion from the mode outward: the candidates are
/// visited in order mode, then whichever neighbour has the larger mass,
/// and u ~ U[0,1) is matched against the running cumulative mass.
/// Expected cost O(sqrt(n p (1-p))).
inline std::int64_t binomial(Engine& g, std::int64_t n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    const double q = 1.0 - p;
    const double nd = static_cast<double>(n);
    const auto mode = std::min<std::int64_t>(n, static_cast<std::int64_t>(std::floor((nd + 1.0) * p)));
    const double u = uniform01(g);

    const double pm = numeric::dbinom_raw(static_cast<double>(mode), nd, p, q);
    double cum = pm;
    if (u < cum) return mode;

    const double up_ratio = p / q;
    const double down_ratio = q / p;
    std::int64_t hi = mode;  // last visited above
    std::int64_t lo = mode;  // last visited below
    double p_hi = pm;
    double p_lo = pm;
    double next_hi = hi < n ? p_hi * (nd - static_cast<double>(hi)) / static_cast<double>(hi + 1) * up_ratio : 0.0;
    double next_lo = lo > 0 ? p_lo * static_cast<double>(lo) / (nd - static_cast<double>(lo) + 1.0) * down_ratio : 0.0;
    while (next_hi > 0.0 || next_lo > 0.0) {
        if (next_hi >= next_lo) {
            ++hi;
            p_hi = next_hi;
            cum += p_hi;
            if (u < cum) return hi;
            next_hi = hi < n ? p_hi * (nd - static_cast<double>(hi)) / static_cast<double>(hi + 1) * up_ratio : 0.0;
        } else {
            --lo;
            p_lo = next_lo;
            cum += p_lo;
            if (u < cum) return lo;
            next_lo = lo > 0 ? p_lo * static_cast<double>(lo) / (nd - static_cast<double>(lo) + 1.0) * down_ratio : 0.0;
        }
    }
    // Rounding left u above the accumulated mass; the remainder is < 1e-13.
    return mode;
}

}  // namespace l1mm::rng
