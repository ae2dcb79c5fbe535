#pragma once

// Low-level numerical kernels shared by the exact and Monte-Carlo code:
// compensated summation and saddle-point (Loader) evaluation of the
// Binomial and Poisson probability mass functions in log space.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace l1mm::numeric {

/// Neumaier's variant of Kahan summation. Order of `add` calls is the
/// summation order, so a fixed call order gives bit-stable totals.
class CompensatedSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline constexpr double kLn2Pi = 1.8378770664093454835606594728112;  // ln(2*pi)

/// Error of Stirling's approximation to ln(x!):
///   ln(x!) - ((x + 1/2) ln x - x + ln sqrt(2 pi)).
inline double stirlerr(double x) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (x <= 15.0) {
        // Direct evaluation in extended precision; the cancellation costs at
        // most a few 1e-16 absolute, which is what ends up in the log pmf.
        const long double lx = x;
        if (lx == 0.0L) return 0.0;
        return static_cast<double>(std::lgamma(lx + 1.0L) - (lx + 0.5L) * std::log(lx) + lx -
                                   0.5L * static_cast<long double>(kLn2Pi));
    }
    const double xx = x * x;
    if (x > 500.0) return (s0 - s1 / xx) / x;
    if (x > 80.0) return (s0 - (s1 - s2 / xx) / xx) / x;
    if (x > 35.0) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
    return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

/// Deviance term x ln(x / np) + np - x, accurate when x is close to np.
inline double bd0(double x, double np) {
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / static_cast<double>(2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

/// Binomial(n, p) mass at x, with q = 1 - p passed separately so callers
/// holding an exact complement keep it.
inline double dbinom_raw(double x, double n, double p, double q) {
    if (p == 0.0) return x == 0.0 ? 1.0 : 0.0;
    if (q == 0.0) return x == n ? 1.0 : 0.0;
    if (x == 0.0) {
        if (n == 0.0) return 1.0;
        const double lc = p < 0.1 ? -bd0(n, n * q) - n * p : n * std::log(q);
        return std::exp(lc);
    }
    if (x == n) {
        const double lc = q < 0.1 ? -bd0(n, n * p) - n * q : n * std::log(p);
        return std::exp(lc);
    }
    if (x < 0.0 || x > n) return 0.0;
    const double lc = stirlerr(n) - stirlerr(x) - stirlerr(n - x) - bd0(x, n * p) - bd0(n - x, n * q);
    const double lf = kLn2Pi + std::log(x) + std::log1p(-x / n);
    return std::exp(lc - 0.5 * lf);
}

/// Poisson(lambda) mass at x.
inline double dpois_raw(double x, double lambda) {
    if (lambda == 0.0) return x == 0.0 ? 1.0 : 0.0;
    if (x < 0.0) return 0.0;
    if (x == 0.0) return std::exp(-lambda);
    return std::exp(-stirlerr(x) - bd0(x, lambda)) / std::sqrt(2.0 * std::numbers::pi * x);
}

/// SplitMix64 finalizer; used as the counter hash for seed derivation.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace l1mm::numeric
