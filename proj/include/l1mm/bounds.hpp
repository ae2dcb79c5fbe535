#pragma once

// Closed-form upper and lower bounds on l1 risks, as plain functions of
// their parameters.
//
// Functions that can leave their meaningful regime return a BoundValue:
// the raw value of the expression plus a `vacuous` flag (negative lower
// bound, non-positive denominator). Nothing is clamped. Validity
// preconditions such as n >= e^H raise DomainError.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "l1mm/error.hpp"

namespace l1mm {

struct BoundValue {
    double value = 0.0;
    bool vacuous = false;
};

/// S, n and zeta in (0,1] for the high-dimensional lower bound.
struct HighDimParams {
    double S;
    double n;
    double zeta;

    HighDimParams(double S_, double n_, double zeta_) : S(S_), n(n_), zeta(zeta_) {
        if (!(S >= 1.0) || !(n > 0.0)) throw DomainError("HighDimParams needs S >= 1, n > 0");
        if (!(zeta > 0.0 && zeta <= 1.0)) throw DomainError("zeta must lie in (0,1]");
    }
};

/// H > 0 (nats), n, c in (0,1), eta > 1 for the entropy-ball bounds.
struct EntropyBallParams {
    double H;
    double n;
    double c;
    double eta;

    EntropyBallParams(double H_, double n_, double c_, double eta_) : H(H_), n(n_), c(c_), eta(eta_) {
        if (!(H > 0.0) || !std::isfinite(H)) throw DomainError("entropy radius H must be positive");
        if (!(n >= 1.0)) throw DomainError("n must be >= 1");
        if (!(c > 0.0 && c < 1.0)) throw DomainError("c must lie in (0,1)");
        if (!(eta > 1.0)) throw DomainError("eta must exceed 1");
    }
};

namespace detail {

inline void require_positive_sn(double S, double n) {
    if (!(S >= 1.0) || !(n >= 1.0)) throw DomainError("bound needs S >= 1 and n >= 1");
}

inline void require_c(double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("c must lie in (0,1)");
}

inline void require_n_at_least_eH(double H, double n) {
    if (!(H > 0.0)) throw DomainError("entropy radius H must be positive");
    if (!(std::log(n) >= H)) {
        std::ostringstream os;
        os << "condition n >= e^H failed (n=" << n << ", e^H=" << std::exp(H) << ")";
        throw DomainError(os.str());
    }
}

}  // namespace detail

/// sqrt((S-1)/n): worst-case risk of the empirical distribution over M_S.
inline double mle_upper_simple(double S, double n) {
    detail::require_positive_sn(S, n);
    return std::sqrt((S - 1.0) / n);
}

/// sqrt(2(S-1)/(pi n)) + 2 S^(1/2) (S-1)^(1/4) / n^(3/4).
inline double mle_upper_tight(double S, double n) {
    detail::require_positive_sn(S, n);
    return std::sqrt(2.0 * (S - 1.0) / (std::numbers::pi * n)) +
           2.0 * std::sqrt(S) * std::pow(S - 1.0, 0.25) / std::pow(n, 0.75);
}

/// Limit of sqrt(n) times the minimax risk for fixed S >= 2.
inline double classical_constant(double S) {
    if (!(S >= 2.0)) throw DomainError("classical_constant needs S >= 2");
    return std::sqrt(2.0 * (S - 1.0) / std::numbers::pi);
}

/// The two leading-term branches of the high-dimensional lower bound at
/// effective ratio m = (1+zeta) n / S.
inline double hd_leading_large_ratio(double ratio) {
    return 0.125 * std::sqrt(std::exp(1.0) / ratio);
}
inline double hd_leading_small_ratio(double ratio) { return std::exp(-2.0 * ratio); }

/// Non-asymptotic minimax lower bound over M_S (coefficient-12 form as
/// stated). Negative values are returned as-is and flagged.
inline BoundValue minimax_lower_hd(const HighDimParams& p) {
    if (!(p.S >= 2.0)) throw DomainError("minimax_lower_hd needs S >= 2");
    const double e = std::exp(1.0);
    const double ratio = (1.0 + p.zeta) * p.n / p.S;
    const double leading = ratio > e / 16.0 ? hd_leading_large_ratio(ratio) : hd_leading_small_ratio(ratio);
    const double ln_s = std::log(p.S);
    const double value = leading - std::exp(-p.zeta * p.zeta * p.n / 24.0) -
                         12.0 * std::exp(-p.zeta * p.zeta * p.S / (32.0 * ln_s * ln_s));
    return {value, value <= 0.0};
}

/// 2H / (ln n - 2 eta ln ln n) + (ln n)^(-eta): MLE over the entropy ball.
inline BoundValue mle_entropy_upper(double H, double n, double eta) {
    if (!(H >= 0.0)) throw DomainError("entropy radius H must be nonnegative");
    if (!(eta > 1.0)) throw DomainError("eta must exceed 1");
    const double ln_n = std::log(n);
    if (!(ln_n > 0.0)) return {std::numeric_limits<double>::infinity(), true};
    const double denom = ln_n - 2.0 * eta * std::log(ln_n);
    const double value = 2.0 * H / denom + std::pow(ln_n, -eta);
    return {value, !(denom > 0.0)};
}

/// 2cH/ln n * (1 - ((1-c) n)^(-1/c))^n, valid for n > max{(1-c)^(-1/(1-c)), e^H}.
inline double mle_entropy_lower(double H, double n, double c) {
    detail::require_c(c);
    if (!(H > 0.0)) throw DomainError("entropy radius H must be positive");
    const double n_min_c = std::pow(1.0 - c, -1.0 / (1.0 - c));
    if (!(n > n_min_c)) {
        std::ostringstream os;
        os << "condition n > (1-c)^(-1/(1-c)) failed (n=" << n << ", bound=" << n_min_c << ")";
        throw DomainError(os.str());
    }
    if (!(std::log(n) > H)) {
        std::ostringstream os;
        os << "condition n > e^H failed (n=" << n << ", e^H=" << std::exp(H) << ")";
        throw DomainError(os.str());
    }
    const double x = std::pow((1.0 - c) * n, -1.0 / c);
    return 2.0 * c * H / std::log(n) * std::exp(n * std::log1p(-x));
}

/// H/(ln n - ln(2e^2) - 2 eta ln ln n) + (ln n)^(-eta) + n^(1 - e^2/4):
/// maximum risk of the hard-thresholding estimator over the entropy ball.
inline BoundValue threshold_upper(double H, double n, double eta) {
    if (!(H >= 0.0)) throw DomainError("entropy radius H must be nonnegative");
    if (!(eta > 1.0)) throw DomainError("eta must exceed 1");
    const double ln_n = std::log(n);
    if (!(ln_n > 0.0)) return {std::numeric_limits<double>::infinity(), true};
    const double e2 = std::exp(2.0);
    const double denom = ln_n - std::log(2.0 * e2) - 2.0 * eta * std::log(ln_n);
    const double value = H / denom + std::pow(ln_n, -eta) + std::pow(n, 1.0 - e2 / 4.0);
    return {value, !(denom > 0.0)};
}

/// cH/ln n * (1 - n^(1-1/c) (1-c)^(-1/c)), for n >= e^H.
inline BoundValue minimax_entropy_lower(double H, double n, double c) {
    detail::require_c(c);
    detail::require_n_at_least_eH(H, n);
    const double value =
        c * H / std::log(n) * (1.0 - std::pow(n, 1.0 - 1.0 / c) * std::pow(1.0 - c, -1.0 / c));
    return {value, value <= 0.0};
}

/// Lower bound for estimators confined to the simplex; exactly twice
/// minimax_entropy_lower.
inline BoundValue simplex_lower(double H, double n, double c) {
    const BoundValue half = minimax_entropy_lower(H, n, c);
    return {2.0 * half.value, half.vacuous};
}

/// min{1 - e^(-x), sqrt(2/e)(sqrt(t+x) - sqrt(t))} >= d_TV(Poi(t), Poi(t+x)).
inline double adell_jodra_tv_bound(double t, double x) {
    if (!(t >= 0.0) || !(x >= 0.0)) throw DomainError("adell_jodra_tv_bound needs t, x >= 0");
    const double first = -std::expm1(-x);
    // sqrt(t+x) - sqrt(t) written without cancellation.
    const double diff = x / (std::sqrt(t + x) + std::sqrt(t));
    const double second = x == 0.0 ? 0.0 : std::sqrt(2.0 / std::exp(1.0)) * diff;
    return std::min(first, second);
}

struct TailBounds {
    double upper;  // bound on P(X >= (1+delta) lambda)
    double lower;  // bound on P(X <= (1-delta) lambda)
};

/// Chernoff bounds for X ~ Poi(lambda) or Binomial(n, lambda/n).
inline TailBounds chernoff_tails(double lambda, double delta) {
    if (!(lambda >= 0.0)) throw DomainError("chernoff_tails needs lambda >= 0");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("chernoff_tails needs 0 < delta < 1");
    const double upper = std::exp(lambda * (delta - (1.0 + delta) * std::log1p(delta)));
    const double lower = std::exp(-delta * delta * lambda / 2.0);
    return {upper, lower};
}

/// 2 exp(-2 t^2 / (n (b-a)^2)), clamped to [0,1].
inline double hoeffding_bound(double n, double range_width, double t) {
    if (!(n > 0.0) || !(range_width > 0.0) || !(t > 0.0)) {
        throw DomainError("hoeffding_bound needs positive n, width and t");
    }
    return std::min(1.0, 2.0 * std::exp(-2.0 * t * t / (n * range_width * range_width)));
}

}  // namespace l1mm
