#pragma once

// Worst-case families and priors behind the lower bounds, with exact
// Bayes-risk oracles:
//
//  * the entropy-ball family (delta/S', ..., delta/S', 1 - delta) whose
//    entropy is H;
//  * the product two-point prior on {(1 -+ eta)/S} for the M_S bound;
//  * the composite prior N_{S,H}: S' active slots out of kS' candidates,
//    each active slot at delta/S', plus one heavy coordinate 1 - delta.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "l1mm/bounds.hpp"
#include "l1mm/dist_core.hpp"
#include "l1mm/error.hpp"
#include "l1mm/random.hpp"
#include "l1mm/risk_exact.hpp"

namespace l1mm {

struct EntropyBallFamily {
    double target_entropy;    // H
    double delta;             // mass spread over the active set
    double S_prime_real;      // real root of delta ln S' - delta ln delta - (1-delta) ln(1-delta) = H
    double S_prime;           // ceil(S_prime_real)
    double achieved_entropy;  // entropy after rounding, >= H
    CompressedFamily family;  // {(delta/S', S'), (1 - delta, 1)}

    [[nodiscard]] double entropy_deviation() const { return achieved_entropy - target_entropy; }
};

/// Solves for the active-set size at entropy H, rounds it up and
/// recomputes the entropy of the rounded family.
inline EntropyBallFamily entropy_ball_family(double H, double delta) {
    if (!(H > 0.0) || !std::isfinite(H)) throw DomainError("entropy_ball_family needs H > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("entropy_ball_family needs delta in (0,1)");
    // ln S' = ln delta + H/delta + ((1-delta)/delta) ln(1-delta)
    const double log_sp = std::log(delta) + H / delta + (1.0 - delta) / delta * std::log1p(-delta);
    const double sp_real = std::exp(log_sp);
    if (!(log_sp >= 0.0)) {
        std::ostringstream os;
        os << "infeasible: S' = " << sp_real << " < 1 (delta=" << delta << " too large for H=" << H << ")";
        throw DomainError(os.str());
    }
    if (!std::isfinite(sp_real)) throw DomainError("active-set size overflows double precision");
    const double sp = std::ceil(sp_real);
    CompressedFamily fam({{delta / sp, sp}, {1.0 - delta, 1.0}});
    const double achieved = entropy(fam);
    return {H, delta, sp_real, sp, achieved, std::move(fam)};
}

/// The family used for sample size n at level c: delta = cH / ln n.
inline EntropyBallFamily entropy_ball_family_for(double H, std::int64_t n, double c) {
    if (n < 2) throw DomainError("entropy-ball family needs n >= 2");
    return entropy_ball_family(H, c * H / std::log(static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// Two-point prior

struct TwoPointPrior {
    double S;
    double n;          // real, so that (1+zeta) n can be used directly
    double eta_prior;  // perturbation in [0,1]

    [[nodiscard]] double atom_lo() const { return (1.0 - eta_prior) / S; }
    [[nodiscard]] double atom_hi() const { return (1.0 + eta_prior) / S; }
};

/// eta_prior = min{1, sqrt(eS/n)/4}.
inline TwoPointPrior two_point_prior(double S, double n) {
    if (!(S >= 2.0)) throw DomainError("two_point_prior needs S >= 2");
    if (!(n >= 1.0)) throw DomainError("two_point_prior needs n >= 1");
    const double eta = std::min(1.0, 0.25 * std::sqrt(std::exp(1.0) * S / n));
    return {S, n, eta};
}

/// eta * sum_k min{Poi(n(1-eta)/S)(k), Poi(n(1+eta)/S)(k)}, i.e.
/// eta (1 - d_TV) evaluated with the exact Poisson overlap.
inline double bayes_risk_two_point(const TwoPointPrior& prior) {
    if (prior.eta_prior == 0.0) return 0.0;
    const double lo = prior.n * (1.0 - prior.eta_prior) / prior.S;
    const double hi = prior.n * (1.0 + prior.eta_prior) / prior.S;
    return prior.eta_prior * poisson_overlap(PoissonPair(lo, hi));
}

/// Piecewise closed form the two-point Bayes risk dominates:
/// exp(-2n/S) for n/S <= e/16, sqrt(eS/n)/8 otherwise.
inline double two_point_closed_form(double S, double n) {
    const double ratio = n / S;
    return ratio > std::exp(1.0) / 16.0 ? hd_leading_large_ratio(ratio) : hd_leading_small_ratio(ratio);
}

/// Proof-level assembly of the M_S lower bound: two-point Bayes risk at
/// sample size (1+zeta) n, minus the Poissonization penalty
/// exp(-zeta^2 n / 24), minus 6 times the Hoeffding mass of the prior
/// outside M_S(epsilon) with epsilon = zeta / (4 ln S).
inline BoundValue thm3_assembled_lower(const HighDimParams& p) {
    if (!(p.S >= 3.0)) throw DomainError("assembled lower bound needs S >= 3");
    const TwoPointPrior prior = two_point_prior(p.S, (1.0 + p.zeta) * p.n);
    const double eps = p.zeta / (4.0 * std::log(p.S));
    const double outside = hoeffding_bound(p.S, 2.0 / p.S, eps);
    const double value =
        bayes_risk_two_point(prior) - std::exp(-p.zeta * p.zeta * p.n / 24.0) - 6.0 * outside;
    return {value, value <= 0.0};
}

// ---------------------------------------------------------------------------
// Composite prior over N_{S,H}

struct CompositePrior {
    double H;
    double delta;
    double S_prime;  // active-set size
    double k;        // slots per active coordinate, k >= 2
    double achieved_entropy;

    [[nodiscard]] double slot_count() const { return k * S_prime; }
    [[nodiscard]] double support_size() const { return k * S_prime + 1.0; }
};

inline CompositePrior composite_prior(double H, double delta, double k) {
    if (!(k >= 2.0) || std::floor(k) != k) throw DomainError("composite prior needs integer k >= 2");
    const EntropyBallFamily fam = entropy_ball_family(H, delta);
    return {H, delta, fam.S_prime, k, fam.achieved_entropy};
}

struct ExpectedDistinct {
    double value;  // S'(1 - (1 - delta/S')^n)
    double cap;    // n delta
};

/// Expected number of distinct active symbols seen in n draws.
inline ExpectedDistinct expected_distinct(double S_prime, double delta, std::int64_t n) {
    if (!(S_prime >= 1.0)) throw DomainError("expected_distinct needs S' >= 1");
    if (!(delta >= 0.0) || !(delta / S_prime <= 1.0)) throw DomainError("expected_distinct needs 0 <= delta/S' <= 1");
    if (n < 0) throw DomainError("expected_distinct needs n >= 0");
    const double nd = static_cast<double>(n);
    const double x = delta / S_prime;
    const double v = x == 1.0 ? (n > 0 ? S_prime : 0.0) : -S_prime * std::expm1(nd * std::log1p(-x));
    return {v, nd * delta};
}

struct EntropyBallBayesRisk {
    double exact;       // (1 - E N / S') delta
    double relaxed_form;  // (1 - n delta / S') delta, uses E N <= n delta
};

inline EntropyBallBayesRisk bayes_risk_entropy_ball(const CompositePrior& cp, std::int64_t n) {
    const ExpectedDistinct en = expected_distinct(cp.S_prime, cp.delta, n);
    return {(1.0 - en.value / cp.S_prime) * cp.delta, (1.0 - en.cap / cp.S_prime) * cp.delta};
}

/// Lower bound on the Bayes risk of estimators confined to the simplex:
/// (2(k-1)/k)(1 - E N / S') delta.
inline double bayes_risk_entropy_ball_constrained(const CompositePrior& cp, std::int64_t n) {
    const ExpectedDistinct en = expected_distinct(cp.S_prime, cp.delta, n);
    return 2.0 * (cp.k - 1.0) / cp.k * (1.0 - en.value / cp.S_prime) * cp.delta;
}

/// One member of N_{S,H}: the active slot indices (sorted, in [0, kS'))
/// plus the compressed form of the distribution. The heavy coordinate is
/// the last one, index kS'.
struct CompositeDraw {
    CompressedFamily family;
    std::vector<std::uint64_t> active_slots;
    std::uint64_t slot_count;

    /// Dense vector of length kS' + 1; only for small supports.
    [[nodiscard]] ProbabilityVector to_dense() const {
        if (slot_count > 1'000'000) throw DomainError("composite draw too large to expand");
        const Atom small = family.atoms()[0];
        const Atom heavy = family.atoms()[1];
        std::vector<double> v(slot_count + 1, 0.0);
        for (std::uint64_t s : active_slots) v[s] = small.value;
        v[slot_count] = heavy.value;
        return ProbabilityVector(std::move(v));
    }
};

inline constexpr double kMaxSampledActiveSet = 1e7;

/// Uniform draw from N_{S,H} by Floyd's subset sampling: S' rejection-free
/// steps, no length-kS' array.
inline CompositeDraw sample_from_composite_prior(const CompositePrior& cp, std::uint64_t seed) {
    if (cp.S_prime > kMaxSampledActiveSet) throw DomainError("active set too large to sample explicitly");
    if (cp.slot_count() > 0x1p53) throw DomainError("slot count not exactly representable");
    const auto slots = static_cast<std::uint64_t>(cp.slot_count());
    const auto active = static_cast<std::uint64_t>(cp.S_prime);
    rng::Engine g(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(active * 2);
    for (std::uint64_t j = slots - active; j < slots; ++j) {
        const std::uint64_t t = rng::uniform_below(g, j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> idx(chosen.begin(), chosen.end());
    std::sort(idx.begin(), idx.end());
    CompressedFamily fam({{cp.delta / cp.S_prime, cp.S_prime}, {1.0 - cp.delta, 1.0}});
    return {std::move(fam), std::move(idx), slots};
}

}  // namespace l1mm
