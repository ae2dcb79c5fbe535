#pragma once

// Exact risks by enumeration: Binomial mean absolute deviation, the l1 risk
// of any coordinatewise estimator under the Multinomial model (each
// marginal is Binomial), Poisson total variation, and exact tail masses.
//
// Sums start at the mode and walk outward. A side stops once the remaining
// mass is certified negligible by two independent bounds: the geometric
// bound from the monotone pmf ratio (log-concavity) and the Chernoff bound
// exp(-n KL(a/n || p)).

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <variant>
#include <vector>

#include "l1mm/dist_core.hpp"
#include "l1mm/error.hpp"
#include "l1mm/estimators.hpp"
#include "l1mm/numeric.hpp"

namespace l1mm {

struct BinomialSpec {
    std::int64_t n;
    double p;

    BinomialSpec(std::int64_t n_, double p_) : n(n_), p(p_) {
        if (n < 0) throw DomainError("binomial n must be nonnegative");
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial p must lie in [0,1]");
    }
};

struct PoissonPair {
    double lambda_lo;
    double lambda_hi;

    PoissonPair(double lo, double hi) : lambda_lo(lo), lambda_hi(hi) {
        if (!(lo >= 0.0) || !std::isfinite(hi) || !(lo <= hi)) {
            throw DomainError("Poisson pair needs 0 <= lambda_lo <= lambda_hi < inf");
        }
    }
};

/// Remaining contribution below this fraction of the running total is dropped.
inline constexpr double kTruncationRelTol = 0x1p-56;

inline double binomial_pmf(const BinomialSpec& spec, std::int64_t k) {
    if (k < 0 || k > spec.n) {
        std::ostringstream os;
        os << "binomial_pmf: k=" << k << " outside 0.." << spec.n;
        throw DomainError(os.str());
    }
    return numeric::dbinom_raw(static_cast<double>(k), static_cast<double>(spec.n), spec.p, 1.0 - spec.p);
}

inline double poisson_pmf(double lambda, std::int64_t k) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("Poisson mean must be finite and >= 0");
    if (k < 0) throw DomainError("poisson_pmf: k must be >= 0");
    return numeric::dpois_raw(static_cast<double>(k), lambda);
}

namespace detail {

// Bernoulli KL divergence D(a || p), a in [0,1], p in (0,1).
inline double bernoulli_kl(double a, double p, double q) {
    double d = 0.0;
    if (a > 0.0) d += a * std::log(a / p);
    if (a < 1.0) d += (1.0 - a) * std::log((1.0 - a) / q);
    return std::max(0.0, d);
}

// Chernoff bound on P(X >= a) for a > np, or P(X <= a) for a < np.
inline double binomial_chernoff(double n, double p, double q, double a) {
    return std::exp(-n * bernoulli_kl(a / n, p, q));
}

inline std::int64_t binomial_mode(std::int64_t n, double p) {
    const auto m = static_cast<std::int64_t>(std::floor((static_cast<double>(n) + 1.0) * p));
    return std::clamp<std::int64_t>(m, 0, n);
}

// True when `bound` is negligible against the running total.
inline bool negligible(double bound, double total) {
    return bound <= kTruncationRelTol * total || bound < DBL_MIN;
}

}  // namespace detail

/// E|f(X) - p| for X ~ Binomial(n, p): the risk contribution of one
/// coordinate with true value p under the estimator rule f.
inline double coordinate_risk(std::int64_t n, double p, const CoordinatewiseEstimator& f) {
    if (p <= 0.0) return std::fabs(f(0, n, p) - p);
    if (p >= 1.0) return std::fabs(f(n, n, p) - p);
    const double q = 1.0 - p;
    const double nd = static_cast<double>(n);
    const double weight = std::max(f.sup, p);  // bounds |f(k) - p|
    const std::int64_t m = detail::binomial_mode(n, p);

    numeric::CompensatedSum acc;
    auto add_term = [&](std::int64_t k) {
        const double pmf = numeric::dbinom_raw(static_cast<double>(k), nd, p, q);
        acc.add(std::fabs(f(k, n, p) - p) * pmf);
        return pmf;
    };
    add_term(m);

    for (std::int64_t k = m + 1; k <= n; ++k) {
        const double pmf = add_term(k);
        if (k == n) break;
        const double kd = static_cast<double>(k);
        const double r = (nd - kd) * p / ((kd + 1.0) * q);
        const double geometric = r < 1.0 ? weight * pmf * r / (1.0 - r) : weight;
        const double chernoff = weight * detail::binomial_chernoff(nd, p, q, kd + 1.0);
        if (detail::negligible(geometric, acc.value()) && detail::negligible(chernoff, acc.value())) break;
    }
    for (std::int64_t k = m - 1; k >= 0; --k) {
        const double pmf = add_term(k);
        if (k == 0) break;
        const double kd = static_cast<double>(k);
        const double r = kd * q / ((nd - kd + 1.0) * p);
        const double geometric = r < 1.0 ? weight * pmf * r / (1.0 - r) : weight;
        const double chernoff = weight * detail::binomial_chernoff(nd, p, q, kd - 1.0);
        if (detail::negligible(geometric, acc.value()) && detail::negligible(chernoff, acc.value())) break;
    }
    return acc.value();
}

/// E|X/n - p| for X ~ Binomial(n, p).
inline double binomial_mad_exact(const BinomialSpec& spec) {
    if (spec.n == 0) throw DomainError("binomial_mad_exact needs n >= 1");
    return coordinate_risk(spec.n, spec.p, empirical_rule());
}

/// Exact E||f(X) - P||_1 under Multinomial(n; P), one Binomial sum per
/// distinct atom value, scaled by its multiplicity. Atoms are visited in
/// ascending value order so the total does not depend on input order.
inline double estimator_risk_exact(const CompressedFamily& family, const CoordinatewiseEstimator& f,
                                   std::int64_t n) {
    if (n < 1) throw DomainError("estimator_risk_exact needs n >= 1");
    std::vector<Atom> atoms(family.atoms().begin(), family.atoms().end());
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
    numeric::CompensatedSum total;
    for (const Atom& a : atoms) total.add(a.multiplicity * coordinate_risk(n, a.value, f));
    return total.value();
}

inline double estimator_risk_exact(const ProbabilityVector& p, const CoordinatewiseEstimator& f, std::int64_t n) {
    return estimator_risk_exact(CompressedFamily::from_dense(p), f, n);
}

using Family = std::variant<ProbabilityVector, CompressedFamily>;

inline CompressedFamily as_compressed(const Family& f) {
    if (const auto* pv = std::get_if<ProbabilityVector>(&f)) return CompressedFamily::from_dense(*pv);
    return std::get<CompressedFamily>(f);
}

inline double estimator_risk_exact(const Family& family, const CoordinatewiseEstimator& f, std::int64_t n) {
    return std::visit([&](const auto& fam) { return estimator_risk_exact(fam, f, n); }, family);
}

namespace detail {

inline std::int64_t poisson_truncation(double lambda_hi) {
    return static_cast<std::int64_t>(std::ceil(std::max(lambda_hi + 20.0 * std::sqrt(lambda_hi + 1.0), 50.0)));
}

}  // namespace detail

/// d_TV(Poi(lo), Poi(hi)) = 1/2 sum_k |pmf_lo(k) - pmf_hi(k)|.
inline double poisson_tv_exact(const PoissonPair& pair) {
    if (pair.lambda_lo == pair.lambda_hi) return 0.0;
    const std::int64_t top = detail::poisson_truncation(pair.lambda_hi);
    numeric::CompensatedSum s;
    for (std::int64_t k = 0; k <= top; ++k) {
        const double kd = static_cast<double>(k);
        s.add(std::fabs(numeric::dpois_raw(kd, pair.lambda_lo) - numeric::dpois_raw(kd, pair.lambda_hi)));
    }
    return std::clamp(0.5 * s.value(), 0.0, 1.0);
}

/// sum_k min(pmf_lo(k), pmf_hi(k)) = 1 - d_TV, summed directly.
inline double poisson_overlap(const PoissonPair& pair) {
    if (pair.lambda_lo == pair.lambda_hi) return 1.0;
    const std::int64_t top = detail::poisson_truncation(pair.lambda_hi);
    numeric::CompensatedSum s;
    for (std::int64_t k = 0; k <= top; ++k) {
        const double kd = static_cast<double>(k);
        s.add(std::min(numeric::dpois_raw(kd, pair.lambda_lo), numeric::dpois_raw(kd, pair.lambda_hi)));
    }
    return std::clamp(s.value(), 0.0, 1.0);
}

/// P(X >= k), X ~ Binomial(n, p).
inline double binomial_tail_geq(const BinomialSpec& spec, std::int64_t k) {
    if (k <= 0) return 1.0;
    if (k > spec.n) return 0.0;
    const double nd = static_cast<double>(spec.n);
    const double p = spec.p;
    const double q = 1.0 - p;
    if (p == 0.0) return 0.0;
    if (q == 0.0) return 1.0;
    const std::int64_t m = detail::binomial_mode(spec.n, p);
    numeric::CompensatedSum s;
    for (std::int64_t j = k; j <= spec.n; ++j) {
        const double jd = static_cast<double>(j);
        const double pmf = numeric::dbinom_raw(jd, nd, p, q);
        s.add(pmf);
        if (j >= m && j < spec.n) {
            const double r = (nd - jd) * p / ((jd + 1.0) * q);
            if (r < 1.0 && detail::negligible(pmf * r / (1.0 - r), s.value())) break;
        }
    }
    return std::min(1.0, s.value());
}

/// P(X <= k), X ~ Binomial(n, p).
inline double binomial_tail_leq(const BinomialSpec& spec, std::int64_t k) {
    if (k < 0) return 0.0;
    if (k >= spec.n) return 1.0;
    const double nd = static_cast<double>(spec.n);
    const double p = spec.p;
    const double q = 1.0 - p;
    if (p == 0.0) return 1.0;
    if (q == 0.0) return 0.0;
    const std::int64_t m = detail::binomial_mode(spec.n, p);
    numeric::CompensatedSum s;
    for (std::int64_t j = k; j >= 0; --j) {
        const double jd = static_cast<double>(j);
        const double pmf = numeric::dbinom_raw(jd, nd, p, q);
        s.add(pmf);
        if (j <= m && j > 0) {
            const double r = jd * q / ((nd - jd + 1.0) * p);
            if (r < 1.0 && detail::negligible(pmf * r / (1.0 - r), s.value())) break;
        }
    }
    return std::min(1.0, s.value());
}

/// P(X >= k), X ~ Poisson(lambda).
inline double poisson_tail_geq(double lambda, std::int64_t k) {
    if (k <= 0) return 1.0;
    if (lambda == 0.0) return 0.0;
    numeric::CompensatedSum s;
    for (std::int64_t j = k;; ++j) {
        const double jd = static_cast<double>(j);
        const double pmf = numeric::dpois_raw(jd, lambda);
        s.add(pmf);
        const double r = lambda / (jd + 1.0);
        if (r < 1.0 && detail::negligible(pmf * r / (1.0 - r), s.value())) break;
    }
    return std::min(1.0, s.value());
}

/// P(X <= k), X ~ Poisson(lambda).
inline double poisson_tail_leq(double lambda, std::int64_t k) {
    if (k < 0) return 0.0;
    if (lambda == 0.0) return 1.0;
    numeric::CompensatedSum s;
    for (std::int64_t j = k; j >= 0; --j) {
        const double jd = static_cast<double>(j);
        const double pmf = numeric::dpois_raw(jd, lambda);
        s.add(pmf);
        if (j > 0) {
            const double r = jd / lambda;
            if (r < 1.0 && detail::negligible(pmf * r / (1.0 - r), s.value())) break;
        }
    }
    return std::min(1.0, s.value());
}

}  // namespace l1mm
