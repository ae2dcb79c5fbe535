#pragma once

// The empirical distribution and the hard-thresholding estimator, both as
// whole-vector maps and as per-coordinate rules for the exact and
// Monte-Carlo risk engines.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "l1mm/dist_core.hpp"
#include "l1mm/error.hpp"

namespace l1mm {

inline constexpr double kDefaultEta = 1.5;

/// Threshold exponent eta > 1 together with the sample size it is built for.
class ThresholdConfig {
  public:
    ThresholdConfig(double eta, std::int64_t n) : eta_(eta), n_(n) {
        if (!(eta > 1.0) || !std::isfinite(eta)) throw DomainError("threshold exponent eta must exceed 1");
        if (n < 2) throw DomainError("threshold needs n >= 2 (ln n must be positive)");
    }
    explicit ThresholdConfig(std::int64_t n) : ThresholdConfig(kDefaultEta, n) {}

    [[nodiscard]] double eta() const noexcept { return eta_; }
    [[nodiscard]] std::int64_t n() const noexcept { return n_; }

    /// Delta_n = (ln n)^(2 eta) / n.
    [[nodiscard]] double delta_n() const {
        const double ln_n = std::log(static_cast<double>(n_));
        return std::pow(ln_n, 2.0 * eta_) / static_cast<double>(n_);
    }

  private:
    double eta_;
    std::int64_t n_;
};

/// The cutoff e^2 Delta_n. Values above 1 zero every coordinate.
inline double threshold_level(const ThresholdConfig& cfg) {
    return std::exp(2.0) * cfg.delta_n();
}

/// True when the cutoff is at least 1, i.e. the estimator returns zero.
inline bool is_degenerate(const ThresholdConfig& cfg) { return threshold_level(cfg) >= 1.0; }

/// Strict comparison, no tolerance band.
inline bool threshold_keeps(double frequency, double level) noexcept { return frequency > level; }

inline EstimateVector empirical(const CountHistogram& h) {
    const double n = static_cast<double>(h.n());
    std::vector<double> out;
    out.reserve(h.size());
    for (std::int64_t c : h.counts()) out.push_back(static_cast<double>(c) / n);
    return EstimateVector(std::move(out));
}

inline EstimateVector hard_threshold(const CountHistogram& h, const ThresholdConfig& cfg) {
    if (cfg.n() != h.n()) {
        std::ostringstream os;
        os << "threshold built for n=" << cfg.n() << " applied to a sample of size " << h.n();
        throw ConfigError(os.str());
    }
    const double level = threshold_level(cfg);
    const double n = static_cast<double>(h.n());
    std::vector<double> out;
    out.reserve(h.size());
    for (std::int64_t c : h.counts()) {
        const double f = static_cast<double>(c) / n;
        out.push_back(threshold_keeps(f, level) ? f : 0.0);
    }
    return EstimateVector(std::move(out));
}

/// A per-coordinate estimator: the estimate of p_i depends only on X_i and n.
///
/// The rule also receives the true coordinate value so that oracle
/// baselines can be expressed; the real estimators ignore it. `sup` bounds
/// the rule's output from above and is used to certify truncated sums.
struct CoordinatewiseEstimator {
    using Rule = std::function<double(std::int64_t count, std::int64_t n, double p_true)>;

    std::string name;
    Rule rule;
    double sup = 1.0;

    [[nodiscard]] double operator()(std::int64_t count, std::int64_t n, double p_true) const {
        return rule(count, n, p_true);
    }
};

inline CoordinatewiseEstimator empirical_rule() {
    return {"empirical",
            [](std::int64_t k, std::int64_t n, double) { return static_cast<double>(k) / static_cast<double>(n); },
            1.0};
}

/// Hard-thresholding rule for any n >= 2; eta is fixed, the cutoff follows n.
inline CoordinatewiseEstimator threshold_rule(double eta = kDefaultEta) {
    (void)ThresholdConfig(eta, 2);  // validates eta
    return {"threshold",
            [eta](std::int64_t k, std::int64_t n, double) {
                const double level = threshold_level(ThresholdConfig(eta, n));
                const double f = static_cast<double>(k) / static_cast<double>(n);
                return threshold_keeps(f, level) ? f : 0.0;
            },
            1.0};
}

/// Returns the true value regardless of the data; risk zero.
inline CoordinatewiseEstimator oracle_rule() {
    return {"oracle", [](std::int64_t, std::int64_t, double p) { return p; }, 1.0};
}

}  // namespace l1mm
