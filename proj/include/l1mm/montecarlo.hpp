#pragma once

// Seeded Monte-Carlo risk estimation. Replicate r draws from its own
// engine seeded with derive_seed(master_seed, r); losses are stored by
// replicate index and reduced in that order, so the estimate does not
// depend on the number of worker threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>
#include <vector>

#include "l1mm/dist_core.hpp"
#include "l1mm/error.hpp"
#include "l1mm/estimators.hpp"
#include "l1mm/numeric.hpp"
#include "l1mm/random.hpp"
#include "l1mm/risk_exact.hpp"

namespace l1mm {

inline constexpr std::int64_t kMinReplicates = 100;

struct McConfig {
    std::int64_t replicates;
    std::uint64_t master_seed;
    double confidence_z = 3.0;
    unsigned threads = 1;

    McConfig(std::int64_t replicates_, std::uint64_t seed, double z = 3.0, unsigned threads_ = 1)
        : replicates(replicates_), master_seed(seed), confidence_z(z), threads(threads_) {
        if (replicates < kMinReplicates) {
            std::ostringstream os;
            os << "at least " << kMinReplicates << " replicates are required, got " << replicates;
            throw ConfigError(os.str());
        }
        if (!(confidence_z > 0.0)) throw ConfigError("confidence_z must be positive");
        if (threads == 0) threads = 1;
    }
};

struct McRiskEstimate {
    double mean;
    double std_error;
    double ci_lo;
    double ci_hi;
    std::int64_t replicates;
    std::uint64_t master_seed;

    [[nodiscard]] bool contains(double x) const { return ci_lo <= x && x <= ci_hi; }
};

/// Counts of one atom block: the block total and the counts of the
/// symbols that were observed (zero-count symbols are implicit).
struct AtomCounts {
    Atom atom;
    std::int64_t block_count = 0;
    std::vector<std::int64_t> occupied;

    [[nodiscard]] double unseen() const { return atom.multiplicity - static_cast<double>(occupied.size()); }
};

struct CompressedCounts {
    std::vector<AtomCounts> atoms;
    std::int64_t n = 0;
};

namespace detail {

// Sequential conditional Binomial over masses: entry i gets
// Binomial(remaining, mass_i / mass_{i..end}), the last positive entry
// takes the remainder.
inline std::vector<std::int64_t> conditional_binomial_split(rng::Engine& g, std::span<const double> mass,
                                                            std::int64_t n) {
    const std::size_t m = mass.size();
    std::vector<double> suffix(m + 1, 0.0);
    {
        numeric::CompensatedSum s;
        for (std::size_t i = m; i-- > 0;) {
            s.add(mass[i]);
            suffix[i] = s.value();
        }
    }
    std::size_t last = m;
    for (std::size_t i = m; i-- > 0;) {
        if (mass[i] > 0.0) {
            last = i;
            break;
        }
    }
    std::vector<std::int64_t> out(m, 0);
    std::int64_t remaining = n;
    for (std::size_t i = 0; i < m && remaining > 0; ++i) {
        if (mass[i] <= 0.0) continue;
        if (i == last) {
            out[i] = remaining;
            break;
        }
        const double p = std::min(1.0, mass[i] / suffix[i]);
        out[i] = rng::binomial(g, remaining, p);
        remaining -= out[i];
    }
    return out;
}

inline CountHistogram sample_dense(rng::Engine& g, const ProbabilityVector& p, std::int64_t n) {
    return CountHistogram(conditional_binomial_split(g, p.probs(), n), n);
}

inline CompressedCounts sample_compressed(rng::Engine& g, const CompressedFamily& f, std::int64_t n) {
    const auto atoms = f.atoms();
    std::vector<double> mass;
    mass.reserve(atoms.size());
    for (const Atom& a : atoms) mass.push_back(a.value * a.multiplicity);
    const std::vector<std::int64_t> blocks = conditional_binomial_split(g, mass, n);

    CompressedCounts out;
    out.n = n;
    out.atoms.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        AtomCounts ac{atoms[i], blocks[i], {}};
        // Uniform allocation of the block's draws over its symbols: each draw
        // lands on one of the `occupied.size()` seen symbols with probability
        // occupied/M each uniformly, otherwise on a fresh symbol.
        const double M = atoms[i].multiplicity;
        for (std::int64_t b = 0; b < blocks[i]; ++b) {
            const auto occ = static_cast<double>(ac.occupied.size());
            if (occ > 0.0 && rng::uniform01(g) * M < occ) {
                ++ac.occupied[rng::uniform_below(g, ac.occupied.size())];
            } else {
                ac.occupied.push_back(1);
            }
        }
        out.atoms.push_back(std::move(ac));
    }
    return out;
}

inline double loss_dense(const ProbabilityVector& p, const CountHistogram& h, const CoordinatewiseEstimator& f) {
    numeric::CompensatedSum s;
    for (std::size_t i = 0; i < p.support_size(); ++i) s.add(std::fabs(f(h[i], h.n(), p[i]) - p[i]));
    return s.value();
}

inline double loss_compressed(const CompressedCounts& c, const CoordinatewiseEstimator& f) {
    numeric::CompensatedSum s;
    for (const AtomCounts& a : c.atoms) {
        const double v = a.atom.value;
        s.add(a.unseen() * std::fabs(f(0, c.n, v) - v));
        for (std::int64_t k : a.occupied) s.add(std::fabs(f(k, c.n, v) - v));
    }
    return s.value();
}

}  // namespace detail

inline CountHistogram sample_multinomial(const ProbabilityVector& p, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample_multinomial needs n >= 1");
    rng::Engine g(seed);
    return detail::sample_dense(g, p, n);
}

inline CompressedCounts sample_multinomial(const CompressedFamily& f, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample_multinomial needs n >= 1");
    rng::Engine g(seed);
    return detail::sample_compressed(g, f, n);
}

/// l1 loss of one replicate under its own derived seed.
inline double replicate_loss(const Family& family, const CoordinatewiseEstimator& f, std::int64_t n,
                             std::uint64_t master_seed, std::uint64_t replicate) {
    rng::Engine g(rng::derive_seed(master_seed, replicate));
    if (const auto* pv = std::get_if<ProbabilityVector>(&family)) {
        return detail::loss_dense(*pv, detail::sample_dense(g, *pv, n), f);
    }
    return detail::loss_compressed(detail::sample_compressed(g, std::get<CompressedFamily>(family), n), f);
}

inline McRiskEstimate mc_risk(const Family& family, const CoordinatewiseEstimator& f, std::int64_t n,
                              const McConfig& cfg) {
    if (n < 1) throw DomainError("mc_risk needs n >= 1");
    const auto reps = static_cast<std::size_t>(cfg.replicates);
    std::vector<double> losses(reps);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) losses[r] = replicate_loss(family, f, n, cfg.master_seed, r);
    };
    const std::size_t workers = std::min<std::size_t>(cfg.threads, reps);
    if (workers <= 1) {
        run_range(0, reps);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (reps + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk;
            const std::size_t e = std::min(reps, b + chunk);
            if (b < e) pool.emplace_back(run_range, b, e);
        }
    }

    numeric::CompensatedSum total;
    for (double l : losses) total.add(l);
    const double mean = total.value() / static_cast<double>(reps);
    numeric::CompensatedSum sq;
    for (double l : losses) sq.add((l - mean) * (l - mean));
    const double var = sq.value() / static_cast<double>(reps - 1);
    const double se = std::sqrt(var / static_cast<double>(reps));
    return {mean, se, mean - cfg.confidence_z * se, mean + cfg.confidence_z * se, cfg.replicates, cfg.master_seed};
}

enum class RiskMode { exact, mc };

struct SupRiskResult {
    std::size_t index;
    double risk;
};

/// Largest risk over a finite candidate grid; ties go to the lowest index.
inline SupRiskResult sup_risk_scan(std::span<const Family> grid, const CoordinatewiseEstimator& f, std::int64_t n,
                                   RiskMode mode, const std::optional<McConfig>& mc = std::nullopt) {
    if (grid.empty()) throw InputError("sup_risk_scan: empty family grid");
    if (mode == RiskMode::mc && !mc) throw ConfigError("sup_risk_scan: Monte-Carlo mode needs a McConfig");
    SupRiskResult best{0, -1.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = mode == RiskMode::exact ? estimator_risk_exact(grid[i], f, n) : mc_risk(grid[i], f, n, *mc).mean;
        if (r > best.risk) best = {i, r};
    }
    return best;
}

}  // namespace l1mm
