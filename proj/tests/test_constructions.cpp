#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "l1mm/constructions.hpp"
#include "l1mm/montecarlo.hpp"

using namespace l1mm;

TEST(EntropyBall, Examples) {
    const EntropyBallFamily f = entropy_ball_family(1.0, 0.2);
    EXPECT_NEAR(f.S_prime_real, 12.158005993683075, 1e-12);
    EXPECT_EQ(f.S_prime, 13.0);
    EXPECT_NEAR(f.achieved_entropy, 1.0133922950304952, 1e-14);
    EXPECT_GE(f.entropy_deviation(), 0.0);
    EXPECT_THROW(entropy_ball_family(0.1, 0.9), DomainError);
    EXPECT_THROW(entropy_ball_family(1.0, 1.0), DomainError);
}

TEST(EntropyBall, NearUniformLimit) {
    // delta -> 1 with H = ln 8 tends to uniform over 8 active symbols.
    const EntropyBallFamily f = entropy_ball_family(std::log(8.0), 1.0 - 1e-9);
    EXPECT_EQ(f.S_prime, 8.0);
    EXPECT_NEAR(f.family.atoms()[0].value, 0.125, 1e-9);
}

TEST(EntropyBall, ForSampleSize) {
    const EntropyBallFamily f = entropy_ball_family_for(1.0, 1000, 0.5);
    EXPECT_NEAR(f.delta, 0.072382413650541971, 1e-16);
    EXPECT_NEAR(f.S_prime_real, 27634.384655812558, 1e-7);
    EXPECT_LT(f.delta / f.S_prime, 1e-3);
}

TEST(EntropyBall, GridInvariants) {
    for (double H : {0.5, 1.0, 2.0}) {
        for (std::int64_t n : {1000, 10000, 100000, 1000000, 10000000}) {
            for (double c : {0.3, 0.5, 0.7, 0.9}) {
                // valid regime of the lower bound: n > e^H and n > (1-c)^(-1/(1-c))
                if (std::log(static_cast<double>(n)) <= H) continue;
                if (static_cast<double>(n) <= std::pow(1 - c, -1 / (1 - c))) continue;
                const EntropyBallFamily f = entropy_ball_family_for(H, n, c);
                EXPECT_LE(f.delta, c);
                EXPECT_LT(f.delta / f.S_prime, 1.0 / static_cast<double>(n));
                EXPECT_GE(f.achieved_entropy, H - 1e-12);
                EXPECT_LE(f.entropy_deviation(), f.delta * std::log(f.S_prime / f.S_prime_real) + 1e-12);
                EXPECT_NEAR(f.family.atoms()[0].value * f.family.atoms()[0].multiplicity + f.family.atoms()[1].value,
                            1.0, 1e-15);
            }
        }
    }
}

TEST(EntropyBall, MleRiskAboveLowerBound) {
    for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
        for (double c : {0.3, 0.5, 0.7}) {
            const EntropyBallFamily f = entropy_ball_family_for(1.0, n, c);
            const double risk = estimator_risk_exact(f.family, empirical_rule(), n);
            EXPECT_GE(risk, mle_entropy_lower(1.0, static_cast<double>(n), c)) << n << " " << c;
        }
    }
}

TEST(TwoPoint, Prior) {
    const TwoPointPrior a = two_point_prior(100, 1000);
    EXPECT_NEAR(a.eta_prior, 0.13034286105448596, 1e-16);
    const TwoPointPrior b = two_point_prior(1000, 100);
    EXPECT_EQ(b.eta_prior, 1.0);
    EXPECT_EQ(b.atom_lo(), 0.0);
    EXPECT_DOUBLE_EQ(b.atom_hi(), 2.0 / 1000);
    EXPECT_DOUBLE_EQ(0.5 * (a.atom_lo() + a.atom_hi()), 0.01);
    EXPECT_THROW(two_point_prior(1, 10), DomainError);
}

TEST(TwoPoint, BayesRisk) {
    EXPECT_EQ(bayes_risk_two_point(TwoPointPrior{10, 5, 0.0}), 0.0);
    const TwoPointPrior a = two_point_prior(100, 1000);
    const double expect =
        a.eta_prior * (1.0 - poisson_tv_exact(PoissonPair(10 * (1 - a.eta_prior), 10 * (1 + a.eta_prior))));
    EXPECT_NEAR(bayes_risk_two_point(a), expect, 1e-13);
    for (double S : {2.0, 10.0, 1e3, 1e5}) {
        for (double n : {1.0, 10.0, 1e3, 1e5}) {
            EXPECT_GE(bayes_risk_two_point(two_point_prior(S, n)), two_point_closed_form(S, n)) << S << " " << n;
        }
    }
}

TEST(TwoPoint, AssembledLower) {
    EXPECT_TRUE(thm3_assembled_lower(HighDimParams(3, 10, 0.5)).vacuous);
    const BoundValue big = thm3_assembled_lower(HighDimParams(1e6, 1e4, 0.5));
    EXPECT_FALSE(big.vacuous);
    EXPECT_GT(big.value, 0.9);
    EXPECT_GE(big.value, minimax_lower_hd(HighDimParams(1e6, 1e4, 0.5)).value);
    EXPECT_THROW(thm3_assembled_lower(HighDimParams(2, 10, 0.5)), DomainError);
    // Penalties vanish along a fixed ratio.
    const double first = thm3_assembled_lower(HighDimParams(1e3, 10, 0.5)).value;
    double prev = first;
    for (double S : {1e4, 1e5, 1e6, 1e8}) {
        const double v = thm3_assembled_lower(HighDimParams(S, S / 100, 0.5)).value;
        EXPECT_GE(v, prev);
        prev = v;
    }
    EXPECT_LT(first, prev - 0.1);
    EXPECT_NEAR(prev, bayes_risk_two_point(two_point_prior(1e8, 1.5e6)), 1e-12);
}

TEST(ExpectedDistinct, Examples) {
    const ExpectedDistinct e = expected_distinct(10, 0.5, 20);
    EXPECT_NEAR(e.value, 6.4151407759145777, 1e-14);
    EXPECT_EQ(e.cap, 10.0);
    EXPECT_EQ(expected_distinct(10, 0.5, 0).value, 0.0);
    for (double sp : {1.0, 3.0, 100.0}) {
        for (std::int64_t n : {1, 5, 500}) {
            const ExpectedDistinct d = expected_distinct(sp, 0.3, n);
            EXPECT_LE(d.value, std::min(sp, d.cap) + 1e-12);
        }
    }
}

TEST(EntropyBallBayes, Examples) {
    const CompositePrior cp{0.0, 0.5, 10, 2, 0.0};
    const EntropyBallBayesRisk r = bayes_risk_entropy_ball(cp, 20);
    EXPECT_NEAR(r.exact, 0.17924296120427112, 1e-15);
    EXPECT_EQ(r.relaxed_form, 0.0);
    const EntropyBallBayesRisk z = bayes_risk_entropy_ball(cp, 0);
    EXPECT_EQ(z.exact, 0.5);
    EXPECT_EQ(z.relaxed_form, 0.5);
    EXPECT_DOUBLE_EQ(bayes_risk_entropy_ball_constrained(cp, 20), r.exact);
}

TEST(EntropyBallBayes, AgainstBounds) {
    for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
        for (double c : {0.3, 0.5, 0.7}) {
            const double nd = static_cast<double>(n);
            const double delta = c / std::log(nd);
            const CompositePrior cp = composite_prior(1.0, delta, 1e6);
            const EntropyBallBayesRisk r = bayes_risk_entropy_ball(cp, n);
            EXPECT_GE(r.exact, r.relaxed_form);
            EXPECT_GE(r.relaxed_form, minimax_entropy_lower(1.0, nd, c).value);
            EXPECT_GE(bayes_risk_entropy_ball_constrained(cp, n), simplex_lower(1.0, nd, c).value * (1 - 1e-6));
            EXPECT_NEAR(bayes_risk_entropy_ball_constrained(cp, n) / r.exact, 2.0, 1e-5);
        }
    }
}

TEST(CompositePrior, SamplingUniformOverSubsets) {
    const CompositePrior cp{0.5, 0.3, 1, 2, 0.0};
    int first = 0;
    const int draws = 10000;
    for (int s = 0; s < draws; ++s) {
        const CompositeDraw d = sample_from_composite_prior(cp, rng::derive_seed(17, static_cast<std::uint64_t>(s)));
        ASSERT_EQ(d.active_slots.size(), 1u);
        if (d.active_slots[0] == 0) ++first;
    }
    EXPECT_NEAR(first, 5000, 3 * std::sqrt(2500.0));
}

TEST(CompositePrior, DrawsShareEntropy) {
    const CompositePrior cp = composite_prior(1.0, 0.2, 3);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const CompositeDraw d = sample_from_composite_prior(cp, s);
        EXPECT_EQ(d.active_slots.size(), 13u);
        EXPECT_EQ(d.slot_count, 39u);
        const ProbabilityVector dense = d.to_dense();
        EXPECT_NEAR(entropy(dense), cp.achieved_entropy, 1e-14);
        double sum = 0;
        for (double v : dense.probs()) sum += v;
        EXPECT_NEAR(sum, 1.0, 1e-15);
        EXPECT_EQ(dense.support_size(), 40u);
    }
}

TEST(CompositePrior, DistinctCountMonteCarlo) {
    const CompressedFamily fam({{0.05, 10}, {0.5, 1}});
    const std::int64_t n = 20;
    const int reps = 4000;
    double s = 0, s2 = 0;
    for (int r = 0; r < reps; ++r) {
        const CompressedCounts c = sample_multinomial(fam, n, rng::derive_seed(99, static_cast<std::uint64_t>(r)));
        const auto k = static_cast<double>(c.atoms[0].occupied.size());
        s += k;
        s2 += k * k;
    }
    const double mean = s / reps;
    const double se = std::sqrt((s2 / reps - mean * mean) / (reps - 1));
    EXPECT_NEAR(mean, expected_distinct(10, 0.5, n).value, 4 * se);
}

namespace {

// Brute-force posterior risk for the composite prior after observing the
// first N slots: every size-S' subset of the kS' slots containing them is
// equally likely. The heavy coordinate is the last entry of `a`.
double posterior_risk(const std::vector<double>& a, int S_prime, int k, int N, double delta) {
    const int slots = k * S_prime;
    const double v = delta / S_prime;
    double total = 0;
    int count = 0;
    for (unsigned mask = 0; mask < (1u << slots); ++mask) {
        if (__builtin_popcount(mask) != S_prime) continue;
        if ((mask & ((1u << N) - 1)) != ((1u << N) - 1)) continue;
        double loss = std::fabs(a[slots] - (1 - delta));
        for (int j = 0; j < slots; ++j) loss += std::fabs(a[j] - ((mask >> j) & 1u ? v : 0.0));
        total += loss;
        ++count;
    }
    return total / count;
}

void lattice_min(int S_prime, int k, int N, double delta, bool simplex, double& best) {
    const int slots = k * S_prime;
    const double v = delta / S_prime;
    const std::vector<double> grid = {0.0, 0.5 * v, v, 1.5 * v};
    const std::vector<double> heavy = {1 - delta - v, 1 - delta, 1 - delta + v};
    std::vector<double> a(slots + 1, 0.0);
    best = std::numeric_limits<double>::infinity();
    std::function<void(int)> rec = [&](int j) {
        if (j == slots) {
            if (simplex) {
                double s = 0;
                for (int i = 0; i < slots; ++i) s += a[i];
                a[slots] = 1 - s;
                if (a[slots] < 0) return;
                best = std::min(best, posterior_risk(a, S_prime, k, N, delta));
            } else {
                for (double h : heavy) {
                    a[slots] = h;
                    best = std::min(best, posterior_risk(a, S_prime, k, N, delta));
                }
            }
            return;
        }
        for (double g : grid) {
            a[j] = g;
            rec(j + 1);
        }
    };
    rec(0);
}

}  // namespace

TEST(CompositePrior, PosteriorMinimizerBruteForce) {
    const int k = 2;
    const double delta = 0.3;
    for (int S_prime = 1; S_prime <= 3; ++S_prime) {
        for (int N = 0; N <= S_prime; ++N) {
            const double sp = S_prime;
            double unconstrained = 0, constrained = 0;
            lattice_min(S_prime, k, N, delta, false, unconstrained);
            lattice_min(S_prime, k, N, delta, true, constrained);
            EXPECT_NEAR(unconstrained, (1 - N / sp) * delta, 1e-14) << S_prime << " " << N;
            const double expect = 2.0 * (k - 1) * sp / (k * sp - N) * (1 - N / sp) * delta;
            EXPECT_NEAR(constrained, expect, 1e-14) << S_prime << " " << N;
            EXPECT_GE(constrained, 2.0 * (k - 1) / k * (1 - N / sp) * delta - 1e-14);
        }
    }
}
