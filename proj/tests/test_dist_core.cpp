#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "l1mm/dist_core.hpp"

using namespace l1mm;

TEST(ProbabilityVector, AcceptsAndNormalizesSmallDeviation) {
    ProbabilityVector p({0.5, 0.5 + 5e-10});
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-15);
    EXPECT_EQ(p.support_size(), 2u);
}

TEST(ProbabilityVector, RejectsLargeDeviationAndNegatives) {
    EXPECT_THROW(ProbabilityVector({0.5, 0.6}), DomainError);
    EXPECT_THROW(ProbabilityVector({1.2, -0.2}), DomainError);
    EXPECT_THROW(ProbabilityVector(std::vector<double>{}), DomainError);
    EXPECT_THROW(ProbabilityVector({std::nan(""), 1.0}), DomainError);
}

TEST(ProbabilityVector, ZerosCountTowardSupport) {
    ProbabilityVector p({1.0, 0.0, 0.0});
    EXPECT_EQ(p.support_size(), 3u);
}

TEST(CountHistogram, SumMustMatch) {
    CountHistogram h({3, 1}, 4);
    EXPECT_EQ(h.n(), 4);
    EXPECT_THROW(CountHistogram({3, 1}, 5), DomainError);
    EXPECT_THROW(CountHistogram({-1, 2}), DomainError);
}

TEST(CompressedFamily, Invariants) {
    EXPECT_NO_THROW(CompressedFamily({{0.2, 5}}));
    EXPECT_THROW(CompressedFamily({{0.2, 4}}), DomainError);
    EXPECT_THROW(CompressedFamily({{0.5, 1.5}, {0.25, 1}}), DomainError);
    EXPECT_THROW(CompressedFamily({{1.0, 0.0}}), DomainError);
    const auto f = CompressedFamily::from_dense(ProbabilityVector({0.25, 0.5, 0.25}));
    ASSERT_EQ(f.atoms().size(), 2u);
    EXPECT_EQ(f.atoms()[0], (Atom{0.25, 2}));
    EXPECT_EQ(f.atoms()[1], (Atom{0.5, 1}));
}

TEST(Entropy, Examples) {
    EXPECT_NEAR(entropy(ProbabilityVector::uniform(4)), std::log(4.0), 1e-15);
    EXPECT_EQ(entropy(ProbabilityVector({1.0, 0.0, 0.0})), 0.0);
    const CompressedFamily f({{0.2, 5}});
    EXPECT_NEAR(entropy(f), 1.6094379124341003, 1e-15);
    // brute-force expansion
    const ProbabilityVector dense = f.expand();
    double brute = 0.0;
    for (double p : dense.probs()) brute -= p * std::log(p);
    EXPECT_NEAR(entropy(f), brute, 1e-14);
}

TEST(Entropy, UniformIsLogS) {
    for (std::size_t S = 1; S <= 10000; S = S < 20 ? S + 1 : S * 3 / 2) {
        EXPECT_NEAR(entropy(ProbabilityVector::uniform(S)), std::log(static_cast<double>(S)), 1e-12) << S;
        EXPECT_NEAR(entropy(CompressedFamily::uniform(static_cast<double>(S))), std::log(static_cast<double>(S)),
                    1e-12);
    }
}

TEST(Entropy, CompressedMatchesExpansion) {
    const std::vector<CompressedFamily> families = {
        CompressedFamily({{0.1, 3}, {0.7, 1}}),
        CompressedFamily({{0.5 / 1000, 1000}, {0.5, 1}}),
        CompressedFamily({{0.0, 10}, {0.25, 4}}),
        CompressedFamily({{0.072 / 27635, 27635}, {1 - 0.072, 1}}),
    };
    for (const auto& f : families) {
        const ProbabilityVector dense = f.expand();
        double brute = 0.0;
        for (double p : dense.probs()) {
            if (p > 0) brute -= p * std::log(p);
        }
        EXPECT_NEAR(entropy(f), brute, 1e-11);
    }
}

TEST(L1Distance, Examples) {
    EXPECT_DOUBLE_EQ(l1_distance(EstimateVector({1.0, 0.0}), EstimateVector({0.0, 1.0})), 2.0);
    const EstimateVector a({0.3, 0.2, 0.5});
    EXPECT_EQ(l1_distance(a, a), 0.0);
    EXPECT_DOUBLE_EQ(l1_distance(EstimateVector({0.5, 0.5}), EstimateVector({0.75, 0.25})), 0.5);
    EXPECT_THROW(l1_distance(EstimateVector({1.0}), EstimateVector({1.0, 0.0})), DimensionError);
}

namespace {

std::vector<double> random_simplex(std::mt19937_64& g, std::size_t S) {
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> v(S);
    double s = 0;
    for (double& x : v) s += (x = ex(g));
    for (double& x : v) x /= s;
    return v;
}

}  // namespace

TEST(L1Distance, TriangleInequalityAndRange) {
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t S = 1 + g() % 30;
        const ProbabilityVector a(random_simplex(g, S)), b(random_simplex(g, S)), c(random_simplex(g, S));
        const double ab = l1_distance(a, b), bc = l1_distance(b, c), ac = l1_distance(a, c);
        EXPECT_LE(ac, ab + bc + 1e-15);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, 2.0 + 1e-15);
        EXPECT_DOUBLE_EQ(ab, l1_distance(b, a));
    }
}

TEST(ApproxSimplex, Membership) {
    const ApproxSimplexTolerance tol(0.01);
    EXPECT_TRUE(in_approx_simplex(EstimateVector({0.5, 0.5}), tol));
    EXPECT_FALSE(in_approx_simplex(EstimateVector({0.52, 0.5}), tol));
    EXPECT_TRUE(in_approx_simplex(EstimateVector({0.495, 0.5}), tol));
    EXPECT_THROW(ApproxSimplexTolerance(0.0), DomainError);
}
