// Exact vs Monte-Carlo l1 risk of the empirical and threshold estimators on
// an entropy-ball worst case, with the matching bounds.

#include <cstdio>

#include "l1mm/l1mm.hpp"

int main() {
    using namespace l1mm;
    const double H = 1.0, c = 0.5, eta = 1.1;
    const std::int64_t n = 100000;

    const EntropyBallFamily ball = entropy_ball_family_for(H, n, c);
    const Family fam = ball.family;

    const double mle = estimator_risk_exact(ball.family, empirical_rule(), n);
    const double thr = estimator_risk_exact(ball.family, threshold_rule(eta), n);
    const McRiskEstimate mc = mc_risk(fam, empirical_rule(), n, McConfig(20000, 42));

    std::printf("S' = %.0f, delta = %.6g\n", ball.S_prime, ball.delta);
    std::printf("empirical  exact %.6f  mc %.6f [%.6f, %.6f]\n", mle, mc.mean, mc.ci_lo, mc.ci_hi);
    std::printf("threshold  exact %.6f\n", thr);
    std::printf("mle_entropy_lower %.6f  mle_entropy_upper %.6f  threshold_upper %.6f\n",
                mle_entropy_lower(H, static_cast<double>(n), c), mle_entropy_upper(H, static_cast<double>(n), eta).value,
                threshold_upper(H, static_cast<double>(n), eta).value);
    return 0;
}
