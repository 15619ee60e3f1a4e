// Predicted-vs-fitted exponent panel: twenty synthesized points whose
// denominators are steered onto 4N with per-scale quality ~ mu_target,
// verified by constrained-best-approximation inversion. Finite-depth
// Diophantine noise makes a uniform bound unattainable; the testable
// statement is |alpha_fit - (1/2 + 1/(2 mu_hat))| <= 0.08 on >= 16 of 20.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rml/diophantine.hpp"
#include "rml/holder.hpp"

using namespace rml;

namespace {

// continued-fraction synthesis: a_{n+1} ~ q_n^(mu-2) keeps every convergent
// at quality ~ mu; when q_n is odd, the next coefficient is steered so that
// 4 | q_{n+1} (consecutive denominators are coprime, so odd steps alternate)
double synth(double mu, int variant) {
    std::int64_t pp = 0, qp = 1, pc = 1, qc = 1 + 2 * (variant % 3);
    while (true) {
        const double target = std::pow(double(qc), mu - 2.0);
        std::int64_t base = std::max<std::int64_t>(1, llround(target) + (variant / 3) % 2);
        std::int64_t a_pick = -1;
        if (qc % 2 == 1) {
            for (std::int64_t d = 0; d < 8 && a_pick < 0; ++d)
                for (const std::int64_t cand : {base + d, base - d}) {
                    if (cand < 1) continue;
                    if ((cand * qc + qp) % 4 == 0) {
                        a_pick = cand;
                        break;
                    }
                }
        }
        if (a_pick < 1) a_pick = base;
        const std::int64_t pn = a_pick * pc + pp, qn = a_pick * qc + qp;
        if (double(qn) > double(1ll << 25) || 1.0 / (double(qc) * double(qn)) < 0x1p-49) break;
        pp = pc, qp = qc, pc = pn, qc = qn;
    }
    // push the value off the exact rational, just above the resolution floor
    const double jitter = 2.2e-15 * (1.0 + double((variant * 13) % 10) / 20.0);
    return double(pc) / double(qc) + jitter;
}

double mu_constrained(double t) {
    const auto recs = constrained_best_approximations(t, 1, 16384);
    double m = 0.0;
    for (const auto& r : recs)
        if (r.q >= 16) m = std::max(m, r.mu_q);
    return m;
}

} // namespace

TEST_CASE("predicted vs fitted exponents over the constrained panel") {
    int within = 0;
    for (int i = 0; i < 20; ++i) {
        const double mu_target = 2.0 + 4.0 * double(i) / 19.0;
        double t = 0.0, mu_hat = 0.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            t = synth(mu_target, i + 20 * attempt);
            mu_hat = mu_constrained(t);
            if (mu_hat >= std::max(2.0, mu_target - 0.7) && mu_hat <= mu_target + 1.1) break;
        }
        REQUIRE(mu_hat >= 2.0);
        const double predicted = 0.5 + 0.5 / mu_hat;
        const auto est = holder_exponent_estimate(0.0, t, 6, 30, 1 << 20);
        const double diff = std::abs(est.alpha_fit - predicted);
        INFO("i=", i, " mu_hat=", mu_hat, " predicted=", predicted,
             " fitted=", est.alpha_fit);
        if (diff <= 0.08) ++within;
    }
    MESSAGE("within 0.08: ", within, " of 20");
    CHECK(within >= 16);
}
