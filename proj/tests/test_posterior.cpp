#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fdl/posterior.hpp"

using namespace fdl;

TEST_CASE("posterior from discriminator output") {
    CHECK(DivergenceSpec::supervised(Divergence::sl).posterior_from_d(0.5) == doctest::Approx(1.0));
    CHECK(DivergenceSpec::supervised(Divergence::gan).posterior_from_d(0.25) == doctest::Approx(3.0));
    CHECK(DivergenceSpec::supervised(Divergence::rkl).posterior_from_d(2.0) == doctest::Approx(0.5));
    CHECK(DivergenceSpec::supervised(Divergence::kl).posterior_from_d(1.7) == doctest::Approx(1.7));
    CHECK(DivergenceSpec::supervised(Divergence::hd).posterior_from_d(4.0) == doctest::Approx(0.25));
    CHECK(DivergenceSpec::supervised(Divergence::p).posterior_from_d(0.3) == doctest::Approx(0.3));

    CHECK_THROWS_AS(DivergenceSpec::supervised(Divergence::sl).posterior_from_d(1.5), std::domain_error);
    CHECK_THROWS_AS(DivergenceSpec::supervised(Divergence::kl).posterior_from_d(-0.1), std::domain_error);
}

TEST_CASE("posterior map round trip") {
    const std::vector<double> ps = {0.01, 0.1, 0.5, 1.0, 2.0, 7.5, 40.0};
    for (Divergence d : all_divergences()) {
        const DivergenceSpec spec = DivergenceSpec::supervised(d);
        for (double p : ps)
            CHECK(spec.posterior_from_d(spec.d_from_posterior(p)) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("map classification") {
    CHECK(map_classify(std::vector<double>{0.1, 0.7, 0.2}) == 1);
    CHECK(map_classify(std::vector<double>{0.5, 0.5}) == 0);  // tie -> lowest index
    CHECK(map_classify(std::vector<double>{2.0, 6.0, 2.0}) == 1);
    CHECK_THROWS_AS(map_classify(std::vector<double>{}), std::invalid_argument);

    // Scale invariance and normalisation invariance of the decision.
    const std::vector<double> v = {0.2, 1.4, 0.9, 1.4};
    const int base = map_classify(v);
    std::vector<double> scaled = v;
    for (double& x : scaled) x *= 37.5;
    CHECK(map_classify(scaled) == base);
    PosteriorEstimate est{v, false};
    CHECK(map_classify(normalize(est).values) == base);
}

TEST_CASE("normalize") {
    PosteriorEstimate est{{2.0, 6.0, 2.0}, false};
    const PosteriorEstimate n = normalize(est);
    CHECK(n.normalized);
    CHECK(n.values[1] == doctest::Approx(0.6));
    double s = 0.0;
    for (double v : n.values) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("first-order posterior gap estimate") {
    const DivergenceSpec kl = DivergenceSpec::unsupervised(Divergence::kl, 1.0);

    SUBCASE("zero at the optimum") { CHECK(posterior_gap_estimate(kl, 2.0, 2.0) == 0.0); }

    SUBCASE("kl example: close to the exact difference") {
        // D_opt = 2, D = 1.9: the exact posterior difference is 0.1.
        const double gap = posterior_gap_estimate(kl, 1.9, 2.0);
        CHECK(gap == doctest::Approx(std::log(2.0 / 1.9) * 1.9).epsilon(1e-12));
        CHECK(std::abs(gap - 0.1) < 0.005);  // first-order error only
    }

    SUBCASE("sign matches the displacement for kl") {
        for (double d : {1.2, 1.8, 2.5, 3.0}) {
            const double gap = posterior_gap_estimate(kl, d, 2.0);
            if (d < 2.0) CHECK(gap > 0.0);
            if (d > 2.0) CHECK(gap < 0.0);
        }
    }

    SUBCASE("first-order estimate approaches the exact gap as D -> D_opt") {
        for (Divergence dv : all_divergences()) {
            const DivergenceSpec spec = DivergenceSpec::unsupervised(dv, 2.0);
            const double d_opt = spec.d_from_posterior(1.5);
            for (double eps : {0.02, 0.005}) {
                const double d_cur = d_opt * (1.0 - eps);
                const double exact = spec.posterior_from_d(d_opt) - spec.posterior_from_d(d_cur);
                const double est = posterior_gap_estimate(spec, d_cur, d_opt);
                CHECK(std::abs(est - exact) < 0.2 * std::abs(exact) + 1e-12);
            }
        }
    }

    SUBCASE("domain errors") {
        CHECK_THROWS_AS(posterior_gap_estimate(kl, -1.0, 2.0), std::domain_error);
        const DivergenceSpec sl = DivergenceSpec::supervised(Divergence::sl);
        CHECK_THROWS_AS(posterior_gap_estimate(sl, 0.5, 1.2), std::domain_error);
    }
}
