#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "fdl/divergence.hpp"

using namespace fdl;

namespace {

const double kLog2 = std::log(2.0);

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// Conjugate-argument ranges used by the property checks.
std::pair<double, double> valid_t_range(Divergence d) {
    switch (d) {
        case Divergence::kl: return {-3.0, 4.0};
        case Divergence::rkl: return {-10.0, -0.1};
        case Divergence::hd: return {-5.0, 0.9};
        case Divergence::gan: return {-5.0, -0.05};
        case Divergence::p: return {-1.8, 10.0};
        case Divergence::sl: return {-0.95, -0.05};
    }
    return {0.0, 1.0};
}

std::vector<DivergenceSpec> both_modes(Divergence d) {
    return {DivergenceSpec::supervised(d), DivergenceSpec::unsupervised(d, 4.0)};
}

}  // namespace

TEST_CASE("names round-trip") {
    for (Divergence d : all_divergences()) CHECK(divergence_from_name(divergence_name(d)) == d);
    CHECK_THROWS_AS(divergence_from_name("js"), std::invalid_argument);
}

TEST_CASE("generator satisfies f(1) = 0 exactly") {
    for (Divergence d : all_divergences()) {
        CHECK(DivergenceSpec::supervised(d).f(1.0) == 0.0);
        CHECK(DivergenceSpec::unsupervised(d, 3.5).f(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("generator frozen values") {
    const DivergenceSpec sl = DivergenceSpec::supervised(Divergence::sl);
    CHECK(sl.f(1e-12) == doctest::Approx(kLog2).epsilon(1e-9));  // u -> 0 limit is log 2
    const DivergenceSpec kl = DivergenceSpec::supervised(Divergence::kl);
    CHECK(kl.f(std::exp(1.0)) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(kl.f(0.0), std::domain_error);
    CHECK_THROWS_AS(kl.f(-1.0), std::domain_error);
}

TEST_CASE("conjugate frozen values and domains") {
    CHECK(DivergenceSpec::supervised(Divergence::kl).f_star(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(DivergenceSpec::supervised(Divergence::hd).f_star(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    // Exact conjugate of the normalised shifted-log generator at tx = 4:
    // value 4 log(4/5), cross-checked against the grid supremum below.
    const DivergenceSpec sl4 = DivergenceSpec::unsupervised(Divergence::sl, 4.0);
    CHECK(sl4.f_star(-1.0) == doctest::Approx(4.0 * std::log(0.8)).epsilon(1e-12));
    CHECK(brute_force_conjugate(sl4, -1.0) == doctest::Approx(sl4.f_star(-1.0)).epsilon(1e-6));

    CHECK_THROWS_AS(DivergenceSpec::supervised(Divergence::rkl).f_star(0.1), std::domain_error);
    CHECK_THROWS_AS(DivergenceSpec::supervised(Divergence::gan).f_star(0.0), std::domain_error);
    CHECK_THROWS_AS(DivergenceSpec::supervised(Divergence::sl).f_star(0.0), std::domain_error);

    // Below the image of f' the conjugate continues as a constant.
    const DivergenceSpec sls = DivergenceSpec::supervised(Divergence::sl);
    CHECK(sls.f_star(-1.5) == sls.f_star(-1.0));
    CHECK(sls.f_star(-1.0) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(sls.f_star_prime(-1.5) == 0.0);
    const DivergenceSpec ps = DivergenceSpec::supervised(Divergence::p);
    CHECK(ps.f_star(-3.0) == ps.f_star(-2.0));
    CHECK(brute_force_conjugate(ps, -3.0) == doctest::Approx(ps.f_star(-3.0)).epsilon(1e-3));
}

TEST_CASE("conjugate derivatives: frozen values") {
    CHECK(DivergenceSpec::supervised(Divergence::kl).f_star_prime(1.0) == doctest::Approx(1.0));
    CHECK(DivergenceSpec::supervised(Divergence::p).f_star_prime(2.0) == doctest::Approx(2.0));
    const DivergenceSpec sl = DivergenceSpec::unsupervised(Divergence::sl, 1.0);
    CHECK(sl.f_star_second(-0.5) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("conjugate derivatives match central finite differences") {
    for (Divergence d : all_divergences()) {
        for (const DivergenceSpec& spec : both_modes(d)) {
            const auto [lo, hi] = valid_t_range(d);
            const double margin = 0.02 * (hi - lo);
            for (double t : linspace(lo + margin, hi - margin, 21)) {
                const double h = 1e-5 * std::max(1.0, std::abs(t));
                const double fd1 = (spec.f_star(t + h) - spec.f_star(t - h)) / (2.0 * h);
                const double fd2 = (spec.f_star(t + h) - 2.0 * spec.f_star(t) + spec.f_star(t - h)) / (h * h);
                CHECK(spec.f_star_prime(t) ==
                      doctest::Approx(fd1).epsilon(1e-4).scale(std::max(1.0, std::abs(fd1))));
                CHECK(spec.f_star_second(t) ==
                      doctest::Approx(fd2).epsilon(2e-4).scale(std::max(1.0, std::abs(fd2))));
            }
        }
    }
}

TEST_CASE("brute-force conjugate oracle agrees with closed forms") {
    for (Divergence d : all_divergences()) {
        for (const DivergenceSpec& spec : both_modes(d)) {
            const auto [lo, hi] = valid_t_range(d);
            for (double t : linspace(lo, hi, 15))
                CHECK(std::abs(brute_force_conjugate(spec, t) - spec.f_star(t)) < 1e-3);
        }
    }
    // Simple pinned cases.
    CHECK(brute_force_conjugate(DivergenceSpec::supervised(Divergence::kl), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-3));
    CHECK(brute_force_conjugate(DivergenceSpec::supervised(Divergence::p), 0.0) ==
          doctest::Approx(0.0).epsilon(1e-6));
    const DivergenceSpec sls = DivergenceSpec::supervised(Divergence::sl);
    CHECK(brute_force_conjugate(sls, -0.5) == doctest::Approx(sls.f_star(-0.5)).epsilon(1e-4));
    CHECK(sls.f_star(-0.5) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("unsupervised conjugate is tx times the supervised one up to a constant") {
    for (Divergence d : all_divergences()) {
        const DivergenceSpec sup = DivergenceSpec::supervised(d);
        for (double tx : {0.5, 2.0, 7.0}) {
            const DivergenceSpec uns = DivergenceSpec::unsupervised(d, tx);
            const auto [lo, hi] = valid_t_range(d);
            const auto ts = linspace(lo, hi, 9);
            const double shift0 = uns.f_star(ts[0]) - tx * sup.f_star(ts[0]);
            for (double t : ts)
                CHECK(uns.f_star(t) - tx * sup.f_star(t) == doctest::Approx(shift0).epsilon(1e-12));
        }
    }
}

TEST_CASE("numeric f-divergence") {
    const std::vector<double> p = {0.5, 0.5}, q = {0.25, 0.75};
    const DivergenceSpec kl = DivergenceSpec::supervised(Divergence::kl);
    CHECK(numeric_f_divergence(kl, p, q) == doctest::Approx(0.14384103622589046).epsilon(1e-12));

    for (Divergence d : all_divergences()) {
        const DivergenceSpec spec = DivergenceSpec::supervised(d);
        CHECK(numeric_f_divergence(spec, q, q) == doctest::Approx(0.0).epsilon(1e-15));
    }

    const DivergenceSpec sl = DivergenceSpec::supervised(Divergence::sl);
    const double v = numeric_f_divergence(sl, std::vector<double>{0.9, 0.1}, std::vector<double>{0.1, 0.9});
    CHECK(v >= 0.0);
    CHECK(v <= kLog2);

    CHECK_THROWS_AS(numeric_f_divergence(kl, std::vector<double>{1.0}, q), std::invalid_argument);
    CHECK_THROWS_AS(numeric_f_divergence(kl, std::vector<double>{0.6, 0.6}, q), std::invalid_argument);
}

TEST_CASE("shifted-log divergence stays within [0, log 2] on random pmfs") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> size_dist(2, 10);
    std::uniform_real_distribution<double> mass(0.02, 1.0);
    const DivergenceSpec sl = DivergenceSpec::supervised(Divergence::sl);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = size_dist(rng);
        std::vector<double> p(n), q(n);
        double sp = 0, sq = 0;
        for (int i = 0; i < n; ++i) {
            p[i] = mass(rng);
            q[i] = mass(rng);
            sp += p[i];
            sq += q[i];
        }
        for (int i = 0; i < n; ++i) {
            p[i] /= sp;
            q[i] /= sq;
        }
        const double v = numeric_f_divergence(sl, p, q);
        CHECK(v >= -1e-9);
        CHECK(v <= kLog2 + 1e-9);
    }
}

TEST_CASE("generator and conjugate are convex (second differences)") {
    for (Divergence d : all_divergences()) {
        for (const DivergenceSpec& spec : both_modes(d)) {
            for (double u : linspace(0.05, 15.0, 40)) {
                const double h = 1e-3 * std::max(1.0, u);
                const double dd = (spec.f(u - h) - 2.0 * spec.f(u) + spec.f(u + h)) / (h * h);
                CHECK(dd >= -1e-8);
            }
            const auto [lo, hi] = valid_t_range(d);
            const double margin = 0.02 * (hi - lo);
            for (double t : linspace(lo + margin, hi - margin, 40)) {
                const double h = 1e-4 * std::max(1.0, std::abs(t));
                const double dd = (spec.f_star(t - h) - 2.0 * spec.f_star(t) + spec.f_star(t + h)) / (h * h);
                CHECK(dd >= -1e-8);
            }
        }
    }
}

TEST_CASE("activation kinds and domains follow the output ranges") {
    CHECK(DivergenceSpec::supervised(Divergence::gan).activation_kind() == OutputActivation::sigmoid);
    CHECK(DivergenceSpec::supervised(Divergence::sl).activation_kind() == OutputActivation::sigmoid);
    for (Divergence d : {Divergence::kl, Divergence::rkl, Divergence::hd, Divergence::p})
        CHECK(DivergenceSpec::supervised(d).activation_kind() == OutputActivation::softplus);

    CHECK(DivergenceSpec::supervised(Divergence::sl).domain_d().hi == 1.0);
    CHECK(DivergenceSpec::supervised(Divergence::kl).domain_d().hi == std::numeric_limits<double>::infinity());
}

TEST_CASE("tx_measure must be positive") {
    CHECK_THROWS_AS(DivergenceSpec::unsupervised(Divergence::kl, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DivergenceSpec::unsupervised(Divergence::kl, -2.0), std::invalid_argument);
}
