#include "fdl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdl/bottom_up.hpp"
#include "fdl/divergence.hpp"
#include "fdl/objectives.hpp"
#include "fdl/rng.hpp"
#include "fdl/scalar_search.hpp"

namespace fdl {

namespace {

struct TGrid {
    double lo, hi;
};

// Conjugate-argument ranges whose maximisers stay well inside the brute-force
// u-grid [1e-4, 1e3].
TGrid t_grid(Divergence d) {
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

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<DivergenceSpec> spec_set() {
    std::vector<DivergenceSpec> specs;
    for (Divergence d : all_divergences()) {
        specs.push_back(DivergenceSpec::supervised(d));
        specs.push_back(DivergenceSpec::unsupervised(d, 4.0));
    }
    return specs;
}

std::string detail_max(double worst) {
    std::ostringstream os;
    os << "max |err| = " << worst;
    return os.str();
}

CheckResult check_conjugate_duality() {
    double worst = 0.0;
    for (const DivergenceSpec& spec : spec_set()) {
        const TGrid g = t_grid(spec.id());
        for (double t : linspace(g.lo, g.hi, 50))
            worst = std::max(worst, std::abs(spec.f_star(t) - brute_force_conjugate(spec, t)));
    }
    return {"conjugate duality vs grid supremum", worst < 1e-3, detail_max(worst)};
}

CheckResult check_conjugate_derivative_inverse() {
    double worst = 0.0;
    for (const DivergenceSpec& spec : spec_set()) {
        const TGrid g = t_grid(spec.id());
        for (double t : linspace(g.lo, g.hi, 50)) {
            const double by_bisection =
                bisect_increasing([&](double u) { return spec.f_prime(u); }, t, 1e-9, 1e6, 200);
            worst = std::max(worst, std::abs(spec.f_star_prime(t) - by_bisection));
        }
    }
    return {"conjugate derivative equals inverse of generator derivative", worst < 1e-6, detail_max(worst)};
}

CheckResult check_convexity() {
    double worst = 0.0;  // most negative second difference
    for (const DivergenceSpec& spec : spec_set()) {
        for (double u : linspace(0.05, 20.0, 80)) {
            const double h = 1e-3 * std::max(1.0, u);
            const double dd = (spec.f(u - h) - 2.0 * spec.f(u) + spec.f(u + h)) / (h * h);
            worst = std::min(worst, dd);
        }
        const TGrid g = t_grid(spec.id());
        const double margin = 0.02 * (g.hi - g.lo);
        for (double t : linspace(g.lo + margin, g.hi - margin, 80)) {
            const double h = 1e-4 * std::max(1.0, std::abs(t));
            const double dd = (spec.f_star(t - h) - 2.0 * spec.f_star(t) + spec.f_star(t + h)) / (h * h);
            worst = std::min(worst, dd);
        }
    }
    std::ostringstream os;
    os << "min second difference = " << worst;
    return {"generator and conjugate convexity", worst >= -1e-8, os.str()};
}

CheckResult check_conjugate_scaling() {
    // The tx-scaled conjugate differs from tx * (supervised conjugate) by a
    // t-independent constant only.
    double worst = 0.0;
    for (Divergence d : all_divergences()) {
        for (double tx : {0.5, 2.0, 4.0}) {
            const DivergenceSpec sup = DivergenceSpec::supervised(d);
            const DivergenceSpec uns = DivergenceSpec::unsupervised(d, tx);
            const TGrid g = t_grid(d);
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (double t : linspace(g.lo, g.hi, 50)) {
                const double shift = uns.f_star(t) - tx * sup.f_star(t);
                lo = std::min(lo, shift);
                hi = std::max(hi, shift);
            }
            worst = std::max(worst, hi - lo);
        }
    }
    std::ostringstream os;
    os << "max shift spread = " << worst;
    return {"conjugate tx-scaling is a constant offset", worst < 1e-9, os.str()};
}

CheckResult check_sl_range(uint64_t seed) {
    Rng rng = substream(seed, "verify/sl_range");
    const DivergenceSpec sl = DivergenceSpec::supervised(Divergence::sl);
    const double log2 = std::log(2.0);
    double lo = 0.0, hi = 0.0;
    std::uniform_int_distribution<int> size_dist(2, 8);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = size_dist(rng);
        std::vector<double> p(n), q(n);
        double sp = 0.0, sq = 0.0;
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
        lo = std::min(lo, v);
        hi = std::max(hi, v - log2);
    }
    // Equality case: identical pmfs must give exactly zero.
    const std::vector<double> eq = {0.25, 0.25, 0.5};
    const double at_eq = numeric_f_divergence(sl, eq, eq);
    std::ostringstream os;
    os << "min = " << lo << ", max excess over log2 = " << hi << ", value at P=Q = " << at_eq;
    const bool pass = lo >= -1e-9 && hi <= 1e-9 && std::abs(at_eq) <= 1e-12;
    return {"shifted-log divergence bounded in [0, log 2]", pass, os.str()};
}

CheckResult check_optimal_d_recovery(uint64_t seed) {
    Rng rng = substream(seed, "verify/optimal_d");
    std::uniform_real_distribution<double> dens(0.1, 1.0);
    double worst = 0.0;
    for (Divergence d : all_divergences()) {
        const DivergenceSpec spec = DivergenceSpec::unsupervised(d, 3.0);
        const BottomUpSpec bspec = bottom_up_entry(d);
        for (int i = 0; i < 100; ++i) {
            const double pj = dens(rng), pp = dens(rng);
            const double target = spec.optimal_d(pj, pp);
            worst = std::max(worst, std::abs(pointwise_optimal_d(spec, pj, pp) - target));
            worst = std::max(worst, std::abs(pointwise_optimal_d(bspec, pj, pp) - target));
        }
    }
    return {"golden-section per-cell argmax matches optimal discriminator", worst < 1e-6, detail_max(worst)};
}

CheckResult check_tightness(uint64_t seed) {
    Rng rng = substream(seed, "verify/tightness");
    std::uniform_int_distribution<int> size_dist(2, 4);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int nx = size_dist(rng), ny = size_dist(rng);
        std::vector<double> joint(nx * ny);
        double total = 0.0;
        for (double& v : joint) {
            v = mass(rng);
            total += v;
        }
        for (double& v : joint) v /= total;
        std::vector<double> py(ny, 0.0);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) py[j] += joint[i * ny + j];

        for (Divergence d : all_divergences()) {
            const DivergenceSpec spec = DivergenceSpec::unsupervised(d, static_cast<double>(nx));
            std::vector<double> q(nx * ny);
            double value = 0.0;
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j) {
                    const double pj = joint[i * ny + j];
                    const double pp = py[j];  // |T_x| p_U p_Y with counting measure
                    value += objective_bin(spec, spec.optimal_d(pj, pp), pj, pp);
                    q[i * ny + j] = pp / nx;
                }
            const double df = numeric_f_divergence(spec, joint, q);
            worst = std::max(worst, std::abs(value - df));
        }
    }
    return {"objective value at the optimum equals the f-divergence", worst < 1e-6, detail_max(worst)};
}

CheckResult check_catalogue_consistency() {
    double worst = 0.0;
    for (Divergence d : all_divergences()) {
        const DivergenceSpec spec = DivergenceSpec::unsupervised(d, 2.0);
        const BottomUpSpec bspec = bottom_up_entry(d);
        // The imposed derivative matches the variational integrand derivative
        // up to the positive constant left behind by the rearrangement factor.
        const double scale = (d == Divergence::hd || d == Divergence::p) ? 2.0 : 1.0;
        const bool unit = !std::isfinite(spec.domain_d().hi) ? false : true;
        const auto d_grid = unit ? linspace(0.02, 0.98, 100) : linspace(0.05, 20.0, 100);
        for (double pj : {0.2, 0.7})
            for (double pp : {0.35, 0.9})
                for (double dd : d_grid) {
                    const double g = integrand_derivative(bspec, dd, pj, pp);
                    const double ref = scale * objective_bin_derivative(spec, dd, pj, pp);
                    worst = std::max(worst, std::abs(g - ref) / std::max(1.0, std::abs(g)));
                }
    }
    return {"bottom-up catalogue reproduces objective integrand derivatives", worst < 1e-8, detail_max(worst)};
}

CheckResult check_g_monotone() {
    double worst = -std::numeric_limits<double>::infinity();
    for (Divergence d : all_divergences()) {
        const BottomUpSpec bspec = bottom_up_entry(d);
        const bool unit = std::isfinite(bspec.domain_d().hi);
        const auto d_grid = unit ? linspace(0.02, 0.98, 60) : linspace(0.05, 20.0, 60);
        for (double pj : {0.15, 0.6})
            for (double pp : {0.3, 0.85})
                for (double dd : d_grid) {
                    const double h = 1e-6 * std::max(1.0, dd);
                    const double slope = (integrand_derivative(bspec, dd + h, pj, pp) -
                                          integrand_derivative(bspec, dd - h, pj, pp)) /
                                         (2.0 * h);
                    worst = std::max(worst, slope);
                }
    }
    std::ostringstream os;
    os << "max dg/dD = " << worst;
    return {"integrand derivative is non-increasing in D", worst <= 1e-8, os.str()};
}

CheckResult check_steepness(uint64_t seed) {
    Rng rng = substream(seed, "verify/steepness");
    std::uniform_real_distribution<double> dens(0.01, 0.9);
    int violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
        double pj = 0.0, pp = 0.0, d_opt = 0.0;
        do {
            pj = dens(rng);
            pp = dens(rng);
            d_opt = pp / (pj + pp);
        } while (d_opt - 0.055 <= 0.0 || d_opt + 0.055 >= 1.0);
        for (double delta : {0.01, -0.01, 0.05, -0.05}) {
            const SteepnessPair s = steepness_compare(pj, pp, delta);
            if (s.mag_gan < s.mag_sl - 1e-12) ++violations;
            worst_margin = std::min(worst_margin, s.mag_gan - s.mag_sl);
        }
    }
    std::ostringstream os;
    os << violations << " violations; min (gan - sl) margin = " << worst_margin;
    return {"GAN objective at least as steep as shifted-log near the optimum", violations == 0, os.str()};
}

}  // namespace

VerificationReport run_verification(uint64_t seed) {
    VerificationReport report;
    report.checks.push_back(check_conjugate_duality());
    report.checks.push_back(check_conjugate_derivative_inverse());
    report.checks.push_back(check_convexity());
    report.checks.push_back(check_conjugate_scaling());
    report.checks.push_back(check_sl_range(seed));
    report.checks.push_back(check_optimal_d_recovery(seed));
    report.checks.push_back(check_tightness(seed));
    report.checks.push_back(check_catalogue_consistency());
    report.checks.push_back(check_g_monotone());
    report.checks.push_back(check_steepness(seed));
    return report;
}

}  // namespace fdl
