#include "fdl/bottom_up.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "fdl/objectives.hpp"
#include "fdl/scalar_search.hpp"

namespace fdl {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                            0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                              0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                              0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss_legendre(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < kGlNodes.size(); ++i)
        acc += kGlWeights[i] * (f(c + h * kGlNodes[i]) + f(c - h * kGlNodes[i]));
    return acc * h;
}

void check_densities(double p_joint, double p_prod) {
    if (!(p_joint > 0.0) || !(p_prod > 0.0)) throw std::domain_error("densities must be positive");
}

std::pair<double, double> search_bracket(const Interval& dom) {
    const double lo = 1e-6;
    const double hi = std::isfinite(dom.hi) ? dom.hi - 1e-6 : 1e3;
    return {lo, hi};
}

}  // namespace

Interval BottomUpSpec::domain_d() const {
    if (id == Divergence::gan || id == Divergence::sl) return {0.0, 1.0};
    return {0.0, std::numeric_limits<double>::infinity()};
}

double BottomUpSpec::k(double posterior) const {
    if (!(posterior > 0.0)) throw std::domain_error("posterior must be positive");
    switch (id) {
        case Divergence::kl:
        case Divergence::p: return posterior;
        case Divergence::rkl:
        case Divergence::hd: return 1.0 / posterior;
        case Divergence::gan:
        case Divergence::sl: return 1.0 / (1.0 + posterior);
    }
    return 0.0;
}

double BottomUpSpec::k_inverse(double d) const {
    if (!domain_d().contains(d)) throw std::domain_error("discriminator value outside domain");
    switch (id) {
        case Divergence::kl:
        case Divergence::p: return d;
        case Divergence::rkl:
        case Divergence::hd: return 1.0 / d;
        case Divergence::gan:
        case Divergence::sl: return (1.0 - d) / d;
    }
    return 0.0;
}

double BottomUpSpec::p1(double p_joint, double p_prod) const {
    switch (id) {
        case Divergence::kl:
        case Divergence::p: return p_prod;
        case Divergence::rkl:
        case Divergence::hd: return p_joint;
        case Divergence::gan:
        case Divergence::sl: return p_joint + p_prod;
    }
    return 0.0;
}

BottomUpSpec bottom_up_entry(Divergence d) {
    switch (d) {
        case Divergence::kl: return {d, 1.0, 0.0};
        case Divergence::rkl: return {d, 1.0, 0.0};
        case Divergence::hd: return {d, 1.5, 0.0};
        case Divergence::gan: return {d, 1.0, 1.0};
        case Divergence::p: return {d, 0.0, 0.0};
        case Divergence::sl: return {d, 1.0, 0.0};  // k_gan with the 1/(1-D) factor dropped
    }
    throw std::logic_error("unreachable");
}

double integrand_derivative(const BottomUpSpec& spec, double d, double p_joint, double p_prod) {
    check_densities(p_joint, p_prod);
    if (!spec.domain_d().contains(d)) throw std::domain_error("discriminator value outside domain");
    const double g1 = -spec.p1(p_joint, p_prod) / std::pow(d, spec.alpha) *
                      (spec.beta == 0.0 ? 1.0 : std::pow(1.0 / (1.0 - d), spec.beta));
    return (d - spec.k(p_joint / p_prod)) * g1;
}

double objective_bin_derivative(const DivergenceSpec& spec, double d, double p_joint, double p_prod) {
    check_densities(p_joint, p_prod);
    if (!spec.domain_d().contains(d)) throw std::domain_error("discriminator value outside domain");
    return p_joint * spec.r_prime(d) - (p_prod / spec.tx_measure()) * spec.conj_of_r_prime(d);
}

double pointwise_optimal_d(const DivergenceSpec& spec, double p_joint, double p_prod) {
    check_densities(p_joint, p_prod);
    auto [lo, hi] = search_bracket(spec.domain_d());
    return golden_section_max([&](double d) { return objective_bin(spec, d, p_joint, p_prod); }, lo, hi, 200);
}

double pointwise_optimal_d(const BottomUpSpec& spec, double p_joint, double p_prod) {
    check_densities(p_joint, p_prod);
    auto [lo, hi] = search_bracket(spec.domain_d());
    auto g = [&](double d) { return integrand_derivative(spec, d, p_joint, p_prod); };
    // The objective is only known through its derivative g, so golden-section
    // comparisons use the sign of the integral of g between candidate points.
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    for (int i = 0; i < 200; ++i) {
        const double c = b - phi * (b - a);
        const double d = a + phi * (b - a);
        if (!(d > c)) break;
        const double diff = gauss_legendre(g, c, d);  // J(d) - J(c)
        if (diff < 0.0)
            b = d;
        else
            a = c;
    }
    return 0.5 * (a + b);
}

SteepnessPair steepness_compare(double p_joint, double p_prod, double delta) {
    check_densities(p_joint, p_prod);
    if (delta == 0.0) return {0.0, 0.0};
    const double d_opt = p_prod / (p_joint + p_prod);
    const double d = d_opt + delta;
    if (!(d > 0.0 && d < 1.0)) throw std::domain_error("displaced point leaves (0,1)");
    SteepnessPair out;
    out.mag_gan = std::abs(p_prod / d - p_joint / (1.0 - d));
    out.mag_sl = std::abs(p_prod / d - (p_joint + p_prod));
    return out;
}

}  // namespace fdl
