#include "fdl/divergence.hpp"

#include <cmath>
#include <stdexcept>

namespace fdl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad_name(std::string_view name) {
    throw std::invalid_argument("unknown divergence name: " + std::string(name));
}
}  // namespace

Divergence divergence_from_name(std::string_view name) {
    if (name == "kl") return Divergence::kl;
    if (name == "rkl") return Divergence::rkl;
    if (name == "hd") return Divergence::hd;
    if (name == "gan") return Divergence::gan;
    if (name == "p") return Divergence::p;
    if (name == "sl") return Divergence::sl;
    bad_name(name);
}

std::string_view divergence_name(Divergence d) {
    switch (d) {
        case Divergence::kl: return "kl";
        case Divergence::rkl: return "rkl";
        case Divergence::hd: return "hd";
        case Divergence::gan: return "gan";
        case Divergence::p: return "p";
        case Divergence::sl: return "sl";
    }
    return "?";
}

const std::vector<Divergence>& all_divergences() {
    static const std::vector<Divergence> all = {Divergence::kl, Divergence::rkl, Divergence::hd,
                                                Divergence::gan, Divergence::p,  Divergence::sl};
    return all;
}

DivergenceSpec DivergenceSpec::supervised(Divergence d) { return DivergenceSpec(d, 1.0, true); }

DivergenceSpec DivergenceSpec::unsupervised(Divergence d, double tx_measure) {
    if (!(tx_measure > 0.0)) throw std::invalid_argument("tx_measure must be positive");
    return DivergenceSpec(d, tx_measure, false);
}

double DivergenceSpec::constant_term() const {
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return std::log(m);
        case Divergence::rkl: return 0.0;
        case Divergence::hd: return -(1.0 - std::sqrt(m)) * (1.0 - std::sqrt(m));
        case Divergence::gan: return (1.0 + m) * std::log(1.0 + m);
        case Divergence::p: return -(1.0 - m) * (1.0 - m) / m;
        case Divergence::sl: return m * std::log(1.0 + m);
    }
    return 0.0;
}

Interval DivergenceSpec::domain_d() const {
    switch (id_) {
        case Divergence::gan:
        case Divergence::sl: return {0.0, 1.0};
        default: return {0.0, kInf};
    }
}

Interval DivergenceSpec::domain_t() const {
    // For P and SL the supremum defining f* stays finite below the image of
    // f' (it is approached as u -> 0), so the conjugate continues as a
    // constant there and the domain is wider than the smooth branch.
    switch (id_) {
        case Divergence::kl: return {-kInf, kInf};
        case Divergence::rkl: return {-kInf, 0.0};
        case Divergence::hd: return {-kInf, 1.0};
        case Divergence::gan: return {-kInf, 0.0};
        case Divergence::p: return {-kInf, kInf};
        case Divergence::sl: return {-kInf, 0.0};
    }
    return {};
}

OutputActivation DivergenceSpec::activation_kind() const {
    switch (id_) {
        case Divergence::gan:
        case Divergence::sl: return OutputActivation::sigmoid;
        default: return OutputActivation::softplus;
    }
}

double DivergenceSpec::f(double u) const {
    if (!(u > 0.0)) throw std::domain_error("generator argument must be positive");
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return u * std::log(u / m) + std::log(m);
        case Divergence::rkl: return -m * std::log(u);
        case Divergence::hd: {
            const double s = std::sqrt(u) - std::sqrt(m);
            return s * s + constant_term();
        }
        case Divergence::gan: return u * std::log(u) - (u + m) * std::log(u + m) + constant_term();
        case Divergence::p: return (u - m) * (u - m) / m + constant_term();
        case Divergence::sl: return -m * std::log(u + m) + constant_term();
    }
    return 0.0;
}

double DivergenceSpec::f_prime(double u) const {
    if (!(u > 0.0)) throw std::domain_error("generator argument must be positive");
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return std::log(u / m) + 1.0;
        case Divergence::rkl: return -m / u;
        case Divergence::hd: return 1.0 - std::sqrt(m) / std::sqrt(u);
        case Divergence::gan: return std::log(u / (u + m));
        case Divergence::p: return 2.0 * (u - m) / m;
        case Divergence::sl: return -m / (u + m);
    }
    return 0.0;
}

void DivergenceSpec::check_t(double t) const {
    if (!domain_t().contains(t)) throw std::domain_error("conjugate argument outside dom(f*)");
}

double DivergenceSpec::f_star(double t) const {
    check_t(t);
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return m * std::exp(t - 1.0) - std::log(m);
        case Divergence::rkl: return -m - m * std::log(-t) + m * std::log(m);
        case Divergence::hd: return m * t / (1.0 - t) - constant_term();
        case Divergence::gan: return -m * std::log(1.0 - std::exp(t)) + m * std::log(m) - constant_term();
        case Divergence::p:
            if (t <= -2.0) return -m - constant_term();  // flat branch, sup approached at u -> 0
            return m * (0.25 * t * t + t) - constant_term();
        case Divergence::sl:
            if (t <= -1.0) return m * std::log(m) - constant_term();  // flat branch
            return -m * (std::log(-t) + t) + m * (std::log(m) - 1.0) - constant_term();
    }
    return 0.0;
}

double DivergenceSpec::f_star_prime(double t) const {
    check_t(t);
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return m * std::exp(t - 1.0);
        case Divergence::rkl: return -m / t;
        case Divergence::hd: return m / ((1.0 - t) * (1.0 - t));
        case Divergence::gan: {
            const double e = std::exp(t);
            return m * e / (1.0 - e);
        }
        case Divergence::p: return t <= -2.0 ? 0.0 : m * (0.5 * t + 1.0);
        case Divergence::sl: return t <= -1.0 ? 0.0 : -m / t - m;
    }
    return 0.0;
}

double DivergenceSpec::f_star_second(double t) const {
    check_t(t);
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return m * std::exp(t - 1.0);
        case Divergence::rkl: return m / (t * t);
        case Divergence::hd: {
            const double w = 1.0 - t;
            return 2.0 * m / (w * w * w);
        }
        case Divergence::gan: {
            const double e = std::exp(t);
            const double w = 1.0 - e;
            return m * e / (w * w);
        }
        case Divergence::p: return t <= -2.0 ? 0.0 : 0.5 * m;
        case Divergence::sl: return t <= -1.0 ? 0.0 : m / (t * t);
    }
    return 0.0;
}

double DivergenceSpec::r(double d) const {
    switch (id_) {
        case Divergence::kl: return std::log(d) + 1.0;
        case Divergence::rkl: return -d;
        case Divergence::hd: return 1.0 - std::sqrt(d);
        case Divergence::gan: return std::log(1.0 - d);
        case Divergence::p: return 2.0 * (d - 1.0);
        case Divergence::sl: return -d;
    }
    return 0.0;
}

double DivergenceSpec::r_prime(double d) const {
    switch (id_) {
        case Divergence::kl: return 1.0 / d;
        case Divergence::rkl: return -1.0;
        case Divergence::hd: return -0.5 / std::sqrt(d);
        case Divergence::gan: return -1.0 / (1.0 - d);
        case Divergence::p: return 2.0;
        case Divergence::sl: return -1.0;
    }
    return 0.0;
}

double DivergenceSpec::conj_of_r(double d) const {
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return m * d - std::log(m);
        case Divergence::rkl: return -m - m * std::log(d) + m * std::log(m);
        case Divergence::hd: return m / std::sqrt(d) - m - constant_term();
        case Divergence::gan: return -m * std::log(d) + m * std::log(m) - constant_term();
        case Divergence::p: return m * (d * d - 1.0) - constant_term();
        case Divergence::sl: return -m * std::log(d) + m * d + m * (std::log(m) - 1.0) - constant_term();
    }
    return 0.0;
}

double DivergenceSpec::conj_of_r_prime(double d) const {
    const double m = tx_;
    switch (id_) {
        case Divergence::kl: return m;
        case Divergence::rkl: return -m / d;
        case Divergence::hd: return -0.5 * m / (d * std::sqrt(d));
        case Divergence::gan: return -m / d;
        case Divergence::p: return 2.0 * m * d;
        case Divergence::sl: return m - m / d;
    }
    return 0.0;
}

double DivergenceSpec::optimal_d(double p_joint, double p_prod) const {
    if (!(p_joint > 0.0) || !(p_prod > 0.0)) throw std::domain_error("densities must be positive");
    switch (id_) {
        case Divergence::kl:
        case Divergence::p: return p_joint / p_prod;
        case Divergence::rkl:
        case Divergence::hd: return p_prod / p_joint;
        case Divergence::gan:
        case Divergence::sl: return p_prod / (p_joint + p_prod);
    }
    return 0.0;
}

double DivergenceSpec::posterior_from_d(double d) const {
    if (!domain_d().contains(d)) throw std::domain_error("discriminator value outside domain");
    switch (id_) {
        case Divergence::kl:
        case Divergence::p: return d;
        case Divergence::rkl:
        case Divergence::hd: return 1.0 / d;
        case Divergence::gan:
        case Divergence::sl: return (1.0 - d) / d;
    }
    return 0.0;
}

double DivergenceSpec::d_from_posterior(double p) const {
    if (!(p > 0.0)) throw std::domain_error("posterior value must be positive");
    switch (id_) {
        case Divergence::kl:
        case Divergence::p: return p;
        case Divergence::rkl:
        case Divergence::hd: return 1.0 / p;
        case Divergence::gan:
        case Divergence::sl: return 1.0 / (1.0 + p);
    }
    return 0.0;
}

double brute_force_conjugate(const DivergenceSpec& spec, double t, int grid_points, double u_lo, double u_hi) {
    if (grid_points < 2 || !(u_lo > 0.0) || !(u_hi > u_lo)) throw std::invalid_argument("bad conjugate grid");
    const double log_lo = std::log(u_lo);
    const double step = (std::log(u_hi) - log_lo) / (grid_points - 1);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double u = std::exp(log_lo + step * i);
        const double v = u * t - spec.f(u);
        if (v > best) best = v;
    }
    return best;
}

double numeric_f_divergence(const DivergenceSpec& spec, std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty()) throw std::invalid_argument("pmf supports must match and be nonempty");
    double sp = 0.0, sq = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0) || !(q[i] > 0.0)) throw std::invalid_argument("pmf entries must be strictly positive");
        sp += p[i];
        sq += q[i];
    }
    if (std::abs(sp - 1.0) > 1e-12 || std::abs(sq - 1.0) > 1e-12)
        throw std::invalid_argument("pmfs must sum to one");
    double acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) acc += q[i] * spec.f(p[i] / q[i]);
    return acc;
}

}  // namespace fdl
