#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdl {

/// The six supported divergences: Kullback-Leibler, reverse KL, squared
/// Hellinger, GAN, Pearson chi-squared, and shifted-log.
enum class Divergence { kl, rkl, hd, gan, p, sl };

Divergence divergence_from_name(std::string_view name);
std::string_view divergence_name(Divergence d);
const std::vector<Divergence>& all_divergences();

/// Final-layer activation implied by the discriminator output range.
enum class OutputActivation { softplus, sigmoid };

/// Open interval; endpoints may be +-infinity.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x > lo && x < hi; }
};

/// One divergence instance: the generator f (normalised so f(1) = 0 exactly),
/// its exact Fenchel conjugate f*, their derivatives, the change of variable
/// T = r(D), and the posterior <-> optimal-discriminator maps.
///
/// tx_measure is the measure |T_x| of the support of X: 1 in the supervised
/// form, the counting/box measure in the unsupervised form. All closed forms
/// carry the additive constants that make (f, f*) an exact conjugate pair;
/// dropping them would not change any gradient but would break the value-level
/// identities (duality against the sup oracle, objective tightness, and the
/// shifted-log range bound), which the verification suite checks exactly.
class DivergenceSpec {
public:
    static DivergenceSpec supervised(Divergence d);
    static DivergenceSpec unsupervised(Divergence d, double tx_measure);

    Divergence id() const { return id_; }
    bool is_supervised() const { return supervised_; }
    double tx_measure() const { return tx_; }
    std::string_view name() const { return divergence_name(id_); }

    /// Additive constant K with f(u) = f_table(u) + K and f(1) = 0.
    double constant_term() const;

    /// Valid discriminator outputs (the D-domain of the objective).
    Interval domain_d() const;
    /// Domain of the conjugate f*.
    Interval domain_t() const;

    OutputActivation activation_kind() const;

    /// Generator value, constant included. Throws std::domain_error for u <= 0.
    double f(double u) const;
    /// First derivative of the generator (constants drop out).
    double f_prime(double u) const;
    /// Exact conjugate of f. Throws std::domain_error outside domain_t().
    double f_star(double t) const;
    double f_star_prime(double t) const;
    double f_star_second(double t) const;

    /// Change of variable T = r(D) and its derivative in D.
    double r(double d) const;
    double r_prime(double d) const;

    /// f*(r(D)) composed in closed form, and its derivative with respect to D.
    double conj_of_r(double d) const;
    double conj_of_r_prime(double d) const;

    /// Optimal discriminator output for one (x, y) cell, given the joint
    /// density value and the scaled product density |T_x| p_U p_Y.
    double optimal_d(double p_joint, double p_prod) const;

    /// Posterior from a discriminator output (k^{-1}) and its inverse (k).
    double posterior_from_d(double d) const;
    double d_from_posterior(double p) const;

private:
    DivergenceSpec(Divergence d, double tx, bool sup) : id_(d), tx_(tx), supervised_(sup) {}
    void check_t(double t) const;

    Divergence id_;
    double tx_;
    bool supervised_;
};

/// Grid supremum of ut - f(u) over a log-spaced grid: the independent oracle
/// for the closed-form conjugate.
double brute_force_conjugate(const DivergenceSpec& spec, double t, int grid_points = 10000, double u_lo = 1e-4,
                             double u_hi = 1e3);

/// Sum_i q_i f(p_i / q_i) for two strictly positive pmfs on a shared support.
double numeric_f_divergence(const DivergenceSpec& spec, std::span<const double> p, std::span<const double> q);

}  // namespace fdl
