#pragma once

#include "fdl/divergence.hpp"

namespace fdl {

/// One entry of the bottom-up catalogue: the invertible map k from posterior
/// to optimal discriminator output, plus the (alpha, beta) exponents of the
/// rearrangement factor g1(D) = -p1 / D^alpha * (1/(1-D))^beta.
struct BottomUpSpec {
    Divergence id;
    double alpha = 1.0;
    double beta = 0.0;

    Interval domain_d() const;
    double k(double posterior) const;
    double k_inverse(double d) const;
    /// The p1 factor, written in terms of the joint density and the scaled
    /// product density |T_x| p_U p_Y.
    double p1(double p_joint, double p_prod) const;
};

BottomUpSpec bottom_up_entry(Divergence d);

/// g(D, k) = (D - k(posterior)) * g1(D, k): the imposed derivative of the
/// per-cell integrand. Vanishes exactly at D = k(p_joint / p_prod).
double integrand_derivative(const BottomUpSpec& spec, double d, double p_joint, double p_prod);

/// Derivative of the per-cell variational integrand (objective_bin) in D.
double objective_bin_derivative(const DivergenceSpec& spec, double d, double p_joint, double p_prod);

/// Per-cell argmax of the variational integrand by golden-section search on
/// the objective's D-domain clipped to [1e-6, 1e3] (or [1e-6, 1 - 1e-6]).
double pointwise_optimal_d(const DivergenceSpec& spec, double p_joint, double p_prod);

/// Per-cell argmax for a catalogue entry; golden-section driven by the sign
/// of the integral of g between candidate points, so no closed-form
/// antiderivative is assumed.
double pointwise_optimal_d(const BottomUpSpec& spec, double p_joint, double p_prod);

struct SteepnessPair {
    double mag_gan = 0.0;
    double mag_sl = 0.0;
};

/// Magnitudes of the per-cell objective derivatives for the GAN and
/// shifted-log objectives at their shared optimum displaced by delta.
SteepnessPair steepness_compare(double p_joint, double p_prod, double delta);

}  // namespace fdl
