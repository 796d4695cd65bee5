#pragma once

#include <span>
#include <vector>

#include "fdl/divergence.hpp"

namespace fdl {

/// Raw per-class posterior estimates. Most objectives do not guarantee the
/// values sum to one; MAP decisions only need the argmax, so normalisation is
/// an optional reporting step.
struct PosteriorEstimate {
    std::vector<double> values;
    bool normalized = false;
};

/// Index of the maximum, ties broken by the lowest index.
int map_classify(std::span<const double> estimates);

PosteriorEstimate normalize(PosteriorEstimate est);

/// First-order estimate of the gap between the optimal posterior and the one
/// implied by the current discriminator output:
/// (r(D_opt) - r(D_cur)) * f*''(r(D_cur)) / |T_x|.
double posterior_gap_estimate(const DivergenceSpec& spec, double d_current, double d_optimal);

}  // namespace fdl
