#include "fdl/posterior.hpp"

#include <cmath>
#include <stdexcept>

namespace fdl {

int map_classify(std::span<const double> estimates) {
    if (estimates.empty()) throw std::invalid_argument("map_classify: empty estimate vector");
    int best = 0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        if (!std::isfinite(estimates[i])) throw std::invalid_argument("map_classify: non-finite estimate");
        if (estimates[i] > estimates[best]) best = static_cast<int>(i);
    }
    return best;
}

PosteriorEstimate normalize(PosteriorEstimate est) {
    double sum = 0.0;
    for (double v : est.values) sum += v;
    if (!(sum > 0.0)) throw std::invalid_argument("normalize: estimates sum to zero");
    for (double& v : est.values) v /= sum;
    est.normalized = true;
    return est;
}

double posterior_gap_estimate(const DivergenceSpec& spec, double d_current, double d_optimal) {
    if (!spec.domain_d().contains(d_current) || !spec.domain_d().contains(d_optimal))
        throw std::domain_error("discriminator value outside domain");
    const double delta = spec.r(d_optimal) - spec.r(d_current);
    return delta * spec.f_star_second(spec.r(d_current)) / spec.tx_measure();
}

}  // namespace fdl
