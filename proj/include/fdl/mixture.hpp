#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fdl/divergence.hpp"
#include "fdl/matrix.hpp"
#include "fdl/net.hpp"
#include "fdl/rng.hpp"
#include "fdl/training.hpp"

namespace fdl {

/// Symmetric 2x2 covariance.
struct Cov2 {
    double a = 1.0, b = 0.0, c = 1.0;  // [[a, b], [b, c]]
    double det() const { return a * c - b * b; }
};

/// Three-component 2-D Gaussian mixture with known parameters, so the Bayes
/// classifier is available in closed form.
struct MixtureConfig {
    std::array<std::array<double, 2>, 3> means = {{{0.0, 0.0}, {2.2, 0.0}, {0.0, 2.2}}};
    std::array<Cov2, 3> covs = {{{1.0, 0.0, 1.0}, {1.0, 0.3, 0.8}, {0.7, -0.2, 1.2}}};
    std::array<double, 3> priors = {0.3, 0.4, 0.3};
    int n_train = 60000;
    int n_test = 100000;
    TrainConfig train;
    uint64_t seed = 1;
};

std::pair<Matrix, std::vector<int>> sample_mixture(const MixtureConfig& cfg, int n, Rng& rng);

/// Unnormalised class scores prior_i * N(y; mu_i, Sigma_i).
std::array<double, 3> bayes_scores(const MixtureConfig& cfg, double y0, double y1);
std::vector<int> bayes_classify(const MixtureConfig& cfg, const Matrix& y);

struct MixtureResult {
    std::map<std::string, double> accuracy;  // per divergence
    double bayes_accuracy = 0.0;             // empirical argmax accuracy
    double bayes_expected_accuracy = 0.0;    // mean of the max posterior over the test set
};

Net train_mixture_net(const MixtureConfig& cfg, const DivergenceSpec& spec, uint64_t seed);

MixtureResult mixture_bench(const MixtureConfig& cfg, const std::vector<Divergence>& divergences);

}  // namespace fdl
