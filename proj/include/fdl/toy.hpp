#pragma once

#include <utility>
#include <vector>

#include "fdl/divergence.hpp"
#include "fdl/matrix.hpp"
#include "fdl/net.hpp"
#include "fdl/objectives.hpp"
#include "fdl/rng.hpp"
#include "fdl/training.hpp"

namespace fdl {

enum class ToyKind { exponential, gaussian };

ToyKind toy_kind_from_name(std::string_view name);
std::string_view toy_kind_name(ToyKind k);

/// Continuous-posterior toy task: Y = X + N with X, N either independent
/// exponentials (rate lambda) or independent zero-mean Gaussians. The support
/// box truncates X for the uniform marginal sampler; for the exponential task
/// it also rejects out-of-box draws, and its measure plays the role of |T_x|.
struct ToyTaskConfig {
    ToyKind kind = ToyKind::exponential;
    double lambda = 1.0;
    double sigma_x = 1.0;
    double sigma_n = 1.0;
    Box support_box;
    int grid_x = 50, grid_y = 50;
    double x_lo = 0.0, x_hi = 4.0, y_lo = 0.2, y_hi = 4.0;
    int n_train = 200000;
    TrainConfig train;
    uint64_t seed = 1;

    static ToyTaskConfig exponential_default();
    static ToyTaskConfig gaussian_default();
};

/// Joint samples (x, y) as single-column matrices.
std::pair<Matrix, Matrix> sample_task(const ToyTaskConfig& cfg, int n, Rng& rng);

/// Posterior of X given Y = y when both are exponential: uniform 1/y on (0, y).
double exp_posterior_closed(double x, double y);

/// Posterior of X given Y = y for the Gaussian model, in closed form.
double gauss_posterior_closed(double x, double y, double sigma_x, double sigma_n);

struct PosteriorGrid {
    std::vector<double> x_axis, y_axis;
    Matrix estimate;  // [x index, y index]
    Matrix oracle;
    double mse = 0.0;
    long n_mse = 0;  // grid points inside the oracle support
};

/// Evaluates a trained (or freshly initialised) net on the task grid against
/// the closed-form oracle. MSE averages only over oracle-support points.
PosteriorGrid eval_grid(const ToyTaskConfig& cfg, const DivergenceSpec& spec, const Net& net);

struct ToyFitResult {
    Net net;
    PosteriorGrid grid;
};

/// Trains an unsupervised discriminator on the task with the given divergence
/// (|T_x| = support box measure) and grids the resulting posterior estimate.
ToyFitResult fit_toy(const ToyTaskConfig& cfg, Divergence d);

inline PosteriorGrid fit_and_grid(const ToyTaskConfig& cfg, Divergence d) { return fit_toy(cfg, d).grid; }

/// CSV with columns x, y, estimate, oracle.
std::string grid_csv(const PosteriorGrid& grid);

DivergenceSpec toy_spec(const ToyTaskConfig& cfg, Divergence d);

}  // namespace fdl
