#pragma once

#include <vector>

#include "fdl/divergence.hpp"
#include "fdl/matrix.hpp"
#include "fdl/net.hpp"
#include "fdl/rng.hpp"

namespace fdl {

/// Axis-aligned box, one interval per x dimension.
struct Box {
    std::vector<double> lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
    double measure() const;
    void validate() const;  // throws on empty or zero-measure boxes
};

/// Paired joint samples plus the independently resampled product-of-marginals
/// block: x_marginal uniform over the support box, y_marginal a permutation
/// of y_joint.
struct JointBatch {
    Matrix x_joint;
    Matrix y_joint;
    Matrix x_marginal;
    Matrix y_marginal;
    int size() const { return x_joint.rows(); }
};

struct SupervisedBatch {
    Matrix y;
    std::vector<int> labels;
    int m = 0;  // class count
};

JointBatch marginal_resample(const Matrix& x_joint, const Matrix& y_joint, const Box& support_box, Rng& rng);

struct ObjectiveResult {
    double loss = 0.0;  // negated objective, minimised by the training loop
    Gradients grads;
};

/// Discriminator outputs are clamped to the interior of the objective's
/// D-domain before logs and divisions: sigmoid-range outputs to
/// [1e-6, 1 - 1e-6], positive-range outputs to [1e-6, inf).
double clamp_to_domain(const DivergenceSpec& spec, double d);

/// Per-(x, y)-cell integrand of the variational objective at discriminator
/// value d, with p_prod the scaled product density |T_x| p_U p_Y. Summed over
/// the cells of a discrete joint this is the full objective; at the optimal
/// D it reproduces the f-divergence value exactly (the bound is tight).
double objective_bin(const DivergenceSpec& spec, double d, double p_joint, double p_prod);

/// Loss and parameter gradients of the joint-vs-marginal objective for a net
/// in unsupervised shape (scalar output on concatenated x||y input).
ObjectiveResult unsupervised_objective(const DivergenceSpec& spec, const Net& net, const JointBatch& batch,
                                       bool train_mode = true, Rng* dropout_rng = nullptr);

/// Loss and parameter gradients of the per-class objective for a net in
/// supervised shape (m outputs, observation-only input). The labelled output
/// enters the first term; the second term sums over all m outputs.
ObjectiveResult supervised_objective(const DivergenceSpec& spec, const Net& net, const SupervisedBatch& batch,
                                     bool train_mode = true, Rng* dropout_rng = nullptr);

/// Final-layer activation for a divergence: sigmoid for (0,1) outputs,
/// softplus for positive outputs.
Activation activation_for(const DivergenceSpec& spec);

}  // namespace fdl
