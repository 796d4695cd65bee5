#pragma once

#include <string>
#include <vector>

#include "fdl/net.hpp"

namespace fdl {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct SgdMomentumConfig {
    double lr = 1e-2;
    double momentum = 0.9;
};

enum class OptimizerKind { adam, sgd_momentum };

/// Per-parameter moment buffers plus step counter. Adam uses the standard
/// bias-corrected update; SGD with momentum the heavy-ball update.
class Optimizer {
public:
    static Optimizer adam(const Net& net, const AdamConfig& cfg = {});
    static Optimizer sgd_momentum(const Net& net, const SgdMomentumConfig& cfg = {});

    /// Applies one update. Throws std::runtime_error on non-finite gradients,
    /// leaving the parameters untouched.
    void step(Net& net, const Gradients& grads);

    long step_count() const { return steps_; }
    OptimizerKind kind() const { return kind_; }
    double learning_rate() const { return lr_; }
    void set_learning_rate(double lr) { lr_ = lr; }

private:
    Optimizer() = default;

    OptimizerKind kind_ = OptimizerKind::adam;
    double lr_ = 1e-3;
    double beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
    double momentum_ = 0.9;
    long steps_ = 0;
    // Flat buffers per layer: weights then bias, matching the net layout.
    std::vector<std::vector<double>> m1_;
    std::vector<std::vector<double>> m2_;
};

}  // namespace fdl
