#pragma once

#include <cstdint>
#include <vector>

#include "fdl/optimizer.hpp"

namespace fdl {

/// Shared knobs of the small training loops (decoders, toy tasks, mixture).
struct TrainConfig {
    int steps = 2000;
    int batch = 256;
    double lr = 1e-3;
    OptimizerKind optimizer = OptimizerKind::adam;
    double momentum = 0.9;  // sgd_momentum only
    std::vector<int> hidden = {100, 100};
    double dropout = 0.0;
    uint64_t seed = 1;
};

inline Optimizer make_optimizer(const Net& net, const TrainConfig& cfg) {
    if (cfg.optimizer == OptimizerKind::adam) {
        AdamConfig a;
        a.lr = cfg.lr;
        return Optimizer::adam(net, a);
    }
    SgdMomentumConfig s;
    s.lr = cfg.lr;
    s.momentum = cfg.momentum;
    return Optimizer::sgd_momentum(net, s);
}

}  // namespace fdl
