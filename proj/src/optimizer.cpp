#include "fdl/optimizer.hpp"

#include "fdl/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace fdl {

namespace {

std::vector<std::vector<double>> zero_buffers(const Net& net) {
    std::vector<std::vector<double>> buf;
    for (const Layer& l : net.layers()) buf.emplace_back(l.w.size() + l.b.size(), 0.0);
    return buf;
}

bool finite_gradients(const Gradients& g) {
    for (const Matrix& dw : g.dw)
        for (size_t i = 0; i < dw.size(); ++i)
            if (!std::isfinite(dw.data()[i])) return false;
    for (const auto& db : g.db)
        for (double v : db)
            if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

Optimizer Optimizer::adam(const Net& net, const AdamConfig& cfg) {
    Optimizer opt;
    opt.kind_ = OptimizerKind::adam;
    opt.lr_ = cfg.lr;
    opt.beta1_ = cfg.beta1;
    opt.beta2_ = cfg.beta2;
    opt.eps_ = cfg.eps;
    opt.m1_ = zero_buffers(net);
    opt.m2_ = zero_buffers(net);
    return opt;
}

Optimizer Optimizer::sgd_momentum(const Net& net, const SgdMomentumConfig& cfg) {
    Optimizer opt;
    opt.kind_ = OptimizerKind::sgd_momentum;
    opt.lr_ = cfg.lr;
    opt.momentum_ = cfg.momentum;
    opt.m1_ = zero_buffers(net);
    return opt;
}

void Optimizer::step(Net& net, const Gradients& grads) {
    if (m1_.size() != net.layers().size()) throw std::invalid_argument("optimizer state does not match net");
    if (!finite_gradients(grads)) throw TrainingError("non-finite gradients; training aborted");

    ++steps_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));

    for (size_t l = 0; l < net.layers().size(); ++l) {
        Layer& layer = net.layers()[l];
        const size_t nw = layer.w.size();
        auto param_at = [&](size_t i) -> double& { return i < nw ? layer.w.data()[i] : layer.b[i - nw]; };
        auto grad_at = [&](size_t i) -> double { return i < nw ? grads.dw[l].data()[i] : grads.db[l][i - nw]; };

        const size_t total = nw + layer.b.size();
        if (kind_ == OptimizerKind::adam) {
            for (size_t i = 0; i < total; ++i) {
                const double g = grad_at(i);
                double& m = m1_[l][i];
                double& v = m2_[l][i];
                m = beta1_ * m + (1.0 - beta1_) * g;
                v = beta2_ * v + (1.0 - beta2_) * g * g;
                const double mhat = m / bc1;
                const double vhat = v / bc2;
                param_at(i) -= lr_ * mhat / (std::sqrt(vhat) + eps_);
            }
        } else {
            for (size_t i = 0; i < total; ++i) {
                double& vel = m1_[l][i];
                vel = momentum_ * vel - lr_ * grad_at(i);
                param_at(i) += vel;
            }
        }
    }
}

}  // namespace fdl
