#include "fdl/objectives.hpp"

#include "fdl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fdl {

namespace {
constexpr double kEps = 1e-6;

Matrix concat_cols(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("concat: row mismatch");
    Matrix out(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        auto ra = a.row(i);
        auto rb = b.row(i);
        std::copy(ra.begin(), ra.end(), dst.begin());
        std::copy(rb.begin(), rb.end(), dst.begin() + a.cols());
    }
    return out;
}

// Per-class terms of the supervised objectives: J = mean[ a(D_label) + sum_i c(D_i) ].
struct SupervisedTerms {
    double (*a)(double);
    double (*a_prime)(double);
    double (*c)(double);
    double (*c_prime)(double);
};

SupervisedTerms supervised_terms(Divergence d) {
    switch (d) {
        case Divergence::kl:
            return {[](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
                    [](double x) { return -x; }, [](double) { return -1.0; }};
        case Divergence::rkl:
            return {[](double x) { return -x; }, [](double) { return -1.0; },
                    [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; }};
        case Divergence::hd:
            return {[](double x) { return -std::sqrt(x); }, [](double x) { return -0.5 / std::sqrt(x); },
                    [](double x) { return -1.0 / std::sqrt(x); },
                    [](double x) { return 0.5 / (x * std::sqrt(x)); }};
        case Divergence::gan:
            return {[](double x) { return std::log(1.0 - x); }, [](double x) { return -1.0 / (1.0 - x); },
                    [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; }};
        case Divergence::p:
            return {[](double x) { return 2.0 * (x - 1.0); }, [](double) { return 2.0; },
                    [](double x) { return -x * x; }, [](double x) { return -2.0 * x; }};
        case Divergence::sl:
            return {[](double x) { return -x; }, [](double) { return -1.0; },
                    [](double x) { return std::log(x) - x; }, [](double x) { return 1.0 / x - 1.0; }};
    }
    throw std::logic_error("unreachable");
}

}  // namespace

double Box::measure() const {
    double m = 1.0;
    for (int i = 0; i < dim(); ++i) m *= hi[i] - lo[i];
    return m;
}

void Box::validate() const {
    if (lo.empty() || lo.size() != hi.size()) throw std::invalid_argument("support_box: malformed bounds");
    for (size_t i = 0; i < lo.size(); ++i)
        if (!(hi[i] > lo[i])) throw std::invalid_argument("support_box: zero-measure interval");
}

JointBatch marginal_resample(const Matrix& x_joint, const Matrix& y_joint, const Box& support_box, Rng& rng) {
    support_box.validate();
    if (x_joint.rows() != y_joint.rows()) throw std::invalid_argument("joint blocks must share batch size");
    if (x_joint.cols() != support_box.dim()) throw std::invalid_argument("support_box dimension mismatch");
    const int n = x_joint.rows();

    JointBatch batch;
    batch.x_joint = x_joint;
    batch.y_joint = y_joint;
    batch.x_marginal = Matrix(n, x_joint.cols());
    for (int j = 0; j < x_joint.cols(); ++j) {
        std::uniform_real_distribution<double> dist(support_box.lo[j], support_box.hi[j]);
        for (int i = 0; i < n; ++i) batch.x_marginal(i, j) = dist(rng);
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    batch.y_marginal = Matrix(n, y_joint.cols());
    for (int i = 0; i < n; ++i) {
        auto src = y_joint.row(perm[i]);
        auto dst = batch.y_marginal.row(i);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return batch;
}

double clamp_to_domain(const DivergenceSpec& spec, double d) {
    if (spec.activation_kind() == OutputActivation::sigmoid) return std::clamp(d, kEps, 1.0 - kEps);
    return std::max(d, kEps);
}

double objective_bin(const DivergenceSpec& spec, double d, double p_joint, double p_prod) {
    return p_joint * spec.r(d) - (p_prod / spec.tx_measure()) * spec.conj_of_r(d);
}

ObjectiveResult unsupervised_objective(const DivergenceSpec& spec, const Net& net, const JointBatch& batch,
                                       bool train_mode, Rng* dropout_rng) {
    if (net.mode() != NetMode::unsupervised) throw std::invalid_argument("net is not in unsupervised shape");
    const int n = batch.size();
    if (n <= 0) throw std::invalid_argument("empty batch");
    if (batch.y_joint.rows() != n || batch.x_marginal.rows() != n || batch.y_marginal.rows() != n)
        throw std::invalid_argument("batch blocks must share batch size");

    const Matrix joint_in = concat_cols(batch.x_joint, batch.y_joint);
    const Matrix marg_in = concat_cols(batch.x_marginal, batch.y_marginal);

    ForwardTape tape_j, tape_m;
    Matrix d_joint = net.forward(joint_in, train_mode, dropout_rng, &tape_j);
    Matrix d_marg = net.forward(marg_in, train_mode, dropout_rng, &tape_m);

    const double inv_n = 1.0 / n;
    double value = 0.0;
    Matrix grad_j(n, 1), grad_m(n, 1);
    for (int i = 0; i < n; ++i) {
        const double raw_j = d_joint(i, 0);
        const double dj = clamp_to_domain(spec, raw_j);
        value += spec.r(dj) * inv_n;
        grad_j(i, 0) = (dj == raw_j) ? -spec.r_prime(dj) * inv_n : 0.0;

        const double raw_m = d_marg(i, 0);
        const double dm = clamp_to_domain(spec, raw_m);
        value -= spec.conj_of_r(dm) * inv_n;
        grad_m(i, 0) = (dm == raw_m) ? spec.conj_of_r_prime(dm) * inv_n : 0.0;
    }

    ObjectiveResult res;
    res.loss = -value;
    if (!std::isfinite(res.loss)) throw TrainingError("non-finite objective value");
    res.grads = net.backward(tape_j, grad_j);
    Net::accumulate(res.grads, net.backward(tape_m, grad_m));
    return res;
}

ObjectiveResult supervised_objective(const DivergenceSpec& spec, const Net& net, const SupervisedBatch& batch,
                                     bool train_mode, Rng* dropout_rng) {
    if (net.mode() != NetMode::supervised) throw std::invalid_argument("net is not in supervised shape");
    const int n = batch.y.rows();
    if (n <= 0) throw std::invalid_argument("empty batch");
    if (batch.m < 2 || net.output_dim() != batch.m) throw std::invalid_argument("class count mismatch");
    if (static_cast<int>(batch.labels.size()) != n) throw std::invalid_argument("label count mismatch");
    for (int lbl : batch.labels)
        if (lbl < 0 || lbl >= batch.m) throw std::invalid_argument("label out of range");

    ForwardTape tape;
    Matrix d = net.forward(batch.y, train_mode, dropout_rng, &tape);

    const SupervisedTerms terms = supervised_terms(spec.id());
    const double inv_n = 1.0 / n;
    double value = 0.0;
    Matrix grad(n, batch.m);
    for (int i = 0; i < n; ++i) {
        const int lbl = batch.labels[i];
        for (int j = 0; j < batch.m; ++j) {
            const double raw = d(i, j);
            const double dc = clamp_to_domain(spec, raw);
            const bool interior = (dc == raw);
            double g = 0.0;
            value += terms.c(dc) * inv_n;
            if (interior) g += terms.c_prime(dc);
            if (j == lbl) {
                value += terms.a(dc) * inv_n;
                if (interior) g += terms.a_prime(dc);
            }
            grad(i, j) = -g * inv_n;
        }
    }

    ObjectiveResult res;
    res.loss = -value;
    if (!std::isfinite(res.loss)) throw TrainingError("non-finite objective value");
    res.grads = net.backward(tape, grad);
    return res;
}

Activation activation_for(const DivergenceSpec& spec) {
    return spec.activation_kind() == OutputActivation::sigmoid ? Activation::sigmoid : Activation::softplus;
}

}  // namespace fdl
