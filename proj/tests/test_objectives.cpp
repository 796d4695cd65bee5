#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fdl/bottom_up.hpp"
#include "fdl/errors.hpp"
#include "fdl/objectives.hpp"

using namespace fdl;

namespace {

Net constant_output_net(NetMode mode, int in_dim, int out_dim, double raw_value) {
    Rng rng(1);
    NetConfig cfg;
    cfg.input_dim = in_dim;
    cfg.hidden = {};
    cfg.output_dim = out_dim;
    cfg.output_act = Activation::linear;
    Net net = Net::make(mode, cfg, rng);
    net.layers()[0].w.fill(0.0);
    std::fill(net.layers()[0].b.begin(), net.layers()[0].b.end(), raw_value);
    return net;
}

JointBatch constant_batch(int n) {
    JointBatch b;
    b.x_joint = Matrix(n, 1, 0.3);
    b.y_joint = Matrix(n, 1, 0.7);
    b.x_marginal = Matrix(n, 1, 0.4);
    b.y_marginal = Matrix(n, 1, 0.1);
    return b;
}

}  // namespace

TEST_CASE("unsupervised objective: frozen value for constant D") {
    // Shifted-log with |T_x| = 2 and D = 0.5 on both blocks. The loss carries
    // the exact-conjugate constants, so it sits 2(1 + log(3/2)) above the
    // constant-free textbook expression 0.5 - 2(log 0.5 - 0.5).
    const DivergenceSpec sl = DivergenceSpec::unsupervised(Divergence::sl, 2.0);
    Net net = constant_output_net(NetMode::unsupervised, 2, 1, 0.5);
    const ObjectiveResult res = unsupervised_objective(sl, net, constant_batch(8), false);
    const double paper_form = 0.5 - 2.0 * (std::log(0.5) - 0.5);
    const double shift = 2.0 * (1.0 + std::log(1.5));
    CHECK(res.loss == doctest::Approx(paper_form - shift).epsilon(1e-12));
    CHECK(res.loss == doctest::Approx(0.07536414490356185).epsilon(1e-10));
}

TEST_CASE("unsupervised objective: empty batch is an error") {
    const DivergenceSpec sl = DivergenceSpec::unsupervised(Divergence::sl, 2.0);
    Net net = constant_output_net(NetMode::unsupervised, 2, 1, 0.5);
    CHECK_THROWS_AS(unsupervised_objective(sl, net, constant_batch(0), false), std::invalid_argument);
}

TEST_CASE("unsupervised objective value at the optimal D equals the f-divergence") {
    const int nx = 3, ny = 2;
    const std::vector<double> joint = {0.10, 0.15, 0.20, 0.05, 0.30, 0.20};
    std::vector<double> py(ny, 0.0);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) py[j] += joint[i * ny + j];

    for (Divergence d : all_divergences()) {
        const DivergenceSpec spec = DivergenceSpec::unsupervised(d, nx);
        double value = 0.0;
        std::vector<double> q(nx * ny);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                const double pj = joint[i * ny + j], pp = py[j];
                value += objective_bin(spec, spec.optimal_d(pj, pp), pj, pp);
                q[i * ny + j] = pp / nx;
            }
        CHECK(value == doctest::Approx(numeric_f_divergence(spec, joint, q)).epsilon(1e-10));
    }
}

TEST_CASE("per-cell maximisation recovers the optimal discriminator table") {
    const std::vector<std::pair<double, double>> cells = {{0.1, 0.3}, {0.4, 0.2}, {0.25, 0.25}, {0.05, 0.6}};
    for (Divergence d : all_divergences()) {
        const DivergenceSpec spec = DivergenceSpec::unsupervised(d, 4.0);
        for (auto [pj, pp] : cells)
            CHECK(pointwise_optimal_d(spec, pj, pp) == doctest::Approx(spec.optimal_d(pj, pp)).epsilon(1e-6));
    }
}

TEST_CASE("per-cell integrand is concave around the optimum") {
    for (Divergence d : all_divergences()) {
        const DivergenceSpec spec = DivergenceSpec::unsupervised(d, 2.0);
        const double pj = 0.2, pp = 0.3;
        const double d_opt = spec.optimal_d(pj, pp);
        for (double offset : {-0.02, 0.0, 0.02}) {
            const double x = d_opt * (1.0 + offset);
            const double h = 1e-4 * std::max(1.0, x);
            const double dd = (objective_bin(spec, x - h, pj, pp) - 2.0 * objective_bin(spec, x, pj, pp) +
                               objective_bin(spec, x + h, pj, pp)) /
                              (h * h);
            CHECK(dd <= 1e-8);
        }
    }
}

TEST_CASE("supervised objective: frozen values") {
    SUBCASE("kl with softmax-style row") {
        Rng rng(3);
        NetConfig cfg;
        cfg.input_dim = 1;
        cfg.hidden = {};
        cfg.output_dim = 3;
        cfg.output_act = Activation::softmax;
        Net net = Net::make(NetMode::supervised, cfg, rng);
        net.layers()[0].w.fill(0.0);
        net.layers()[0].b = {std::log(0.7), std::log(0.2), std::log(0.1)};
        SupervisedBatch batch;
        batch.y = Matrix(4, 1, 0.0);
        batch.labels = {0, 0, 0, 0};
        batch.m = 3;
        const ObjectiveResult res =
            supervised_objective(DivergenceSpec::supervised(Divergence::kl), net, batch, false);
        CHECK(res.loss == doctest::Approx(1.3566749439387324).epsilon(1e-9));
    }

    SUBCASE("sl with constant outputs 0.5, four classes") {
        Net net = constant_output_net(NetMode::supervised, 2, 4, 0.5);
        SupervisedBatch batch;
        batch.y = Matrix(5, 2, 1.0);
        batch.labels = {0, 1, 2, 3, 1};
        batch.m = 4;
        const ObjectiveResult res =
            supervised_objective(DivergenceSpec::supervised(Divergence::sl), net, batch, false);
        CHECK(res.loss == doctest::Approx(5.272588722239781).epsilon(1e-12));
    }

    SUBCASE("label out of range") {
        Net net = constant_output_net(NetMode::supervised, 2, 4, 0.5);
        SupervisedBatch batch;
        batch.y = Matrix(2, 2, 1.0);
        batch.labels = {0, 4};
        batch.m = 4;
        CHECK_THROWS_AS(supervised_objective(DivergenceSpec::supervised(Divergence::sl), net, batch, false),
                        std::invalid_argument);
    }
}

TEST_CASE("supervised kl gradient equals cross-entropy gradient with softmax outputs") {
    Rng rng(9);
    NetConfig cfg;
    cfg.input_dim = 3;
    cfg.hidden = {20, 10};
    cfg.output_dim = 4;
    cfg.output_act = Activation::softmax;
    Net net = Net::make(NetMode::supervised, cfg, rng);

    std::normal_distribution<double> dist(0.0, 1.0);
    std::uniform_int_distribution<int> lab(0, 3);
    for (int trial = 0; trial < 5; ++trial) {
        SupervisedBatch batch;
        batch.m = 4;
        batch.y = Matrix(16, 3);
        for (size_t i = 0; i < batch.y.size(); ++i) batch.y.data()[i] = dist(rng);
        batch.labels.resize(16);
        for (int& l : batch.labels) l = lab(rng);

        const ObjectiveResult kl =
            supervised_objective(DivergenceSpec::supervised(Divergence::kl), net, batch, false);

        ForwardTape tape;
        const Matrix probs = net.forward(batch.y, false, nullptr, &tape);
        Matrix og(probs.rows(), probs.cols());
        og.fill(0.0);
        for (int i = 0; i < probs.rows(); ++i)
            og(i, batch.labels[i]) = -1.0 / (probs(i, batch.labels[i]) * probs.rows());
        const Gradients ce = net.backward(tape, og);

        for (size_t l = 0; l < ce.dw.size(); ++l) {
            for (size_t i = 0; i < ce.dw[l].size(); ++i)
                CHECK(std::abs(kl.grads.dw[l].data()[i] - ce.dw[l].data()[i]) < 1e-10);
            for (size_t i = 0; i < ce.db[l].size(); ++i)
                CHECK(std::abs(kl.grads.db[l][i] - ce.db[l][i]) < 1e-10);
        }
    }
}

TEST_CASE("marginal resample") {
    Rng rng(77);
    const int n = 1000;
    Matrix x(n, 1), y(n, 1);
    std::uniform_real_distribution<double> xs(0.5, 3.5);
    std::normal_distribution<double> ys(1.0, 2.0);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = xs(rng);
        y(i, 0) = ys(rng);
    }
    const Box box{{0.0}, {4.0}};
    const JointBatch batch = marginal_resample(x, y, box, rng);

    SUBCASE("x_marginal is uniform over the box") {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(batch.x_marginal(i, 0) >= 0.0);
            CHECK(batch.x_marginal(i, 0) <= 4.0);
            mean += batch.x_marginal(i, 0);
        }
        mean /= n;
        CHECK(std::abs(mean - 2.0) < 0.15);
    }

    SUBCASE("y_marginal is a permutation of y_joint") {
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = batch.y_marginal(i, 0);
            b[i] = y(i, 0);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }

    SUBCASE("degenerate box is an error") {
        const Box degenerate{{2.0}, {2.0}};
        CHECK_THROWS_AS(marginal_resample(x, y, degenerate, rng), std::invalid_argument);
    }
}

TEST_CASE("final activation per divergence") {
    CHECK(activation_for(DivergenceSpec::supervised(Divergence::gan)) == Activation::sigmoid);
    CHECK(activation_for(DivergenceSpec::supervised(Divergence::sl)) == Activation::sigmoid);
    CHECK(activation_for(DivergenceSpec::supervised(Divergence::kl)) == Activation::softplus);
    CHECK(activation_for(DivergenceSpec::supervised(Divergence::rkl)) == Activation::softplus);
    CHECK(activation_for(DivergenceSpec::supervised(Divergence::hd)) == Activation::softplus);
    CHECK(activation_for(DivergenceSpec::supervised(Divergence::p)) == Activation::softplus);
}

TEST_CASE("training objectives decrease under gradient steps") {
    Rng rng(5);
    std::normal_distribution<double> dist(0.0, 1.0);

    for (Divergence d : all_divergences()) {
        const DivergenceSpec uspec = DivergenceSpec::unsupervised(d, 4.0);
        NetConfig cfg;
        cfg.input_dim = 2;
        cfg.hidden = {16};
        cfg.output_dim = 1;
        cfg.output_act = activation_for(uspec);
        Net net = Net::make(NetMode::unsupervised, cfg, rng);
        Optimizer opt = Optimizer::adam(net, {.lr = 5e-3});

        Rng data(101);
        Matrix x(64, 1), y(64, 1);
        auto fresh = [&]() {
            for (int i = 0; i < 64; ++i) {
                x(i, 0) = std::abs(dist(data)) * 2.0;
                y(i, 0) = x(i, 0) + dist(data);
            }
            return marginal_resample(x, y, Box{{0.0}, {4.0}}, data);
        };
        double first = 0.0, last = 0.0;
        for (int step = 0; step < 60; ++step) {
            const ObjectiveResult res = unsupervised_objective(uspec, net, fresh(), false);
            if (step == 0) first = res.loss;
            last = res.loss;
            opt.step(net, res.grads);
        }
        CHECK(last < first);
    }
}
