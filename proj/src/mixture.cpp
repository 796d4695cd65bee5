#include "fdl/mixture.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fdl/errors.hpp"
#include "fdl/objectives.hpp"
#include "fdl/posterior.hpp"

namespace fdl {

namespace {

double gauss2_pdf(const std::array<double, 2>& mean, const Cov2& cov, double y0, double y1) {
    const double det = cov.det();
    if (!(det > 0.0)) throw std::invalid_argument("covariance must be positive definite");
    const double d0 = y0 - mean[0], d1 = y1 - mean[1];
    // Inverse of [[a, b], [b, c]] is [[c, -b], [-b, a]] / det.
    const double quad = (cov.c * d0 * d0 - 2.0 * cov.b * d0 * d1 + cov.a * d1 * d1) / det;
    return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

}  // namespace

std::pair<Matrix, std::vector<int>> sample_mixture(const MixtureConfig& cfg, int n, Rng& rng) {
    std::discrete_distribution<int> comp(cfg.priors.begin(), cfg.priors.end());
    std::normal_distribution<double> unit(0.0, 1.0);
    Matrix y(n, 2);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
        const int c = comp(rng);
        labels[i] = c;
        const Cov2& cov = cfg.covs[c];
        // Cholesky of the 2x2 covariance.
        const double l00 = std::sqrt(cov.a);
        const double l10 = cov.b / l00;
        const double l11 = std::sqrt(cov.c - l10 * l10);
        const double z0 = unit(rng), z1 = unit(rng);
        y(i, 0) = cfg.means[c][0] + l00 * z0;
        y(i, 1) = cfg.means[c][1] + l10 * z0 + l11 * z1;
    }
    return {y, labels};
}

std::array<double, 3> bayes_scores(const MixtureConfig& cfg, double y0, double y1) {
    std::array<double, 3> s{};
    for (int c = 0; c < 3; ++c) s[c] = cfg.priors[c] * gauss2_pdf(cfg.means[c], cfg.covs[c], y0, y1);
    return s;
}

std::vector<int> bayes_classify(const MixtureConfig& cfg, const Matrix& y) {
    std::vector<int> out(y.rows());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < y.rows(); ++i) {
        const auto s = bayes_scores(cfg, y(i, 0), y(i, 1));
        out[i] = map_classify(s);
    }
    return out;
}

Net train_mixture_net(const MixtureConfig& cfg, const DivergenceSpec& spec, uint64_t seed) {
    NetConfig net_cfg;
    net_cfg.input_dim = 2;
    net_cfg.hidden = cfg.train.hidden;
    net_cfg.output_dim = 3;
    net_cfg.output_act = activation_for(spec);
    net_cfg.dropout = cfg.train.dropout;

    Rng init_rng = substream(seed, "mixture/init");
    Rng data_rng = substream(seed, "mixture/data");
    Rng drop_rng = substream(seed, "mixture/dropout");

    Net net = Net::make(NetMode::supervised, net_cfg, init_rng);
    Optimizer opt = make_optimizer(net, cfg.train);

    SupervisedBatch batch;
    batch.m = 3;
    for (int step = 0; step < cfg.train.steps; ++step) {
        if (step == (cfg.train.steps * 3) / 5 || step == (cfg.train.steps * 17) / 20)
            opt.set_learning_rate(opt.learning_rate() * 0.3);
        auto [y, labels] = sample_mixture(cfg, cfg.train.batch, data_rng);
        batch.y = std::move(y);
        batch.labels = std::move(labels);
        ObjectiveResult res = supervised_objective(spec, net, batch, true, &drop_rng);
        opt.step(net, res.grads);
    }
    if (!net.all_finite()) throw TrainingError("mixture net diverged");
    return net;
}

MixtureResult mixture_bench(const MixtureConfig& cfg, const std::vector<Divergence>& divergences) {
    MixtureResult result;
    Rng test_rng = substream(cfg.seed, "mixture/test");
    const auto [y_test, labels] = sample_mixture(cfg, cfg.n_test, test_rng);

    const std::vector<int> bayes = bayes_classify(cfg, y_test);
    long correct = 0;
    double expected = 0.0;
    for (int i = 0; i < cfg.n_test; ++i) {
        if (bayes[i] == labels[i]) ++correct;
        const auto s = bayes_scores(cfg, y_test(i, 0), y_test(i, 1));
        const double total = s[0] + s[1] + s[2];
        expected += s[map_classify(s)] / total;
    }
    result.bayes_accuracy = static_cast<double>(correct) / cfg.n_test;
    result.bayes_expected_accuracy = expected / cfg.n_test;

    for (Divergence d : divergences) {
        const DivergenceSpec spec = DivergenceSpec::supervised(d);
        const Net net = train_mixture_net(cfg, spec, splitmix64(cfg.seed ^ fnv1a64(divergence_name(d))));
        const Matrix d_out = net.forward(y_test);
        long hits = 0;
        for (int i = 0; i < cfg.n_test; ++i) {
            std::array<double, 3> post{};
            for (int j = 0; j < 3; ++j) post[j] = spec.posterior_from_d(clamp_to_domain(spec, d_out(i, j)));
            if (map_classify(post) == labels[i]) ++hits;
        }
        result.accuracy[std::string(divergence_name(d))] = static_cast<double>(hits) / cfg.n_test;
    }
    return result;
}

}  // namespace fdl
