#include "fdl/toy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fdl/errors.hpp"

namespace fdl {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace

ToyKind toy_kind_from_name(std::string_view name) {
    if (name == "exp" || name == "exponential") return ToyKind::exponential;
    if (name == "gauss" || name == "gaussian") return ToyKind::gaussian;
    throw std::invalid_argument("unknown toy task: " + std::string(name));
}

std::string_view toy_kind_name(ToyKind k) { return k == ToyKind::exponential ? "exp" : "gauss"; }

ToyTaskConfig ToyTaskConfig::exponential_default() {
    ToyTaskConfig cfg;
    cfg.kind = ToyKind::exponential;
    cfg.lambda = 1.0;
    // Truncate X at its 99.9th percentile so the uniform marginal has finite measure.
    cfg.support_box = {{0.0}, {-std::log(1e-3) / cfg.lambda}};
    cfg.x_lo = 0.0;
    cfg.x_hi = 4.0;
    cfg.y_lo = 0.2;
    cfg.y_hi = 4.0;
    return cfg;
}

ToyTaskConfig ToyTaskConfig::gaussian_default() {
    ToyTaskConfig cfg;
    cfg.kind = ToyKind::gaussian;
    cfg.sigma_x = 1.0;
    cfg.sigma_n = 1.0;
    cfg.support_box = {{-3.0}, {3.0}};
    cfg.x_lo = -3.0;
    cfg.x_hi = 3.0;
    cfg.y_lo = -3.0;
    cfg.y_hi = 3.0;
    return cfg;
}

std::pair<Matrix, Matrix> sample_task(const ToyTaskConfig& cfg, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample count must be positive");
    cfg.support_box.validate();
    Matrix x(n, 1), y(n, 1);
    if (cfg.kind == ToyKind::exponential) {
        std::exponential_distribution<double> ex(cfg.lambda);
        for (int i = 0; i < n; ++i) {
            double xv;
            do {
                xv = ex(rng);
            } while (xv > cfg.support_box.hi[0]);
            x(i, 0) = xv;
            y(i, 0) = xv + ex(rng);
        }
    } else {
        std::normal_distribution<double> gx(0.0, cfg.sigma_x), gn(0.0, cfg.sigma_n);
        for (int i = 0; i < n; ++i) {
            const double xv = gx(rng);
            x(i, 0) = xv;
            y(i, 0) = xv + gn(rng);
        }
    }
    return {x, y};
}

double exp_posterior_closed(double x, double y) {
    if (!(y > 0.0)) throw std::domain_error("exponential posterior needs y > 0");
    return (x > 0.0 && x < y) ? 1.0 / y : 0.0;
}

double gauss_posterior_closed(double x, double y, double sigma_x, double sigma_n) {
    if (!(sigma_x > 0.0) || !(sigma_n > 0.0)) throw std::invalid_argument("sigmas must be positive");
    const double var_y = sigma_x * sigma_x + sigma_n * sigma_n;
    const double k = var_y / (sigma_x * sigma_x);
    const double rk = std::sqrt(k);
    const double coeff = std::sqrt(var_y / (sigma_n * sigma_n * sigma_x * sigma_x)) /
                         std::sqrt(2.0 * std::numbers::pi);
    const double arg = rk * x - y / rk;
    return coeff * std::exp(-arg * arg / (2.0 * sigma_n * sigma_n));
}

DivergenceSpec toy_spec(const ToyTaskConfig& cfg, Divergence d) {
    cfg.support_box.validate();
    return DivergenceSpec::unsupervised(d, cfg.support_box.measure());
}

PosteriorGrid eval_grid(const ToyTaskConfig& cfg, const DivergenceSpec& spec, const Net& net) {
    PosteriorGrid grid;
    grid.x_axis = linspace(cfg.x_lo, cfg.x_hi, cfg.grid_x);
    grid.y_axis = linspace(cfg.y_lo, cfg.y_hi, cfg.grid_y);
    grid.estimate = Matrix(cfg.grid_x, cfg.grid_y);
    grid.oracle = Matrix(cfg.grid_x, cfg.grid_y);

    Matrix inputs(cfg.grid_x * cfg.grid_y, 2);
    for (int ix = 0; ix < cfg.grid_x; ++ix)
        for (int iy = 0; iy < cfg.grid_y; ++iy) {
            inputs(ix * cfg.grid_y + iy, 0) = grid.x_axis[ix];
            inputs(ix * cfg.grid_y + iy, 1) = grid.y_axis[iy];
        }
    const Matrix d_out = net.forward(inputs);

    double sse = 0.0;
    long count = 0;
    for (int ix = 0; ix < cfg.grid_x; ++ix)
        for (int iy = 0; iy < cfg.grid_y; ++iy) {
            const double x = grid.x_axis[ix], y = grid.y_axis[iy];
            const double est = spec.posterior_from_d(clamp_to_domain(spec, d_out(ix * cfg.grid_y + iy, 0)));
            const double oracle = cfg.kind == ToyKind::exponential
                                      ? exp_posterior_closed(x, y)
                                      : gauss_posterior_closed(x, y, cfg.sigma_x, cfg.sigma_n);
            grid.estimate(ix, iy) = est;
            grid.oracle(ix, iy) = oracle;
            const bool in_support = cfg.kind == ToyKind::exponential ? oracle > 0.0 : true;
            if (in_support) {
                const double diff = est - oracle;
                sse += diff * diff;
                ++count;
            }
        }
    grid.n_mse = count;
    grid.mse = count > 0 ? sse / count : 0.0;
    return grid;
}

ToyFitResult fit_toy(const ToyTaskConfig& cfg, Divergence d) {
    const DivergenceSpec spec = toy_spec(cfg, d);

    NetConfig net_cfg;
    net_cfg.input_dim = 2;
    net_cfg.hidden = cfg.train.hidden;
    net_cfg.output_dim = 1;
    net_cfg.output_act = activation_for(spec);
    net_cfg.dropout = cfg.train.dropout;

    Rng init_rng = substream(cfg.seed, "toy/init");
    Rng data_rng = substream(cfg.seed, "toy/data");
    Rng batch_rng = substream(cfg.seed, "toy/batch");
    Rng drop_rng = substream(cfg.seed, "toy/dropout");

    Net net = Net::make(NetMode::unsupervised, net_cfg, init_rng);
    TrainConfig tc = cfg.train;
    tc.seed = cfg.seed;
    Optimizer opt = make_optimizer(net, tc);

    const auto [xs, ys] = sample_task(cfg, cfg.n_train, data_rng);

    std::uniform_int_distribution<int> pick(0, cfg.n_train - 1);
    Matrix xb(tc.batch, 1), yb(tc.batch, 1);
    for (int step = 0; step < tc.steps; ++step) {
        // Simple two-milestone decay; the landscapes here benefit from a
        // finishing phase at a lower rate.
        if (step == (tc.steps * 3) / 5 || step == (tc.steps * 17) / 20)
            opt.set_learning_rate(opt.learning_rate() * 0.3);
        for (int i = 0; i < tc.batch; ++i) {
            const int idx = pick(batch_rng);
            xb(i, 0) = xs(idx, 0);
            yb(i, 0) = ys(idx, 0);
        }
        const JointBatch batch = marginal_resample(xb, yb, cfg.support_box, batch_rng);
        ObjectiveResult res = unsupervised_objective(spec, net, batch, true, &drop_rng);
        opt.step(net, res.grads);
    }
    if (!net.all_finite()) throw TrainingError("toy discriminator diverged");

    ToyFitResult out{std::move(net), {}};
    out.grid = eval_grid(cfg, spec, out.net);
    return out;
}

std::string grid_csv(const PosteriorGrid& grid) {
    std::ostringstream os;
    os.precision(10);
    os << "x,y,estimate,oracle\n";
    for (size_t ix = 0; ix < grid.x_axis.size(); ++ix)
        for (size_t iy = 0; iy < grid.y_axis.size(); ++iy)
            os << grid.x_axis[ix] << ',' << grid.y_axis[iy] << ',' << grid.estimate(ix, iy) << ','
               << grid.oracle(ix, iy) << '\n';
    return os.str();
}

}  // namespace fdl
