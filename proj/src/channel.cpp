#include "fdl/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fdl/errors.hpp"
#include "fdl/objectives.hpp"
#include "fdl/posterior.hpp"

namespace fdl {

namespace {

constexpr int kEvalChunk = 1 << 14;

std::vector<double> scaled_pam_amplitudes(const std::vector<double>& prior) {
    const std::vector<double> raw = {-3.0, -1.0, 1.0, 3.0};
    double power = 0.0;
    for (size_t i = 0; i < raw.size(); ++i) power += prior[i] * raw[i] * raw[i];
    std::vector<double> out(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] / std::sqrt(power);
    return out;
}

double sigma_for(double snr_db) { return std::sqrt(std::pow(10.0, -snr_db / 10.0)); }

// argmax of per-symbol scores; ties to the lowest index.
std::vector<int> score_decode(const ChannelModel& model, const Matrix& obs, bool use_prior) {
    const int n = obs.rows();
    const int m = model.num_symbols();
    const int dim = model.obs_dim();
    if (obs.cols() != dim) throw std::invalid_argument("observation width mismatch");

    std::vector<std::vector<double>> mu(m);
    std::vector<double> log_prior(m, 0.0);
    for (int s = 0; s < m; ++s) {
        mu[s] = model.clean_rx(s);
        if (use_prior) log_prior[s] = std::log(model.prior[s]);
    }
    const double inv_two_var = 1.0 / (2.0 * model.noise_sigma * model.noise_sigma);

    std::vector<int> out(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        auto row = obs.row(i);
        int best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (int s = 0; s < m; ++s) {
            double dist2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                const double diff = row[d] - mu[s][d];
                dist2 += diff * diff;
            }
            const double score = log_prior[s] - dist2 * inv_two_var;
            if (score > best_score) {
                best_score = score;
                best = s;
            }
        }
        out[i] = best;
    }
    return out;
}

}  // namespace

ChannelKind channel_kind_from_name(std::string_view name) {
    if (name == "pam4" || name == "pam4_nonlinear") return ChannelKind::pam4_nonlinear;
    if (name == "awgn" || name == "awgn_vector") return ChannelKind::awgn_vector;
    if (name == "pam4-nonuniform" || name == "pam4_nonuniform") return ChannelKind::pam4_nonuniform;
    throw std::invalid_argument("unknown channel kind: " + std::string(name));
}

std::string_view channel_kind_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::pam4_nonlinear: return "pam4";
        case ChannelKind::awgn_vector: return "awgn";
        case ChannelKind::pam4_nonuniform: return "pam4-nonuniform";
    }
    return "?";
}

double pam_nonlinearity(double x) { return (x >= 0.0 ? 1.0 : -1.0) * std::sqrt(std::abs(x)); }

std::vector<double> ChannelModel::clean_rx(int symbol) const {
    if (symbol < 0 || symbol >= num_symbols()) throw std::invalid_argument("symbol index out of range");
    std::vector<double> out = tx_points[symbol];
    if (kind != ChannelKind::awgn_vector)
        for (double& v : out) v = pam_nonlinearity(v);
    return out;
}

ChannelModel ChannelModel::at_snr(double snr) const {
    ChannelModel m = *this;
    m.snr_db = snr;
    m.noise_sigma = sigma_for(snr);
    return m;
}

ChannelModel ChannelModel::pam4_nonlinear(double snr_db) {
    ChannelModel m;
    m.kind = ChannelKind::pam4_nonlinear;
    m.prior.assign(4, 0.25);
    for (double a : scaled_pam_amplitudes(m.prior)) m.tx_points.push_back({a});
    m.snr_db = snr_db;
    m.noise_sigma = sigma_for(snr_db);
    return m;
}

ChannelModel ChannelModel::pam4_nonuniform(double snr_db, double rare_mass) {
    if (!(rare_mass > 0.0 && rare_mass < 1.0)) throw std::invalid_argument("rare_mass must be in (0,1)");
    ChannelModel m;
    m.kind = ChannelKind::pam4_nonuniform;
    m.prior = {rare_mass / 2.0, rare_mass / 2.0, (1.0 - rare_mass) / 2.0, (1.0 - rare_mass) / 2.0};
    for (double a : scaled_pam_amplitudes(m.prior)) m.tx_points.push_back({a});
    m.snr_db = snr_db;
    m.noise_sigma = sigma_for(snr_db);
    return m;
}

ChannelModel ChannelModel::awgn_vector(int dim, double snr_db) {
    if (dim < 1 || dim > 16) throw std::invalid_argument("awgn dimension out of range");
    ChannelModel m;
    m.kind = ChannelKind::awgn_vector;
    const int count = 1 << dim;
    m.prior.assign(count, 1.0 / count);
    for (int code = 0; code < count; ++code) {
        std::vector<double> word(dim);
        for (int b = 0; b < dim; ++b) word[b] = (code >> b) & 1 ? 1.0 : -1.0;
        m.tx_points.push_back(std::move(word));
    }
    m.snr_db = snr_db;
    m.noise_sigma = sigma_for(snr_db);
    return m;
}

ChannelModel ChannelModel::make(ChannelKind kind, double snr_db, int awgn_dim) {
    switch (kind) {
        case ChannelKind::pam4_nonlinear: return pam4_nonlinear(snr_db);
        case ChannelKind::pam4_nonuniform: return pam4_nonuniform(snr_db);
        case ChannelKind::awgn_vector: return awgn_vector(awgn_dim, snr_db);
    }
    throw std::logic_error("unreachable");
}

std::vector<int> draw_symbols(const ChannelModel& model, long n, Rng& rng) {
    std::discrete_distribution<int> dist(model.prior.begin(), model.prior.end());
    std::vector<int> out(n);
    for (long i = 0; i < n; ++i) out[i] = dist(rng);
    return out;
}

Matrix transmit(const ChannelModel& model, const std::vector<int>& symbols, Rng& rng) {
    const int dim = model.obs_dim();
    Matrix obs(static_cast<int>(symbols.size()), dim);
    std::normal_distribution<double> noise(0.0, model.noise_sigma);
    for (size_t i = 0; i < symbols.size(); ++i) {
        const std::vector<double> mu = model.clean_rx(symbols[i]);
        auto row = obs.row(i);
        for (int d = 0; d < dim; ++d) row[d] = mu[d] + noise(rng);
    }
    return obs;
}

std::vector<int> map_genie_decode(const ChannelModel& model, const Matrix& obs) {
    return score_decode(model, obs, true);
}

std::vector<int> maxl_decode(const ChannelModel& model, const Matrix& obs) {
    return score_decode(model, obs, false);
}

Net train_neural_decoder(const ChannelModel& model, const DivergenceSpec& spec, const NeuralDecoderConfig& cfg) {
    const int m = model.num_symbols();
    NetConfig net_cfg;
    net_cfg.input_dim = model.obs_dim();
    net_cfg.hidden = cfg.train.hidden;
    net_cfg.output_dim = m;
    net_cfg.output_act = cfg.final_activation.value_or(activation_for(spec));
    net_cfg.dropout = cfg.train.dropout;

    Rng init_rng = substream(cfg.train.seed, "decoder/init");
    Rng data_rng = substream(cfg.train.seed, "decoder/data");
    Rng drop_rng = substream(cfg.train.seed, "decoder/dropout");

    Net net = Net::make(NetMode::supervised, net_cfg, init_rng);
    Optimizer opt = make_optimizer(net, cfg.train);

    SupervisedBatch batch;
    batch.m = m;
    for (int step = 0; step < cfg.train.steps; ++step) {
        batch.labels = draw_symbols(model, cfg.train.batch, data_rng);
        batch.y = transmit(model, batch.labels, data_rng);
        ObjectiveResult res = supervised_objective(spec, net, batch, true, &drop_rng);
        opt.step(net, res.grads);
    }
    if (!net.all_finite()) throw TrainingError("decoder weights diverged");
    return net;
}

Matrix decoder_posteriors(const DivergenceSpec& spec, const Net& net, const Matrix& obs) {
    Matrix post(obs.rows(), net.output_dim());
    for (int start = 0; start < obs.rows(); start += kEvalChunk) {
        const int count = std::min<int>(kEvalChunk, obs.rows() - start);
        Matrix chunk(count, obs.cols());
        for (int i = 0; i < count; ++i) {
            auto src = obs.row(start + i);
            auto dst = chunk.row(i);
            std::copy(src.begin(), src.end(), dst.begin());
        }
        Matrix d = net.forward(chunk);
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < d.cols(); ++j)
                post(start + i, j) = spec.posterior_from_d(clamp_to_domain(spec, d(i, j)));
    }
    return post;
}

std::vector<int> neural_decode(const DivergenceSpec& spec, const Net& net, const Matrix& obs) {
    const Matrix post = decoder_posteriors(spec, net, obs);
    std::vector<int> out(post.rows());
    for (int i = 0; i < post.rows(); ++i) out[i] = map_classify(post.row(i));
    return out;
}

SerCurve snr_sweep(const ChannelModel& base, const SweepConfig& cfg) {
    if (cfg.snr_db.empty()) throw std::invalid_argument("empty SNR grid");
    if (cfg.n_symbols < 1) throw std::invalid_argument("n_symbols must be positive");

    SerCurve curve;
    curve.snr_db = cfg.snr_db;
    curve.decoders = cfg.decoders;
    curve.n_symbols = cfg.n_symbols;
    curve.seed = cfg.seed;
    for (const std::string& name : cfg.decoders) {
        curve.ser[name] = {};
        curve.stderr_[name] = {};
    }

    for (size_t pt = 0; pt < cfg.snr_db.size(); ++pt) {
        const ChannelModel model = base.at_snr(cfg.snr_db[pt]);
        Rng rng = substream(cfg.seed, "sweep/point", pt);
        const std::vector<int> symbols = draw_symbols(model, cfg.n_symbols, rng);
        const Matrix obs = transmit(model, symbols, rng);

        for (const std::string& name : cfg.decoders) {
            std::vector<int> decisions;
            if (name == "maxl") {
                decisions = maxl_decode(model, obs);
            } else if (name == "map_genie") {
                decisions = map_genie_decode(model, obs);
            } else {
                const DivergenceSpec spec = DivergenceSpec::supervised(divergence_from_name(name));
                NeuralDecoderConfig ncfg = cfg.neural;
                ncfg.train.seed = splitmix64(cfg.seed ^ fnv1a64(name)) + pt;
                const Net net = train_neural_decoder(model, spec, ncfg);
                decisions = neural_decode(spec, net, obs);
            }
            long errors = 0;
            for (long i = 0; i < cfg.n_symbols; ++i)
                if (decisions[i] != symbols[i]) ++errors;
            const double ser = static_cast<double>(errors) / cfg.n_symbols;
            curve.ser[name].push_back(ser);
            curve.stderr_[name].push_back(std::sqrt(ser * (1.0 - ser) / cfg.n_symbols));
        }
    }
    return curve;
}

std::string ser_curve_csv(const SerCurve& curve) {
    std::ostringstream os;
    os.precision(10);
    os << "snr_db,decoder,ser,stderr,n_symbols,seed\n";
    for (size_t pt = 0; pt < curve.snr_db.size(); ++pt)
        for (const std::string& name : curve.decoders)
            os << curve.snr_db[pt] << ',' << name << ',' << curve.ser.at(name)[pt] << ','
               << curve.stderr_.at(name)[pt] << ',' << curve.n_symbols << ',' << curve.seed << '\n';
    return os.str();
}

}  // namespace fdl
