#include "fdl/net.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdl/kernels.hpp"

namespace fdl {

namespace {

double stable_sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double stable_softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

void apply_activation(Matrix& m, Activation act, double slope) {
    const int n = m.rows(), c = m.cols();
    switch (act) {
        case Activation::linear: break;
        case Activation::leaky_relu:
            for (size_t i = 0; i < m.size(); ++i) {
                double& v = m.data()[i];
                if (v < 0.0) v *= slope;
            }
            break;
        case Activation::sigmoid:
            for (size_t i = 0; i < m.size(); ++i) m.data()[i] = stable_sigmoid(m.data()[i]);
            break;
        case Activation::softplus:
            for (size_t i = 0; i < m.size(); ++i) m.data()[i] = stable_softplus(m.data()[i]);
            break;
        case Activation::softmax:
            for (int i = 0; i < n; ++i) {
                auto row = m.row(i);
                double mx = row[0];
                for (int j = 1; j < c; ++j) mx = std::max(mx, row[j]);
                double sum = 0.0;
                for (int j = 0; j < c; ++j) {
                    row[j] = std::exp(row[j] - mx);
                    sum += row[j];
                }
                for (int j = 0; j < c; ++j) row[j] /= sum;
            }
            break;
    }
}

// d(post)/d(pre) applied to the incoming gradient, in place.
void backprop_activation(Matrix& grad, const Matrix& pre, const Matrix& post, Activation act, double slope) {
    const int n = grad.rows(), c = grad.cols();
    switch (act) {
        case Activation::linear: break;
        case Activation::leaky_relu:
            for (size_t i = 0; i < grad.size(); ++i)
                if (pre.data()[i] < 0.0) grad.data()[i] *= slope;
            break;
        case Activation::sigmoid:
            for (size_t i = 0; i < grad.size(); ++i) {
                const double a = post.data()[i];
                grad.data()[i] *= a * (1.0 - a);
            }
            break;
        case Activation::softplus:
            for (size_t i = 0; i < grad.size(); ++i) grad.data()[i] *= stable_sigmoid(pre.data()[i]);
            break;
        case Activation::softmax:
            for (int i = 0; i < n; ++i) {
                auto g = grad.row(i);
                auto s = post.row(i);
                double dot = 0.0;
                for (int j = 0; j < c; ++j) dot += g[j] * s[j];
                for (int j = 0; j < c; ++j) g[j] = s[j] * (g[j] - dot);
            }
            break;
    }
}

}  // namespace

Activation activation_from_name(std::string_view name) {
    if (name == "linear") return Activation::linear;
    if (name == "leaky_relu") return Activation::leaky_relu;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "softplus") return Activation::softplus;
    if (name == "softmax") return Activation::softmax;
    throw std::invalid_argument("unknown activation: " + std::string(name));
}

std::string_view activation_name(Activation a) {
    switch (a) {
        case Activation::linear: return "linear";
        case Activation::leaky_relu: return "leaky_relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::softplus: return "softplus";
        case Activation::softmax: return "softmax";
    }
    return "?";
}

Net Net::make(NetMode mode, const NetConfig& cfg, Rng& rng) {
    if (cfg.input_dim < 1 || cfg.output_dim < 1) throw std::invalid_argument("net dims must be positive");
    if (mode == NetMode::unsupervised && cfg.output_dim != 1)
        throw std::invalid_argument("unsupervised nets have a single output");
    if (mode == NetMode::supervised && cfg.output_dim < 2)
        throw std::invalid_argument("supervised nets need at least two outputs");
    if (cfg.hidden_act == Activation::softmax) throw std::invalid_argument("softmax is final-layer only");
    if (!(cfg.dropout >= 0.0 && cfg.dropout < 1.0)) throw std::invalid_argument("dropout must be in [0,1)");

    Net net;
    net.mode_ = mode;
    net.dropout_ = cfg.dropout;
    net.leaky_slope_ = cfg.leaky_slope;

    std::vector<int> dims;
    dims.push_back(cfg.input_dim);
    for (int h : cfg.hidden) {
        if (h < 1) throw std::invalid_argument("hidden width must be positive");
        dims.push_back(h);
    }
    dims.push_back(cfg.output_dim);

    for (size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer layer;
        const int fan_in = dims[l], fan_out = dims[l + 1];
        const bool last = (l + 2 == dims.size());
        layer.act = last ? cfg.output_act : cfg.hidden_act;
        // He-uniform for leaky_relu, Xavier-uniform otherwise.
        double bound;
        if (!last && cfg.hidden_act == Activation::leaky_relu)
            bound = std::sqrt(6.0 / fan_in);
        else
            bound = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        layer.w = Matrix(fan_in, fan_out);
        for (size_t i = 0; i < layer.w.size(); ++i) layer.w.data()[i] = dist(rng);
        layer.b.assign(fan_out, 0.0);
        net.layers_.push_back(std::move(layer));
    }
    return net;
}

Matrix Net::forward(const Matrix& x, bool train, Rng* rng, ForwardTape* tape) const {
    if (x.cols() != input_dim()) throw std::invalid_argument("input width does not match first layer");
    if (train && dropout_ > 0.0 && rng == nullptr)
        throw std::invalid_argument("training forward with dropout needs an rng");

    if (tape) {
        tape->input = x;
        tape->pre.clear();
        tape->post.clear();
        tape->mask.clear();
        tape->train = train;
    }

    Matrix cur = x;
    const int n = x.rows();
    for (size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        Matrix z(n, layer.w.cols());
        kernels::matmul(cur.data(), layer.w.data(), z.data(), n, layer.w.rows(), layer.w.cols());
        for (int i = 0; i < n; ++i) {
            auto row = z.row(i);
            for (int j = 0; j < z.cols(); ++j) row[j] += layer.b[j];
        }
        if (tape) tape->pre.push_back(z);
        apply_activation(z, layer.act, leaky_slope_);

        const bool hidden = (l + 1 < layers_.size());
        if (hidden && train && dropout_ > 0.0) {
            Matrix mask(n, z.cols());
            std::bernoulli_distribution keep(1.0 - dropout_);
            const double scale = 1.0 / (1.0 - dropout_);
            for (size_t i = 0; i < mask.size(); ++i) {
                const double v = keep(*rng) ? scale : 0.0;
                mask.data()[i] = v;
                z.data()[i] *= v;
            }
            if (tape) tape->mask.push_back(std::move(mask));
        } else if (tape) {
            tape->mask.emplace_back();
        }
        if (tape) tape->post.push_back(z);
        cur = std::move(z);
    }
    return cur;
}

Gradients Net::zero_gradients() const {
    Gradients g;
    for (const Layer& l : layers_) {
        g.dw.emplace_back(l.w.rows(), l.w.cols());
        g.db.emplace_back(l.b.size(), 0.0);
    }
    return g;
}

void Net::accumulate(Gradients& into, const Gradients& from, double scale) {
    for (size_t l = 0; l < into.dw.size(); ++l) {
        for (size_t i = 0; i < into.dw[l].size(); ++i) into.dw[l].data()[i] += scale * from.dw[l].data()[i];
        for (size_t i = 0; i < into.db[l].size(); ++i) into.db[l][i] += scale * from.db[l][i];
    }
}

Gradients Net::backward(const ForwardTape& tape, const Matrix& output_grad) const {
    if (tape.pre.size() != layers_.size()) throw std::invalid_argument("tape does not match this net");
    if (!output_grad.same_shape(tape.post.back())) throw std::invalid_argument("output gradient shape mismatch");

    Gradients grads = zero_gradients();
    Matrix delta = output_grad;
    for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
        const Layer& layer = layers_[l];
        const bool hidden = (l + 1 < static_cast<int>(layers_.size()));
        if (hidden && tape.train && !tape.mask[l].empty()) {
            for (size_t i = 0; i < delta.size(); ++i) delta.data()[i] *= tape.mask[l].data()[i];
        }
        // Undo dropout scaling on post for the activation derivative: the
        // recorded post includes the mask, the activation derivative must not.
        if (hidden && tape.train && !tape.mask[l].empty() &&
            (layer.act == Activation::sigmoid || layer.act == Activation::softmax)) {
            Matrix raw = tape.pre[l];
            apply_activation(raw, layer.act, leaky_slope_);
            backprop_activation(delta, tape.pre[l], raw, layer.act, leaky_slope_);
        } else {
            backprop_activation(delta, tape.pre[l], tape.post[l], layer.act, leaky_slope_);
        }

        const Matrix& prev = (l == 0) ? tape.input : tape.post[l - 1];
        kernels::matmul_at_b(prev.data(), delta.data(), grads.dw[l].data(), prev.rows(), prev.cols(), delta.cols());
        for (int i = 0; i < delta.rows(); ++i) {
            auto row = delta.row(i);
            for (int j = 0; j < delta.cols(); ++j) grads.db[l][j] += row[j];
        }
        if (l > 0) {
            Matrix next(delta.rows(), layer.w.rows());
            kernels::matmul_a_bt(delta.data(), layer.w.data(), next.data(), delta.rows(), layer.w.cols(),
                                 layer.w.rows());
            delta = std::move(next);
        }
    }
    return grads;
}

bool Net::all_finite() const {
    for (const Layer& l : layers_) {
        for (size_t i = 0; i < l.w.size(); ++i)
            if (!std::isfinite(l.w.data()[i])) return false;
        for (double v : l.b)
            if (!std::isfinite(v)) return false;
    }
    return true;
}

void Net::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
    out.precision(17);
    out << "fdlnet 1\n";
    out << (mode_ == NetMode::supervised ? "supervised" : "unsupervised") << ' ' << dropout_ << ' ' << leaky_slope_
        << '\n';
    out << layers_.size() << '\n';
    for (const Layer& l : layers_) {
        out << l.w.rows() << ' ' << l.w.cols() << ' ' << activation_name(l.act) << '\n';
        for (size_t i = 0; i < l.w.size(); ++i) out << l.w.data()[i] << (i + 1 == l.w.size() ? '\n' : ' ');
        for (size_t i = 0; i < l.b.size(); ++i) out << l.b[i] << (i + 1 == l.b.size() ? '\n' : ' ');
    }
    if (!out) throw std::runtime_error("short write on checkpoint: " + path.string());
}

Net Net::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path.string());
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "fdlnet" || version != 1) throw std::runtime_error("unrecognised checkpoint header");
    std::string mode;
    Net net;
    in >> mode >> net.dropout_ >> net.leaky_slope_;
    if (mode == "supervised")
        net.mode_ = NetMode::supervised;
    else if (mode == "unsupervised")
        net.mode_ = NetMode::unsupervised;
    else
        throw std::runtime_error("unrecognised checkpoint mode");
    size_t count = 0;
    in >> count;
    for (size_t l = 0; l < count; ++l) {
        int rows = 0, cols = 0;
        std::string act;
        in >> rows >> cols >> act;
        Layer layer;
        layer.act = activation_from_name(act);
        layer.w = Matrix(rows, cols);
        for (size_t i = 0; i < layer.w.size(); ++i) in >> layer.w.data()[i];
        layer.b.assign(cols, 0.0);
        for (int i = 0; i < cols; ++i) in >> layer.b[i];
        net.layers_.push_back(std::move(layer));
    }
    if (!in) throw std::runtime_error("truncated checkpoint: " + path.string());
    return net;
}

}  // namespace fdl
