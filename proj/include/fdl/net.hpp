#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fdl/matrix.hpp"
#include "fdl/rng.hpp"

namespace fdl {

enum class Activation { linear, leaky_relu, sigmoid, softplus, softmax };

Activation activation_from_name(std::string_view name);
std::string_view activation_name(Activation a);

enum class NetMode { supervised, unsupervised };

struct Layer {
    Matrix w;               // [in x out]
    std::vector<double> b;  // [out]
    Activation act = Activation::linear;
};

struct NetConfig {
    int input_dim = 1;
    std::vector<int> hidden = {100, 100};
    int output_dim = 1;
    Activation hidden_act = Activation::leaky_relu;
    Activation output_act = Activation::linear;
    double leaky_slope = 0.01;
    double dropout = 0.0;  // per hidden layer, inverted dropout
};

/// Activation record of one forward pass; everything backward() needs.
struct ForwardTape {
    Matrix input;
    std::vector<Matrix> pre;   // pre-activation per layer
    std::vector<Matrix> post;  // post-activation (after dropout) per layer
    std::vector<Matrix> mask;  // dropout scale masks (empty when unused)
    bool train = false;
};

struct Gradients {
    std::vector<Matrix> dw;
    std::vector<std::vector<double>> db;
};

/// Dense feedforward discriminator. Supervised nets map an observation to one
/// output per class; unsupervised nets map a concatenated (x, y) row to a
/// scalar. Softmax is only accepted as the final activation.
class Net {
public:
    Net() = default;

    /// He-uniform fan-in init for leaky_relu layers, Xavier-uniform otherwise.
    static Net make(NetMode mode, const NetConfig& cfg, Rng& rng);

    Matrix forward(const Matrix& x, bool train = false, Rng* rng = nullptr, ForwardTape* tape = nullptr) const;
    Gradients backward(const ForwardTape& tape, const Matrix& output_grad) const;

    Gradients zero_gradients() const;
    static void accumulate(Gradients& into, const Gradients& from, double scale = 1.0);

    NetMode mode() const { return mode_; }
    int input_dim() const { return layers_.front().w.rows(); }
    int output_dim() const { return layers_.back().w.cols(); }
    int layer_count() const { return static_cast<int>(layers_.size()); }
    const std::vector<Layer>& layers() const { return layers_; }
    std::vector<Layer>& layers() { return layers_; }
    double dropout() const { return dropout_; }
    double leaky_slope() const { return leaky_slope_; }

    bool all_finite() const;

    /// Versioned plain-text checkpoint: shapes, activations, then row-major
    /// weights and biases. Format documented in the README.
    void save(const std::filesystem::path& path) const;
    static Net load(const std::filesystem::path& path);

private:
    NetMode mode_ = NetMode::unsupervised;
    double dropout_ = 0.0;
    double leaky_slope_ = 0.01;
    std::vector<Layer> layers_;
};

}  // namespace fdl
