#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdl/divergence.hpp"
#include "fdl/matrix.hpp"
#include "fdl/net.hpp"
#include "fdl/rng.hpp"
#include "fdl/training.hpp"

namespace fdl {

enum class ChannelKind { pam4_nonlinear, awgn_vector, pam4_nonuniform };

ChannelKind channel_kind_from_name(std::string_view name);
std::string_view channel_kind_name(ChannelKind k);

/// sgn(x) * sqrt(|x|): the memoryless nonlinearity of the PAM channels.
double pam_nonlinearity(double x);

/// A stochastic map from symbol indices to noisy observations. PAM channels
/// carry four amplitudes scaled to unit average power under the prior and pass
/// them through the square-root nonlinearity; the AWGN channel transmits
/// antipodal binary vectors unchanged. noise_sigma is derived from snr_db via
/// SNR = E[x^2] / sigma^2 with E[x^2] = 1 by construction.
struct ChannelModel {
    ChannelKind kind = ChannelKind::pam4_nonlinear;
    std::vector<std::vector<double>> tx_points;  // channel input per symbol
    std::vector<double> prior;
    double snr_db = 0.0;
    double noise_sigma = 1.0;

    int num_symbols() const { return static_cast<int>(tx_points.size()); }
    int obs_dim() const { return static_cast<int>(tx_points.front().size()); }
    /// Noise-free channel output for one symbol.
    std::vector<double> clean_rx(int symbol) const;
    ChannelModel at_snr(double snr_db) const;

    static ChannelModel pam4_nonlinear(double snr_db);
    static ChannelModel pam4_nonuniform(double snr_db, double rare_mass = 0.05);
    static ChannelModel awgn_vector(int dim, double snr_db);
    static ChannelModel make(ChannelKind kind, double snr_db, int awgn_dim = 6);
};

std::vector<int> draw_symbols(const ChannelModel& model, long n, Rng& rng);
Matrix transmit(const ChannelModel& model, const std::vector<int>& symbols, Rng& rng);

/// Bayes-optimal decoder with full channel knowledge (prior times Gaussian
/// likelihood); ties go to the lowest index.
std::vector<int> map_genie_decode(const ChannelModel& model, const Matrix& obs);
/// Maximum-likelihood decoder: the same scores without the prior.
std::vector<int> maxl_decode(const ChannelModel& model, const Matrix& obs);

struct NeuralDecoderConfig {
    TrainConfig train;
    /// Overrides the divergence's default final activation (e.g. softmax for
    /// the cross-entropy comparison).
    std::optional<Activation> final_activation;
};

Net train_neural_decoder(const ChannelModel& model, const DivergenceSpec& spec, const NeuralDecoderConfig& cfg);

/// Per-class posterior estimates for a batch of observations.
Matrix decoder_posteriors(const DivergenceSpec& spec, const Net& net, const Matrix& obs);
std::vector<int> neural_decode(const DivergenceSpec& spec, const Net& net, const Matrix& obs);

struct SerCurve {
    std::vector<double> snr_db;
    std::vector<std::string> decoders;
    std::map<std::string, std::vector<double>> ser;
    std::map<std::string, std::vector<double>> stderr_;
    long n_symbols = 0;
    uint64_t seed = 0;
};

struct SweepConfig {
    std::vector<double> snr_db;
    long n_symbols = 1000000;
    uint64_t seed = 1;
    /// "maxl", "map_genie", or a divergence name (a decoder trained per point).
    std::vector<std::string> decoders = {"maxl", "map_genie", "sl"};
    NeuralDecoderConfig neural;
};

SerCurve snr_sweep(const ChannelModel& base, const SweepConfig& cfg);

/// CSV with columns snr_db, decoder, ser, stderr, n_symbols, seed.
std::string ser_curve_csv(const SerCurve& curve);

}  // namespace fdl
