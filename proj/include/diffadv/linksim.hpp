// SPDX-License-Identifier: Apache-2.0
//
// diffadv: channel modelling and link simulation for diffusion-advection particle communication
// Copyright (C) 2026 The diffadv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "diffadv/scenario.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace diffadv {

// ---------------------------------------------------------------------------
// Transmitter
// ---------------------------------------------------------------------------

/// Orthonormal rectangular pulses: the symbol period is split into N equal
/// segments and pulse k is a constant sqrt(N / T_sym) on segment k.
struct PulseSet {
    std::size_t N = 0;
    double T_sym = 0.0;
    double rate = 0.0;
    std::vector<std::vector<double>> waveforms; ///< each spans one symbol period

    std::size_t samples_per_symbol() const { return waveforms.empty() ? 0 : waveforms.front().size(); }
    std::size_t samples_per_segment() const { return N == 0 ? 0 : samples_per_symbol() / N; }
    double amplitude() const { return std::sqrt(static_cast<double>(N) / T_sym); }
};

PulseSet build_pulse_set(std::size_t N, double T_sym, double rate);

/// Discrete inner product sum_n a[n] b[n] dt.
double inner_product(std::span<const double> a, std::span<const double> b, double dt);

enum class Scheme { Two, Four, EightSymmetric, EightWide, EightTall, Sixteen };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string &name);

struct Constellation {
    Scheme scheme = Scheme::Two;
    std::vector<Vec2> points; ///< amplitudes on (p1, p2), listing order of the scheme table

    std::size_t size() const { return points.size(); }
    unsigned bits_per_symbol() const;
    double average_energy() const;
};

Constellation build_constellation(Scheme scheme);

/// Bit label of each constellation index. Two/Four/Sixteen use per-axis Gray
/// codes on the grid; the 8-point schemes Gray-code the listing index.
std::vector<unsigned> bit_labels(const Constellation &c);

/// Pilot sequence of length n: cycles through the extreme corner points.
std::vector<std::size_t> pilot_indices(const Constellation &c, std::size_t n);

/// Concatenates sum_k a_k p_k over the symbols.
Waveform modulate(std::span<const std::size_t> symbols, const Constellation &c, const PulseSet &pulses);

/// Zero-order hold to an integer multiple of the input rate.
Waveform upconvert(const Waveform &w, double to_rate);

/// Keeps every k-th sample starting at index 0.
Waveform decimate(const Waveform &w, double to_rate);

// ---------------------------------------------------------------------------
// Channel and noise
// ---------------------------------------------------------------------------

struct ChannelOptions {
    double channel_rate = 1000.0;
    double rx_rate = 100.0;
    double t_mem = 30.0;
    bool normalize = true;
    /// Spacing of the impulse releases averaged by the normalisation [s].
    double normalization_spacing = 1.0;
};

struct ChannelOutput {
    Waveform rx;              ///< concentration samples at the receiver rate
    double scale = 1.0;       ///< gain applied by the normalisation
    double raw_energy = 0.0;  ///< response energy before scaling
    bool silent = false;      ///< the realised response was identically zero
};

/// Energy of the discrete channel taps g[n] = h(n dt, s_r + n dt) dt with
/// dt = 1 / rx_rate, n = 1 .. t_mem * rx_rate, averaged over release times s_r
/// (multiples of normalization_spacing inside the transmission).
double realized_response_energy(const Scenario &scenario, const WindPath &path, const ChannelOptions &opts,
                                double transmit_duration);

/// Sends a transmitter waveform through one seeded wind realisation.
ChannelOutput channel_pass(const Waveform &tx, const Scenario &scenario, const ChannelOptions &opts,
                           std::uint64_t seed);

/// Channel pass with an explicit wind path on the channel-rate grid.
ChannelOutput channel_pass(const Waveform &tx, const Scenario &scenario, const ChannelOptions &opts,
                           const WindPath &path);

/// Wind grid used by channel_pass for a transmitter waveform of the given
/// duration: starts at 0, channel-rate step, extends t_mem past the end.
TimeGrid channel_grid(double duration, const ChannelOptions &opts);

struct NoiseSpec {
    enum class Kind { None, Snr, EbN0 };
    Kind kind = Kind::None;
    double db = 0.0;

    static NoiseSpec none() { return {}; }
    static NoiseSpec snr(double db) { return {Kind::Snr, db}; }
    static NoiseSpec ebn0(double db) { return {Kind::EbN0, db}; }
};

/// Per-sample noise variance:
///   sigma^2 = Es_avg / (N * samples_per_segment * SNR)
/// with Es_avg the average symbol energy in sample units (sum_n s[n]^2), so
/// SNR is the per-sample signal to noise power ratio at the transmitter.
/// SNR = Eb/N0 * bits_per_symbol for the Eb/N0 convention.
double noise_variance(const NoiseSpec &spec, const Constellation &c, const PulseSet &rx_pulses);

Waveform add_awgn(const Waveform &w, double variance, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Receiver
// ---------------------------------------------------------------------------

/// y_j[n] = sum_m r[n + m] p_j[m] dt, zero-padded; one row per pulse.
std::vector<std::vector<double>> matched_filter_bank(const Waveform &rx, const PulseSet &pulses);

inline constexpr double kSyncEnergyFraction = 0.05;

/// Two-step timing recovery. A coarse index is the first sample whose matched
/// filter energy reaches kSyncEnergyFraction of the peak; the decision instant
/// of the first pilot is then the offset within one symbol of it that best
/// correlates with the pilot points. Ties go to the earliest index.
std::size_t synchronize(const std::vector<std::vector<double>> &mf, std::span<const Vec2> pilot_points,
                        std::size_t samples_per_symbol);

enum class EqualizerKind { Affine, PerDimension };

std::string to_string(EqualizerKind k);
EqualizerKind equalizer_kind_from_string(const std::string &name);

struct Equalizer {
    EqualizerKind kind = EqualizerKind::Affine;
    std::array<std::array<double, 2>, 2> W{{{1.0, 0.0}, {0.0, 1.0}}};
    Vec2 bias{};

    Vec2 apply(Vec2 y) const {
        return {W[0][0] * y.x + W[0][1] * y.y + bias.x, W[1][0] * y.x + W[1][1] * y.y + bias.y};
    }

    bool operator==(const Equalizer &) const = default;
};

inline constexpr double kRidgeFactor = 1e-8;
inline constexpr std::size_t kMinPilots = 3;

/// Ridge-regularised least squares fit of known = W * observed + bias.
Equalizer train_mmse(std::span<const Vec2> observed, std::span<const Vec2> known,
                     EqualizerKind kind = EqualizerKind::Affine);

/// Nearest constellation point; ties go to the lower index.
std::size_t detect(Vec2 point, const Constellation &c);

// ---------------------------------------------------------------------------
// End-to-end link
// ---------------------------------------------------------------------------

struct LinkConfig {
    Scenario scenario{};
    Scheme scheme = Scheme::Four;
    std::size_t N = 2;
    double T_sym = 2.0;
    std::size_t n_symbols = 1000;
    std::size_t n_pilots = 10;
    std::size_t n_trailing_empty = 100;
    double tx_rate = 100.0;
    ChannelOptions channel{};
    NoiseSpec noise{};
    EqualizerKind equalizer = EqualizerKind::Affine;
    std::uint64_t seed = 1;

    void validate() const;
};

struct LinkResult {
    std::vector<std::size_t> transmitted; ///< payload symbol indices
    std::vector<std::size_t> decided;
    std::size_t symbol_errors = 0;
    std::size_t bit_errors = 0;
    std::size_t bits_total = 0;
    Equalizer equalizer;
    std::size_t sync_index = 0;
    std::vector<Vec2> observations; ///< raw matched filter outputs per payload symbol
    std::vector<Vec2> equalized;
    double channel_scale = 1.0;
    bool channel_silent = false;
    double noise_variance = 0.0;
    std::uint64_t wind_seed = 0;
    std::uint64_t payload_seed = 0;
    std::uint64_t noise_seed = 0;

    bool operator==(const LinkResult &) const = default;
};

/// Transmit, propagate, receive and count errors for trial 0 of the config.
LinkResult run_link(const LinkConfig &config);

/// Trial `trial` at sweep point `point` with an explicit noise spec. The
/// payload and wind depend on (seed, trial); the noise on (seed, point, trial).
LinkResult run_link_trial(const LinkConfig &config, const NoiseSpec &noise, std::size_t point, std::size_t trial);

struct BerPoint {
    double abscissa_db = 0.0;
    std::vector<std::size_t> bit_errors;  ///< per trial
    std::vector<std::size_t> bits_total;  ///< per trial
    std::vector<std::size_t> symbol_errors;
    std::vector<double> ber;              ///< per trial

    double mean_ber() const;
    double stderr_ber() const;
};

struct BerCurve {
    NoiseSpec::Kind convention = NoiseSpec::Kind::EbN0;
    std::size_t trials = 0;
    std::vector<BerPoint> points;
};

BerCurve ber_sweep(const LinkConfig &config, NoiseSpec::Kind convention, std::span<const double> abscissa_db,
                   std::size_t trials);

} // namespace diffadv
