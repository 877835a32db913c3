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

#include "diffadv/linksim.hpp"

#include "diffadv/parallel.hpp"
#include "diffadv/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace diffadv {

namespace {

unsigned gray(unsigned k) { return k ^ (k >> 1); }

std::size_t integer_samples(double value, const std::string &field) {
    const double r = std::round(value);
    if (!(r >= 1.0) || std::abs(value - r) > 1e-9 * std::max(1.0, r))
        throw ValidationError("samples per segment " + format_double(value) + " is not a positive integer", field);
    return static_cast<std::size_t>(r);
}

} // namespace

PulseSet build_pulse_set(std::size_t N, double T_sym, double rate) {
    if (N < 1) throw ValidationError("signalling dimension must be >= 1", "link.N");
    if (!(T_sym > 0.0)) throw ValidationError("symbol period must be > 0", "link.T_sym");
    if (!(rate > 0.0)) throw ValidationError("sample rate must be > 0", "rate");
    const std::size_t seg = integer_samples(T_sym * rate / static_cast<double>(N), "link.T_sym");
    PulseSet p;
    p.N = N;
    p.T_sym = T_sym;
    p.rate = rate;
    const double amp = p.amplitude();
    p.waveforms.assign(N, std::vector<double>(N * seg, 0.0));
    for (std::size_t k = 0; k < N; ++k)
        std::fill(p.waveforms[k].begin() + static_cast<std::ptrdiff_t>(k * seg),
                  p.waveforms[k].begin() + static_cast<std::ptrdiff_t>((k + 1) * seg), amp);
    return p;
}

double inner_product(std::span<const double> a, std::span<const double> b, double dt) {
    const std::size_t n = std::min(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s * dt;
}

std::string to_string(Scheme s) {
    switch (s) {
    case Scheme::Two: return "two";
    case Scheme::Four: return "four";
    case Scheme::EightSymmetric: return "eight_symmetric";
    case Scheme::EightWide: return "eight_wide";
    case Scheme::EightTall: return "eight_tall";
    case Scheme::Sixteen: return "sixteen";
    }
    return "unknown";
}

Scheme scheme_from_string(const std::string &name) {
    for (auto s : {Scheme::Two, Scheme::Four, Scheme::EightSymmetric, Scheme::EightWide, Scheme::EightTall,
                   Scheme::Sixteen})
        if (to_string(s) == name) return s;
    throw ValidationError("unknown modulation scheme '" + name + "'", "link.scheme");
}

unsigned Constellation::bits_per_symbol() const {
    return static_cast<unsigned>(std::bit_width(points.size()) - 1);
}

double Constellation::average_energy() const {
    double e = 0.0;
    for (const auto &p : points) e += p.norm2();
    return points.empty() ? 0.0 : e / static_cast<double>(points.size());
}

Constellation build_constellation(Scheme scheme) {
    Constellation c;
    c.scheme = scheme;
    auto grid = [&](int nx, int ny) {
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x) c.points.push_back({double(x), double(y)});
    };
    switch (scheme) {
    case Scheme::Two: c.points = {{1, 0}, {0, 1}}; break;
    case Scheme::Four: grid(2, 2); break;
    case Scheme::EightSymmetric: c.points = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}}; break;
    case Scheme::EightWide: grid(4, 2); break;
    case Scheme::EightTall: grid(2, 4); break;
    case Scheme::Sixteen: grid(4, 4); break;
    }
    return c;
}

std::vector<unsigned> bit_labels(const Constellation &c) {
    std::vector<unsigned> labels(c.size());
    switch (c.scheme) {
    case Scheme::Two: labels = {0, 1}; break;
    case Scheme::Four:
    case Scheme::Sixteen: {
        const unsigned axis_bits = c.scheme == Scheme::Four ? 1 : 2;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto x = static_cast<unsigned>(c.points[i].x);
            const auto y = static_cast<unsigned>(c.points[i].y);
            labels[i] = gray(x) | (gray(y) << axis_bits);
        }
        break;
    }
    default:
        for (std::size_t i = 0; i < c.size(); ++i) labels[i] = gray(static_cast<unsigned>(i));
    }
    return labels;
}

std::size_t detect(Vec2 point, const Constellation &c) {
    if (c.points.empty()) throw ValidationError("empty constellation", "constellation");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double d = (point - c.points[i]).norm2();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::vector<std::size_t> pilot_indices(const Constellation &c, std::size_t n) {
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    for (const auto &p : c.points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    std::vector<std::size_t> corners;
    for (Vec2 corner : {Vec2{xmax, ymin}, Vec2{xmin, ymax}, Vec2{xmax, ymax}, Vec2{xmin, ymin}}) {
        const std::size_t idx = detect(corner, c);
        if (std::find(corners.begin(), corners.end(), idx) == corners.end()) corners.push_back(idx);
    }
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = corners[i % corners.size()];
    return out;
}

Waveform modulate(std::span<const std::size_t> symbols, const Constellation &c, const PulseSet &pulses) {
    if (pulses.N != 2) throw ValidationError("constellations are two-dimensional; pulse set must have N = 2", "link.N");
    const std::size_t S = pulses.samples_per_symbol();
    Waveform w;
    w.rate = pulses.rate;
    w.samples.assign(symbols.size() * S, 0.0);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        if (symbols[k] >= c.size())
            throw ValidationError("symbol index " + std::to_string(symbols[k]) + " out of range", "symbols");
        const Vec2 a = c.points[symbols[k]];
        double *out = w.samples.data() + k * S;
        for (std::size_t m = 0; m < S; ++m) out[m] = a.x * pulses.waveforms[0][m] + a.y * pulses.waveforms[1][m];
    }
    return w;
}

Waveform upconvert(const Waveform &w, double to_rate) {
    const std::size_t r = rate_ratio(to_rate, w.rate, "upconvert");
    Waveform out;
    out.rate = to_rate;
    out.samples.reserve(w.size() * r);
    for (double v : w.samples) out.samples.insert(out.samples.end(), r, v);
    return out;
}

Waveform decimate(const Waveform &w, double to_rate) {
    const std::size_t r = rate_ratio(w.rate, to_rate, "decimate");
    Waveform out;
    out.rate = to_rate;
    out.samples.reserve((w.size() + r - 1) / r);
    for (std::size_t i = 0; i < w.size(); i += r) out.samples.push_back(w.samples[i]);
    return out;
}

TimeGrid channel_grid(double duration, const ChannelOptions &opts) {
    const double dt = 1.0 / opts.channel_rate;
    const auto n_tx = static_cast<std::size_t>(std::llround(duration * opts.channel_rate));
    const auto n_mem = static_cast<std::size_t>(std::llround(opts.t_mem * opts.channel_rate));
    return {0.0, dt, std::max<std::size_t>(2, n_tx + n_mem + 1)};
}

double realized_response_energy(const Scenario &scenario, const WindPath &path, const ChannelOptions &opts,
                                double transmit_duration) {
    if (!(opts.normalization_spacing > 0.0))
        throw ValidationError("normalisation spacing must be > 0", "simulation.normalization_spacing");
    const auto n_mem = static_cast<std::size_t>(std::llround(opts.t_mem * opts.rx_rate));
    const double end = path.grid().end();
    double total = 0.0;
    std::size_t releases = 0;
    for (std::size_t r = 0;; ++r) {
        const double s = static_cast<double>(r) * opts.normalization_spacing;
        if (r > 0 && s >= transmit_duration) break;
        double e = 0.0;
        for (std::size_t n = 1; n <= n_mem; ++n) {
            const double tau = static_cast<double>(n) / opts.rx_rate;
            if (s + tau > end + 1e-9) break;
            const double tap = impulse_response(scenario.geometry, scenario.medium, path, tau, s + tau) / opts.rx_rate;
            e += tap * tap;
        }
        total += e;
        ++releases;
    }
    return total / static_cast<double>(releases);
}

ChannelOutput channel_pass(const Waveform &tx, const Scenario &scenario, const ChannelOptions &opts,
                           const WindPath &path) {
    const std::size_t factor = rate_ratio(opts.channel_rate, opts.rx_rate, "simulation.rx_rate");
    const Waveform q = upconvert(tx, opts.channel_rate);
    ChannelOutput out;
    out.rx = propagate_decimated(q, scenario.geometry, scenario.medium, path, opts.t_mem, factor);
    if (opts.normalize) {
        const double duration = static_cast<double>(tx.size()) / tx.rate;
        out.raw_energy = realized_response_energy(scenario, path, opts, duration);
        if (out.raw_energy > 0.0) {
            out.scale = 1.0 / std::sqrt(out.raw_energy);
            for (double &v : out.rx.samples) v *= out.scale;
        } else {
            out.silent = true;
        }
    }
    return out;
}

ChannelOutput channel_pass(const Waveform &tx, const Scenario &scenario, const ChannelOptions &opts,
                           std::uint64_t seed) {
    const double duration = static_cast<double>(tx.size()) / tx.rate;
    const WindPath path =
        sample_wind_path(scenario.wind, scenario.wind_direction(), channel_grid(duration, opts), seed);
    return channel_pass(tx, scenario, opts, path);
}

double noise_variance(const NoiseSpec &spec, const Constellation &c, const PulseSet &rx_pulses) {
    if (spec.kind == NoiseSpec::Kind::None) return 0.0;
    if (!std::isfinite(spec.db)) {
        if (spec.db > 0) return 0.0;
        throw ValidationError("noise level must be finite or +inf", "link.noise.value_db");
    }
    double snr = std::pow(10.0, spec.db / 10.0);
    if (spec.kind == NoiseSpec::Kind::EbN0) snr *= static_cast<double>(c.bits_per_symbol());
    // Symbol energy in sample units: sum_n s[n]^2 = Es * rate for unit-energy pulses.
    const double es_samples = c.average_energy() * rx_pulses.rate;
    return es_samples /
           (static_cast<double>(rx_pulses.N) * static_cast<double>(rx_pulses.samples_per_segment()) * snr);
}

Waveform add_awgn(const Waveform &w, double variance, std::uint64_t seed) {
    if (!(variance >= 0.0)) throw ValidationError("noise variance must be >= 0", "noise");
    Waveform out = w;
    if (variance == 0.0) return out;
    const double sd = std::sqrt(variance);
    Rng rng(seed);
    for (double &v : out.samples) v += sd * rng.gaussian();
    return out;
}

std::vector<std::vector<double>> matched_filter_bank(const Waveform &rx, const PulseSet &pulses) {
    if (std::abs(rx.rate - pulses.rate) > 1e-9 * pulses.rate)
        throw ValidationError("matched filter needs equal sample and pulse rates", "rx_rate");
    const std::size_t n = rx.size();
    const double dt = rx.dt();
    std::vector<std::vector<double>> out(pulses.N, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < pulses.N; ++j) {
        const auto &p = pulses.waveforms[j];
        std::size_t lo = 0, hi = p.size();
        while (lo < hi && p[lo] == 0.0) ++lo;
        while (hi > lo && p[hi - 1] == 0.0) --hi;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            const std::size_t stop = std::min(hi, n - i);
            for (std::size_t m = lo; m < stop; ++m) s += rx.samples[i + m] * p[m];
            out[j][i] = s * dt;
        }
    }
    return out;
}

std::size_t synchronize(const std::vector<std::vector<double>> &mf, std::span<const Vec2> pilot_points,
                        std::size_t samples_per_symbol) {
    if (mf.size() != 2) throw ValidationError("synchronisation expects two matched filter branches", "mf");
    if (pilot_points.empty()) throw ValidationError("pilot pattern is empty", "link.n_pilots");
    if (samples_per_symbol == 0) throw ValidationError("samples per symbol must be > 0", "link.T_sym");
    const std::size_t n = mf[0].size();
    if (n == 0) throw NoSignalError("matched filter outputs are empty");

    std::vector<double> energy(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        energy[i] = mf[0][i] * mf[0][i] + mf[1][i] * mf[1][i];
        peak = std::max(peak, energy[i]);
    }
    if (!(peak > 0.0)) throw NoSignalError("matched filter outputs carry no energy");

    std::size_t coarse = 0;
    while (energy[coarse] < kSyncEnergyFraction * peak) ++coarse;

    const std::size_t lo = coarse >= samples_per_symbol ? coarse - samples_per_symbol : 0;
    const std::size_t hi = std::min(n - 1, coarse + samples_per_symbol);
    std::size_t best = lo;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = lo; c <= hi; ++c) {
        double score = 0.0;
        for (std::size_t k = 0; k < pilot_points.size(); ++k) {
            const std::size_t idx = c + k * samples_per_symbol;
            if (idx >= n) break;
            score += mf[0][idx] * pilot_points[k].x + mf[1][idx] * pilot_points[k].y;
        }
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

std::string to_string(EqualizerKind k) { return k == EqualizerKind::Affine ? "affine" : "per_dimension"; }

EqualizerKind equalizer_kind_from_string(const std::string &name) {
    if (name == "affine") return EqualizerKind::Affine;
    if (name == "per_dimension") return EqualizerKind::PerDimension;
    throw ValidationError("unknown equalizer '" + name + "'", "link.equalizer");
}

Equalizer train_mmse(std::span<const Vec2> observed, std::span<const Vec2> known, EqualizerKind kind) {
    if (observed.size() != known.size())
        throw ValidationError("pilot observation and reference counts differ", "pilots");
    if (observed.size() < kMinPilots)
        throw ValidationError("equaliser training needs at least " + std::to_string(kMinPilots) + " pilots",
                              "link.n_pilots");
    const auto K = static_cast<Eigen::Index>(observed.size());
    Equalizer eq;
    eq.kind = kind;
    if (kind == EqualizerKind::Affine) {
        Eigen::MatrixXd Phi(K, 3), S(K, 2);
        for (Eigen::Index k = 0; k < K; ++k) {
            const auto i = static_cast<std::size_t>(k);
            Phi.row(k) << observed[i].x, observed[i].y, 1.0;
            S.row(k) << known[i].x, known[i].y;
        }
        Eigen::Matrix3d G = Phi.transpose() * Phi;
        const double lambda = kRidgeFactor * G.trace() / 3.0;
        G.diagonal().array() += lambda;
        const Eigen::Matrix<double, 3, 2> theta = G.ldlt().solve(Phi.transpose() * S);
        for (int r = 0; r < 2; ++r) {
            eq.W[r][0] = theta(0, r);
            eq.W[r][1] = theta(1, r);
        }
        eq.bias = {theta(2, 0), theta(2, 1)};
        return eq;
    }
    eq.W = {{{0.0, 0.0}, {0.0, 0.0}}};
    for (int d = 0; d < 2; ++d) {
        Eigen::Matrix2d G = Eigen::Matrix2d::Zero();
        Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
        for (std::size_t k = 0; k < observed.size(); ++k) {
            const double y = d == 0 ? observed[k].x : observed[k].y;
            const double s = d == 0 ? known[k].x : known[k].y;
            const Eigen::Vector2d phi(y, 1.0);
            G += phi * phi.transpose();
            rhs += phi * s;
        }
        G.diagonal().array() += kRidgeFactor * G.trace() / 2.0;
        const Eigen::Vector2d theta = G.ldlt().solve(rhs);
        eq.W[d][d] = theta(0);
        (d == 0 ? eq.bias.x : eq.bias.y) = theta(1);
    }
    return eq;
}

void LinkConfig::validate() const {
    scenario.medium.validate();
    if (N != 2) throw ValidationError("link simulation uses two-dimensional constellations (N = 2)", "link.N");
    if (n_symbols == 0) throw ValidationError("must be > 0", "link.n_symbols");
    if (n_pilots < kMinPilots)
        throw ValidationError("must be >= " + std::to_string(kMinPilots), "link.n_pilots");
    if (!(T_sym > 0.0)) throw ValidationError("must be > 0", "link.T_sym");
    if (!(channel.t_mem > 0.0)) throw ValidationError("must be > 0", "simulation.T_mem");
    rate_ratio(channel.channel_rate, tx_rate, "simulation.tx_rate");
    rate_ratio(channel.channel_rate, channel.rx_rate, "simulation.rx_rate");
    build_pulse_set(N, T_sym, tx_rate);
    build_pulse_set(N, T_sym, channel.rx_rate);
}

namespace {

struct TrialChannel {
    std::vector<std::size_t> payload;
    ChannelOutput channel;
    std::uint64_t wind_seed = 0;
    std::uint64_t payload_seed = 0;
};

TrialChannel simulate_channel(const LinkConfig &cfg, std::size_t trial) {
    const Constellation c = build_constellation(cfg.scheme);
    const PulseSet tx_pulses = build_pulse_set(cfg.N, cfg.T_sym, cfg.tx_rate);
    TrialChannel tc;
    tc.payload_seed = derive_seed(cfg.seed, SeedStream::Payload, trial);
    tc.wind_seed = derive_seed(cfg.seed, SeedStream::Wind, trial);
    Rng rng(tc.payload_seed);
    tc.payload.resize(cfg.n_symbols);
    for (auto &s : tc.payload) s = rng.index(c.size());

    std::vector<std::size_t> symbols = pilot_indices(c, cfg.n_pilots);
    symbols.insert(symbols.end(), tc.payload.begin(), tc.payload.end());
    Waveform tx = modulate(symbols, c, tx_pulses);
    tx.samples.resize(tx.samples.size() + cfg.n_trailing_empty * tx_pulses.samples_per_symbol(), 0.0);
    tc.channel = channel_pass(tx, cfg.scenario, cfg.channel, tc.wind_seed);
    return tc;
}

LinkResult receive(const LinkConfig &cfg, const TrialChannel &tc, const NoiseSpec &noise, std::uint64_t noise_seed) {
    const Constellation c = build_constellation(cfg.scheme);
    const PulseSet rx_pulses = build_pulse_set(cfg.N, cfg.T_sym, cfg.channel.rx_rate);
    const std::size_t S = rx_pulses.samples_per_symbol();

    LinkResult res;
    res.wind_seed = tc.wind_seed;
    res.payload_seed = tc.payload_seed;
    res.noise_seed = noise_seed;
    res.channel_scale = tc.channel.scale;
    res.channel_silent = tc.channel.silent;
    res.noise_variance = noise_variance(noise, c, rx_pulses);
    const Waveform rx = add_awgn(tc.channel.rx, res.noise_variance, noise_seed);

    const auto mf = matched_filter_bank(rx, rx_pulses);
    const auto pilots = pilot_indices(c, cfg.n_pilots);
    std::vector<Vec2> pilot_points(pilots.size());
    for (std::size_t k = 0; k < pilots.size(); ++k) pilot_points[k] = c.points[pilots[k]];
    res.sync_index = synchronize(mf, pilot_points, S);

    const std::size_t total = cfg.n_pilots + cfg.n_symbols;
    std::vector<Vec2> obs(total);
    for (std::size_t k = 0; k < total; ++k) {
        const std::size_t idx = res.sync_index + k * S;
        if (idx < mf[0].size()) obs[k] = {mf[0][idx], mf[1][idx]};
    }
    res.equalizer = train_mmse(std::span(obs).first(cfg.n_pilots), pilot_points, cfg.equalizer);

    const auto labels = bit_labels(c);
    res.transmitted = tc.payload;
    res.decided.resize(cfg.n_symbols);
    res.observations.assign(obs.begin() + static_cast<std::ptrdiff_t>(cfg.n_pilots), obs.end());
    res.equalized.resize(cfg.n_symbols);
    for (std::size_t k = 0; k < cfg.n_symbols; ++k) {
        res.equalized[k] = res.equalizer.apply(res.observations[k]);
        res.decided[k] = detect(res.equalized[k], c);
        if (res.decided[k] != res.transmitted[k]) {
            ++res.symbol_errors;
            res.bit_errors += static_cast<std::size_t>(std::popcount(labels[res.decided[k]] ^ labels[res.transmitted[k]]));
        }
    }
    res.bits_total = cfg.n_symbols * c.bits_per_symbol();
    return res;
}

std::uint64_t noise_seed_for(std::uint64_t master, std::size_t point, std::size_t trial) {
    return derive_seed(derive_seed(master, SeedStream::Noise, point), trial);
}

} // namespace

LinkResult run_link_trial(const LinkConfig &config, const NoiseSpec &noise, std::size_t point, std::size_t trial) {
    config.validate();
    const TrialChannel tc = simulate_channel(config, trial);
    return receive(config, tc, noise, noise_seed_for(config.seed, point, trial));
}

LinkResult run_link(const LinkConfig &config) { return run_link_trial(config, config.noise, 0, 0); }

double BerPoint::mean_ber() const {
    if (ber.empty()) return 0.0;
    double s = 0.0;
    for (double b : ber) s += b;
    return s / static_cast<double>(ber.size());
}

double BerPoint::stderr_ber() const {
    const std::size_t n = ber.size();
    if (n < 2) return 0.0;
    const double m = mean_ber();
    double ss = 0.0;
    for (double b : ber) ss += (b - m) * (b - m);
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

BerCurve ber_sweep(const LinkConfig &config, NoiseSpec::Kind convention, std::span<const double> abscissa_db,
                   std::size_t trials) {
    if (trials < 1) throw ValidationError("must be >= 1", "trials");
    if (convention == NoiseSpec::Kind::None)
        throw ValidationError("sweep abscissa must be SNR or Eb/N0", "convention");
    config.validate();
    BerCurve curve;
    curve.convention = convention;
    curve.trials = trials;
    curve.points.resize(abscissa_db.size());
    for (std::size_t p = 0; p < abscissa_db.size(); ++p) {
        auto &pt = curve.points[p];
        pt.abscissa_db = abscissa_db[p];
        pt.bit_errors.assign(trials, 0);
        pt.bits_total.assign(trials, 0);
        pt.symbol_errors.assign(trials, 0);
        pt.ber.assign(trials, 0.0);
    }
    if (abscissa_db.empty()) return curve;

    parallel_for(trials, [&](std::size_t trial) {
        const TrialChannel tc = simulate_channel(config, trial);
        for (std::size_t p = 0; p < abscissa_db.size(); ++p) {
            const NoiseSpec spec{convention, abscissa_db[p]};
            const LinkResult r = receive(config, tc, spec, noise_seed_for(config.seed, p, trial));
            auto &pt = curve.points[p];
            pt.bit_errors[trial] = r.bit_errors;
            pt.bits_total[trial] = r.bits_total;
            pt.symbol_errors[trial] = r.symbol_errors;
            pt.ber[trial] = r.bits_total ? static_cast<double>(r.bit_errors) / static_cast<double>(r.bits_total) : 0.0;
        }
    });
    return curve;
}

} // namespace diffadv
