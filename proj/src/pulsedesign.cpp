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

#include "diffadv/pulsedesign.hpp"

#include "diffadv/kernel.hpp"
#include "diffadv/linksim.hpp"
#include "diffadv/parallel.hpp"
#include "diffadv/rng.hpp"
#include "diffadv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace diffadv {

std::string to_string(ChannelMode m) { return m == ChannelMode::MeanResponse ? "mean" : "realization"; }

ChannelMode channel_mode_from_string(const std::string &name) {
    if (name == "mean") return ChannelMode::MeanResponse;
    if (name == "realization") return ChannelMode::SeededRealization;
    throw ValidationError("unknown channel mode '" + name + "' (expected mean or realization)", "mode");
}

std::string describe(const Scenario &s) {
    const Vec3 &z = s.geometry.source();
    const Vec3 &x = s.geometry.receiver();
    std::ostringstream os;
    os << "source=(" << format_double(z.x) << ' ' << format_double(z.y) << ' ' << format_double(z.z) << ")"
       << " receiver=(" << format_double(x.x) << ' ' << format_double(x.y) << ' ' << format_double(x.z) << ")"
       << " D=" << format_double(s.medium.D) << " mu=" << format_double(s.wind.mean_speed)
       << " kernel=" << s.wind.kernel.describe();
    return os.str();
}

namespace {

double cell_rate(std::size_t N, double T_sym, double base) {
    for (int k = 1; k <= 1000; ++k) {
        const double rate = base * k;
        const double seg = T_sym * rate / static_cast<double>(N);
        if (seg >= 1.0 && std::abs(seg - std::round(seg)) <= 1e-9 * seg) return rate;
    }
    throw ValidationError("no sample rate near " + format_double(base) + " Hz splits T_sym = " + format_double(T_sym) +
                              " into " + std::to_string(N) + " integer segments",
                          "T_sym");
}

// c[n] = sum_{j=1..M} h(j dt) q[n - j] dt
std::vector<double> lti_response(std::span<const double> h, std::span<const double> q, double dt, std::size_t len) {
    std::vector<double> out(len, 0.0);
    for (std::size_t n = 1; n < len; ++n) {
        double acc = 0.0;
        const std::size_t jmax = std::min(n, h.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) {
            const std::size_t m = n - j;
            if (m < q.size() && q[m] != 0.0) acc += h[j] * q[m];
        }
        out[n] = acc * dt;
    }
    return out;
}

std::vector<double> correlate(std::span<const double> c, std::span<const double> p, double dt) {
    std::vector<double> out(c.size(), 0.0);
    for (std::size_t n = 0; n < c.size(); ++n) {
        double acc = 0.0;
        const std::size_t stop = std::min(p.size(), c.size() - n);
        for (std::size_t m = 0; m < stop; ++m) acc += c[n + m] * p[m];
        out[n] = acc * dt;
    }
    return out;
}

} // namespace

LeakageReport pulse_leakage(std::size_t N, double T_sym, const Scenario &scenario, ChannelMode mode,
                            std::uint64_t seed, const LeakageOptions &options) {
    if (N < 1) throw ValidationError("signalling dimension must be >= 1", "N");
    if (!(T_sym > 0.0)) throw ValidationError("symbol period must be > 0", "T_sym");
    if (!(options.t_mem > 0.0)) throw ValidationError("channel memory must be > 0", "T_mem");
    if (!(options.source_amplitude >= 0.0)) throw ValidationError("source amplitude must be >= 0", "amplitude");
    scenario.medium.validate();

    LeakageReport rep;
    rep.N = N;
    rep.T_sym = T_sym;
    rep.mode = mode;
    rep.seed = mode == ChannelMode::SeededRealization ? seed : 0;
    rep.scenario = describe(scenario);
    rep.rate = cell_rate(N, T_sym, options.rate);
    if (N == 1) return rep;

    PulseSet pulses = build_pulse_set(N, T_sym, rep.rate);
    for (auto &w : pulses.waveforms)
        for (double &v : w) v *= options.source_amplitude;
    const PulseSet mf = build_pulse_set(N, T_sym, rep.rate);
    const double dt = 1.0 / rep.rate;
    const std::size_t S = pulses.samples_per_symbol();
    const auto len = static_cast<std::size_t>(std::llround((T_sym + options.t_mem) * rep.rate));
    const auto M = static_cast<std::size_t>(std::llround(options.t_mem * rep.rate));

    std::vector<std::vector<double>> c(N);
    if (mode == ChannelMode::MeanResponse) {
        std::vector<double> h(M + 1, 0.0);
        for (std::size_t j = 1; j <= M; ++j) {
            const double tau = static_cast<double>(j) * dt;
            h[j] = mean_response(tau, kWssReferenceTime + tau, scenario);
        }
        for (std::size_t i = 0; i < N; ++i) c[i] = lti_response(h, pulses.waveforms[i], dt, len);
    } else {
        const WindPath path = sample_wind_path(scenario.wind, scenario.wind_direction(), TimeGrid{0.0, dt, len + 1},
                                               derive_seed(seed, SeedStream::Wind));
        for (std::size_t i = 0; i < N; ++i) {
            Waveform q;
            q.rate = rep.rate;
            q.samples.assign(len, 0.0);
            std::copy(pulses.waveforms[i].begin(), pulses.waveforms[i].end(), q.samples.begin());
            c[i] = propagate(q, scenario.geometry, scenario.medium, path, options.t_mem).samples;
        }
    }

    std::vector<std::vector<std::vector<double>>> y(N, std::vector<std::vector<double>>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) y[i][j] = correlate(c[i], mf.waveforms[j], dt);

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < len; ++d) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) s += y[i][i][d];
        if (s > best) {
            best = s;
            rep.timing = d;
        }
    }

    double leak = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j) continue;
            for (std::size_t n = rep.timing % S; n < len; n += S) leak += y[i][j][n] * y[i][j][n];
        }
    rep.leakage = leak;
    return rep;
}

std::vector<LeakageReport> leakage_sweep(const std::vector<std::size_t> &N, const std::vector<double> &T_sym,
                                         const Scenario &scenario, ChannelMode mode, std::uint64_t seed,
                                         const LeakageOptions &options) {
    if (N.empty() || T_sym.empty()) throw ValidationError("sweep lists must be non-empty", "sweep");
    std::vector<LeakageReport> out(N.size() * T_sym.size());
    parallel_for(out.size(), [&](std::size_t k) {
        out[k] = pulse_leakage(N[k / T_sym.size()], T_sym[k % T_sym.size()], scenario, mode, seed, options);
    });
    return out;
}

} // namespace diffadv
