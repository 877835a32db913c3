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

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace diffadv;

namespace {

Scenario advective() {
    Scenario s;
    s.wind.mean_speed = 0.5;
    s.wind.kernel = CovarianceKernel::white(1e-6);
    return s;
}

LinkConfig advective_link(Scheme scheme) {
    LinkConfig cfg;
    cfg.scenario = advective();
    cfg.scheme = scheme;
    cfg.n_symbols = 300;
    cfg.n_trailing_empty = 20;
    cfg.seed = 7;
    return cfg;
}

Waveform shifted(const Waveform &w, std::size_t d, std::size_t tail) {
    Waveform out{w.rate, std::vector<double>(d, 0.0)};
    out.samples.insert(out.samples.end(), w.samples.begin(), w.samples.end());
    out.samples.resize(out.samples.size() + tail, 0.0);
    return out;
}

} // namespace

TEST_CASE("pulse sets are orthonormal") {
    for (std::size_t N : {1u, 2u, 3u, 4u}) {
        for (double T : {2.0, 4.0, 8.0}) {
            if (std::fmod(T * 100.0, static_cast<double>(N)) != 0.0) continue;
            const auto p = build_pulse_set(N, T, 100.0);
            REQUIRE(p.waveforms.size() == N);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j)
                    CHECK(inner_product(p.waveforms[i], p.waveforms[j], 0.01) ==
                          doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
    const auto two = build_pulse_set(2, 2.0, 100.0);
    CHECK(two.waveforms[0][0] == 1.0);
    CHECK(two.waveforms[0][99] == 1.0);
    CHECK(two.waveforms[0][100] == 0.0);
    CHECK(two.waveforms[1][100] == 1.0);
    const auto four = build_pulse_set(4, 2.0, 100.0);
    CHECK(four.waveforms[2][100] == doctest::Approx(std::sqrt(2.0)));
    const auto one = build_pulse_set(1, 2.0, 100.0);
    CHECK(std::all_of(one.waveforms[0].begin(), one.waveforms[0].end(),
                      [](double v) { return v == doctest::Approx(std::sqrt(0.5)); }));
    CHECK_THROWS_AS(build_pulse_set(3, 2.0, 100.0), ValidationError);
    CHECK_THROWS_AS(build_pulse_set(0, 2.0, 100.0), ValidationError);
}

TEST_CASE("constellation registry") {
    const std::vector<std::pair<Scheme, std::size_t>> sizes{{Scheme::Two, 2},       {Scheme::Four, 4},
                                                            {Scheme::EightSymmetric, 8}, {Scheme::EightWide, 8},
                                                            {Scheme::EightTall, 8}, {Scheme::Sixteen, 16}};
    for (const auto &[s, n] : sizes) {
        const auto c = build_constellation(s);
        CHECK(c.size() == n);
        CHECK(scheme_from_string(to_string(s)) == s);
        for (const auto &p : c.points) CHECK((p.x >= 0 && p.y >= 0));
        // distinct labels covering every bit pattern
        auto labels = bit_labels(c);
        std::sort(labels.begin(), labels.end());
        for (std::size_t i = 0; i < labels.size(); ++i) CHECK(labels[i] == i);
    }
    const auto two = build_constellation(Scheme::Two);
    CHECK(two.points[0] == Vec2{1, 0});
    CHECK(two.points[1] == Vec2{0, 1});
    const auto wide = build_constellation(Scheme::EightWide);
    const std::vector<Vec2> expect{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}};
    CHECK(wide.points == expect);
    const auto tall = build_constellation(Scheme::EightTall);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(tall.points[i] == Vec2{static_cast<double>(i % 2), static_cast<double>(i / 2)});
    const auto sixteen = build_constellation(Scheme::Sixteen);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(sixteen.points[i] == Vec2{static_cast<double>(i % 4), static_cast<double>(i / 4)});
    CHECK_THROWS_AS(scheme_from_string("five"), ValidationError);
}

TEST_CASE("gray labels differ in one bit between grid neighbours") {
    const auto c = build_constellation(Scheme::Sixteen);
    const auto labels = bit_labels(c);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const double d = std::abs(c.points[i].x - c.points[j].x) + std::abs(c.points[i].y - c.points[j].y);
            if (d == 1.0) CHECK(std::popcount(labels[i] ^ labels[j]) == 1);
        }
}

TEST_CASE("modulation places constellation amplitudes on the pulses") {
    const auto pulses = build_pulse_set(2, 2.0, 100.0);
    const auto c = build_constellation(Scheme::Sixteen);
    const std::vector<std::size_t> sym{0, 1, 6, 15};
    const auto w = modulate(sym, c, pulses);
    REQUIRE(w.size() == 800);
    const std::size_t S = 200;
    for (std::size_t k = 0; k < sym.size(); ++k) {
        std::span<const double> seg(w.samples.data() + k * S, S);
        const double e = inner_product(seg, seg, 0.01);
        const Vec2 p = c.points[sym[k]];
        CHECK(e == doctest::Approx(p.x * p.x + p.y * p.y).epsilon(1e-12));
    }
    CHECK(std::all_of(w.samples.begin(), w.samples.begin() + 200, [](double v) { return v == 0.0; }));
    const auto one = modulate(std::vector<std::size_t>{1}, c, pulses);
    for (std::size_t n = 0; n < 200; ++n) CHECK(one.samples[n] == pulses.waveforms[0][n]);
    CHECK_THROWS_AS(modulate(std::vector<std::size_t>{16}, c, pulses), ValidationError);
}

TEST_CASE("zero-order hold round trip") {
    Waveform w{100.0, {0.0, 1.0, 2.5, 2.5, -1.0}};
    const auto up = upconvert(w, 1000.0);
    CHECK(up.size() == 50);
    CHECK(up.rate == 1000.0);
    for (std::size_t n = 0; n < 50; ++n) CHECK(up.samples[n] == w.samples[n / 10]);
    const auto back = decimate(up, 100.0);
    CHECK(back.samples == w.samples);
    CHECK_THROWS_AS(upconvert(w, 250.0), ValidationError);
    CHECK_THROWS_AS(decimate(up, 300.0), ValidationError);
}

TEST_CASE("channel pass normalisation, zero input and superposition") {
    const Scenario s = advective();
    ChannelOptions opts;
    opts.t_mem = 10.0;
    const auto pulses = build_pulse_set(2, 2.0, 100.0);
    const auto c = build_constellation(Scheme::Four);
    const auto w1 = modulate(std::vector<std::size_t>{1, 3, 2, 0, 1}, c, pulses);
    const auto w2 = modulate(std::vector<std::size_t>{2, 2, 0, 3, 3}, c, pulses);
    const double dur = 10.0;
    const WindPath path = sample_wind_path(s.wind, s.wind_direction(), channel_grid(dur, opts), 99);

    const auto a = channel_pass(w1, s, opts, path);
    CHECK(a.raw_energy > 0.0);
    CHECK(a.scale * a.scale * a.raw_energy == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.rx.rate == 100.0);

    Waveform zero{100.0, std::vector<double>(w1.size(), 0.0)};
    const auto z = channel_pass(zero, s, opts, path);
    CHECK(std::all_of(z.rx.samples.begin(), z.rx.samples.end(), [](double v) { return v == 0.0; }));

    Waveform sum = w1;
    for (std::size_t n = 0; n < sum.size(); ++n) sum.samples[n] += w2.samples[n];
    const auto b = channel_pass(w2, s, opts, path);
    const auto ab = channel_pass(sum, s, opts, path);
    double scale = 0.0;
    for (double v : ab.rx.samples) scale = std::max(scale, std::abs(v));
    REQUIRE(ab.rx.size() == a.rx.size());
    for (std::size_t n = 0; n < ab.rx.size(); ++n)
        CHECK(std::abs(ab.rx.samples[n] - a.rx.samples[n] - b.rx.samples[n]) <= 1e-12 * scale);

    // the seeded overload reproduces itself
    CHECK(channel_pass(w1, s, opts, 5).rx.samples == channel_pass(w1, s, opts, 5).rx.samples);
}

TEST_CASE("noise calibration") {
    Waveform zero{100.0, std::vector<double>(100000, 0.0)};
    const double var = 0.37;
    const auto n = add_awgn(zero, var, 11);
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    for (double v : n.samples) {
        s += v;
        s2 += v * v;
        s4 += v * v * v * v;
    }
    const double N = static_cast<double>(n.size());
    const double est = s2 / N;
    const double se = std::sqrt((s4 / N - est * est) / N);
    CHECK(std::abs(est - var) < 3 * se);
    CHECK(std::abs(s / N) < 3 * std::sqrt(var / N));
    CHECK(add_awgn(zero, 0.0, 11).samples == zero.samples);
    CHECK(add_awgn(zero, var, 11).samples == n.samples);

    const auto pulses = build_pulse_set(2, 2.0, 100.0);
    const auto c2 = build_constellation(Scheme::Two);
    const auto c4 = build_constellation(Scheme::Four);
    CHECK(noise_variance(NoiseSpec::none(), c4, pulses) == 0.0);
    CHECK(noise_variance(NoiseSpec::snr(INFINITY), c4, pulses) == 0.0);
    // one bit per symbol: Eb/N0 and SNR coincide
    CHECK(noise_variance(NoiseSpec::ebn0(7.0), c2, pulses) == noise_variance(NoiseSpec::snr(7.0), c2, pulses));
    // two bits per symbol: Eb/N0 = SNR - 3.01 dB
    CHECK(noise_variance(NoiseSpec::ebn0(7.0), c4, pulses) ==
          doctest::Approx(noise_variance(NoiseSpec::snr(7.0 + 10 * std::log10(2.0)), c4, pulses)));
    // per-sample SNR of a symbol-energy-average waveform equals the nominal value
    const double es = c4.average_energy();
    const double per_sample_signal = es * pulses.rate / static_cast<double>(pulses.samples_per_symbol());
    CHECK(per_sample_signal / noise_variance(NoiseSpec::snr(10.0), c4, pulses) == doctest::Approx(10.0));
}

TEST_CASE("matched filter bank") {
    const auto pulses = build_pulse_set(2, 2.0, 100.0);
    Waveform p1{100.0, pulses.waveforms[0]};
    const auto mf = matched_filter_bank(shifted(p1, 0, 300), pulses);
    CHECK(mf[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mf[1][0] == 0.0);
    for (double v : mf[0]) CHECK(v <= 1.0 + 1e-12);

    const auto moved = matched_filter_bank(shifted(p1, 37, 263), pulses);
    for (std::size_t i = 0; i + 37 < moved[0].size(); ++i) {
        CHECK(moved[0][i + 37] == doctest::Approx(mf[0][i]).epsilon(1e-12));
        CHECK(moved[1][i + 37] == doctest::Approx(mf[1][i]).epsilon(1e-12));
    }
    Waveform zero{100.0, std::vector<double>(50, 0.0)};
    for (const auto &b : matched_filter_bank(zero, pulses))
        CHECK(std::all_of(b.begin(), b.end(), [](double v) { return v == 0.0; }));
    CHECK_THROWS_AS(matched_filter_bank(Waveform{1000.0, {1.0}}, pulses), ValidationError);
}

TEST_CASE("synchronisation recovers a known delay") {
    const auto pulses = build_pulse_set(2, 2.0, 100.0);
    const auto c = build_constellation(Scheme::Four);
    const auto pil = pilot_indices(c, 10);
    std::vector<Vec2> pts;
    for (auto i : pil) pts.push_back(c.points[i]);
    const auto tx = modulate(pil, c, pulses);
    for (std::size_t d : {0u, 1u, 150u, 1234u}) {
        const auto mf = matched_filter_bank(shifted(tx, d, 400), pulses);
        const std::size_t found = synchronize(mf, pts, 200);
        CHECK(found + 1 >= d);
        CHECK(found <= d + 1);

        auto scaled = mf;
        for (auto &b : scaled)
            for (double &v : b) v *= 3.7;
        CHECK(synchronize(scaled, pts, 200) == found);
    }
    // a flat plateau of equal scores resolves to its first index
    std::vector<std::vector<double>> flat(2, std::vector<double>(1000, 1.0));
    CHECK(synchronize(flat, pts, 200) == 0);
    std::vector<std::vector<double>> none(2, std::vector<double>(10, 0.0));
    CHECK_THROWS_AS(synchronize(none, pts, 200), NoSignalError);
}

TEST_CASE("MMSE equaliser fits affine maps") {
    const auto c = build_constellation(Scheme::Four);
    std::vector<Vec2> known;
    for (auto i : pilot_indices(c, 8)) known.push_back(c.points[i]);

    const auto id = train_mmse(known, known);
    CHECK(id.W[0][0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(id.W[0][1]) < 1e-6);
    CHECK(std::abs(id.bias.x) < 1e-6);
    CHECK(std::abs(id.bias.y) < 1e-6);

    std::vector<Vec2> doubled, offset;
    for (const auto &p : known) {
        doubled.push_back(p * 2.0);
        offset.push_back(p + Vec2{0.3, -0.2});
    }
    const auto half = train_mmse(doubled, known);
    CHECK(half.W[0][0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(half.W[1][1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(half.W[1][0]) < 1e-6);
    const auto shift = train_mmse(offset, known);
    CHECK(shift.bias.x == doctest::Approx(-0.3).epsilon(1e-6));
    CHECK(shift.bias.y == doctest::Approx(0.2).epsilon(1e-6));

    const auto per = train_mmse(doubled, known, EqualizerKind::PerDimension);
    CHECK(per.W[0][0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(per.W[0][1] == 0.0);

    CHECK_THROWS_AS(train_mmse(std::span(known).first(2), std::span(known).first(2)), ValidationError);
}

TEST_CASE("minimum distance detection") {
    const auto two = build_constellation(Scheme::Two);
    CHECK(detect({0.9, 0.1}, two) == 0);
    CHECK(detect({0.5, 0.5}, two) == 0);
    CHECK(detect({0.0, 1.0}, two) == 1);
    const auto s = build_constellation(Scheme::Sixteen);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(detect(s.points[i], s) == i);
}

TEST_CASE("advection-dominated link is error-free without noise") {
    for (auto scheme : {Scheme::Two, Scheme::Four}) {
        const auto cfg = advective_link(scheme);
        const auto r = run_link(cfg);
        CHECK(r.symbol_errors == 0);
        CHECK(r.bit_errors == 0);
        CHECK(r.transmitted.size() == 300);
        CHECK(r == run_link(cfg));
    }
}

TEST_CASE("BER sweep records per-trial values") {
    auto cfg = advective_link(Scheme::Two);
    cfg.n_symbols = 100;
    const std::vector<double> pts{INFINITY, -35.0};
    const auto curve = ber_sweep(cfg, NoiseSpec::Kind::Snr, pts, 2);
    REQUIRE(curve.points.size() == 2);
    CHECK(curve.points[0].mean_ber() == 0.0);
    CHECK(curve.points[0].ber.size() == 2);
    CHECK(curve.points[1].mean_ber() > 0.1);
    CHECK(curve.points[1].stderr_ber() >= 0.0);
    const auto again = ber_sweep(cfg, NoiseSpec::Kind::Snr, pts, 2);
    CHECK(again.points[1].bit_errors == curve.points[1].bit_errors);
}

TEST_CASE("link configuration validation") {
    auto cfg = advective_link(Scheme::Two);
    cfg.n_pilots = 2;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = advective_link(Scheme::Two);
    cfg.N = 3;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = advective_link(Scheme::Two);
    cfg.channel.rx_rate = 300.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}
