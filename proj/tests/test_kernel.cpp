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

#include "diffadv/kernel.hpp"
#include "diffadv/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace diffadv;

namespace {

const Geometry kDefaultGeometry{{0.0, 0.0, 1.0}, {0.70710678118654757, 0.70710678118654757, 1.0}};

// Plain convolution sum used as the reference for propagate.
std::vector<double> brute_force(const Waveform &q, const Geometry &geo, const Medium &med, const WindPath &path,
                                double t_mem) {
    const double dt = q.dt();
    const auto M = static_cast<std::size_t>(std::llround(t_mem / dt));
    std::vector<double> out(q.size(), 0.0);
    for (std::size_t k = 1; k < q.size(); ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= std::min(k, M); ++j)
            acc += impulse_response(geo, med, path, j * dt, k * dt) * q.samples[k - j];
        out[k] = acc * dt;
    }
    return out;
}

} // namespace

TEST_CASE("heat kernel integrates to one") {
    const double D = 6.7698e-6, t = 3.0;
    const double sigma = std::sqrt(2 * D * t), h = sigma / 4;
    const int n = 40;
    double sum = 0.0;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j)
            for (int k = -n; k <= n; ++k) sum += heat_kernel({i * h, j * h, k * h}, t, D);
    CHECK(std::abs(sum * h * h * h - 1.0) < 1e-6);
}

TEST_CASE("heat kernel is zero at non-positive times and radially decreasing") {
    CHECK(heat_kernel({0, 0, 0}, 0.0, 1e-5) == 0.0);
    CHECK(heat_kernel({0, 0, 0}, -1.0, 1e-5) == 0.0);
    CHECK(heat_kernel({0.001, 0, 0}, 1.0, 1e-5) < heat_kernel({0, 0, 0}, 1.0, 1e-5));
    CHECK(heat_kernel({0, 0, 0}, 1.0, 1e-5) == doctest::Approx(std::pow(4 * M_PI * 1e-5, -1.5)));
}

TEST_CASE("image kernel vanishes on the absorbing plane") {
    for (double t : {0.1, 1.0, 10.0, 100.0})
        for (Vec2 y : {Vec2{0, 0}, Vec2{0.01, -0.02}, Vec2{1, 1}}) CHECK(image_kernel(y, 0.0, {0, 0}, 1.0, t, 0.05) == 0.0);
}

TEST_CASE("image kernel is the direct minus the mirrored heat kernel") {
    const double D = 0.01;
    const Vec2 z{0.1, 0.2};
    const double z3 = 0.5;
    for (double t : {0.5, 2.0, 8.0})
        for (double y3 : {0.05, 0.4, 1.0}) {
            const Vec2 y{0.3, 0.1};
            const Vec3 rel{y.x - z.x, y.y - z.y, y3 - z3};
            const Vec3 img{y.x - z.x, y.y - z.y, y3 + z3};
            const double expected = heat_kernel(rel, t, D) - heat_kernel(img, t, D);
            CHECK(image_kernel(y, y3, z, z3, t, D) == doctest::Approx(expected).epsilon(1e-10));
        }
}

TEST_CASE("free-space response peaks at d^2 / (6 D)") {
    // Source and receiver far above the plane so the image term is inert.
    const Geometry geo{{0, 0, 50}, {0.05, 0, 50}};
    const Medium med{6.7698e-6};
    const double expected = 0.05 * 0.05 / (6 * med.D);
    double best_tau = 0.0, best = -1.0;
    for (double tau = 1.0; tau < 200.0; tau += 0.01) {
        const double h = impulse_response_for_displacement(geo, med, {0, 0}, tau);
        if (h > best) {
            best = h;
            best_tau = tau;
        }
    }
    CHECK(best_tau == doctest::Approx(expected).epsilon(0.002));
}

TEST_CASE("impulse response is time invariant under constant wind") {
    const Medium med{};
    WindModel m{0.5, CovarianceKernel::white(0.0)};
    const auto path = sample_wind_path(m, kDefaultGeometry.horizontal_direction(), TimeGrid{0.0, 0.001, 60001}, 1);
    for (double tau : {1.95, 2.0, 2.03}) {
        const double ref = impulse_response(kDefaultGeometry, med, path, tau, tau);
        REQUIRE(ref > 0.0);
        for (double t : {10.0, 33.3, 60.0})
            CHECK(std::abs(impulse_response(kDefaultGeometry, med, path, tau, t) - ref) <= 1e-12 * ref);
    }
}

TEST_CASE("impulse response rejects windows outside the path") {
    WindModel m{0.5, CovarianceKernel::white(0.0)};
    const auto path = sample_wind_path(m, {1, 0}, TimeGrid{0.0, 0.01, 101}, 1);
    CHECK_THROWS_AS(impulse_response(kDefaultGeometry, Medium{}, path, 2.0, 1.0), RangeError);
    CHECK_THROWS_AS(impulse_response(kDefaultGeometry, Medium{}, path, 0.5, 1.5), RangeError);
    CHECK(impulse_response(kDefaultGeometry, Medium{}, path, 0.0, 0.5) == 0.0);
}

TEST_CASE("geometry and medium validation") {
    CHECK_THROWS_AS(Geometry({0, 0, 0}, {1, 0, 1}), ValidationError);
    CHECK_THROWS_AS(Geometry({0, 0, 1}, {1, 0, -1}), ValidationError);
    CHECK_THROWS_AS(Geometry({0, 0, 1}, {0, 0, 1}), ValidationError);
    CHECK_THROWS_AS(Geometry({0, NAN, 1}, {1, 0, 1}), ValidationError);
    CHECK_THROWS_AS(Medium{-1.0}.validate(), ValidationError);
    CHECK(Geometry({0, 0, 1}, {0, 0, 2}).horizontal_direction() == Vec2{1, 0});
    const Vec2 d = kDefaultGeometry.horizontal_direction();
    CHECK(d.norm() == doctest::Approx(1.0));
    CHECK(kDefaultGeometry.horizontal_distance() == doctest::Approx(1.0));
}

TEST_CASE("propagate matches a direct convolution") {
    const Geometry geo{{0, 0, 1}, {0.3, 0.1, 1.05}};
    const Medium med{0.002};
    WindModel m{0.4, CovarianceKernel::white(0.001)};
    const TimeGrid grid{0.0, 0.01, 700};
    const auto path = sample_wind_path(m, geo.horizontal_direction(), grid, 17);
    Waveform q{100.0, std::vector<double>(grid.n, 0.0)};
    Rng rng(3);
    for (std::size_t i = 0; i < 300; ++i) q.samples[i] = std::abs(rng.gaussian());
    const double t_mem = 2.5;
    const Waveform c = propagate(q, geo, med, path, t_mem);
    const auto ref = brute_force(q, geo, med, path, t_mem);
    REQUIRE(c.size() == ref.size());
    const double scale = *std::max_element(ref.begin(), ref.end());
    REQUIRE(scale > 0.0);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(c.samples[i] - ref[i]) <= 1e-9 * scale);

    const Waveform d = propagate_decimated(q, geo, med, path, t_mem, 7);
    CHECK(d.rate == doctest::Approx(100.0 / 7));
    CHECK(d.size() == (grid.n + 6) / 7);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.samples[i] == c.samples[7 * i]);
}

TEST_CASE("propagate with the default scenario and a narrow puff") {
    // Thin puffs exercise the block pruning; the decimated output must agree
    // with the full-rate output sample for sample.
    const Medium med{};
    WindModel m{0.5, CovarianceKernel::white(1e-6)};
    const TimeGrid grid{0.0, 0.001, 9001};
    const auto path = sample_wind_path(m, kDefaultGeometry.horizontal_direction(), grid, 99);
    Waveform q{1000.0, std::vector<double>(grid.n, 0.0)};
    std::fill(q.samples.begin(), q.samples.begin() + 1000, 1.0);
    const Waveform full = propagate(q, kDefaultGeometry, med, path, 5.0);
    const Waveform dec = propagate_decimated(q, kDefaultGeometry, med, path, 5.0, 10);
    for (std::size_t i = 0; i < dec.size(); ++i) CHECK(dec.samples[i] == full.samples[10 * i]);
    const double peak = *std::max_element(full.samples.begin(), full.samples.end());
    CHECK(peak > 0.0);
    // nothing arrives well before the transport delay of about 2 s
    CHECK(full.samples[1500] == 0.0);
}

TEST_CASE("propagate is linear and zero in, zero out") {
    const Geometry geo{{0, 0, 1}, {0.3, 0.0, 1.0}};
    const Medium med{0.002};
    WindModel m{0.3, CovarianceKernel::white(0.0005)};
    const TimeGrid grid{0.0, 0.01, 400};
    const auto path = sample_wind_path(m, geo.horizontal_direction(), grid, 5);
    Waveform a{100.0, std::vector<double>(grid.n, 0.0)}, b = a, sum = a, zero = a;
    for (std::size_t i = 0; i < 100; ++i) {
        a.samples[i] = 1.0;
        b.samples[i + 50] = 2.0;
    }
    for (std::size_t i = 0; i < grid.n; ++i) sum.samples[i] = a.samples[i] + b.samples[i];
    const auto ca = propagate(a, geo, med, path, 3.0), cb = propagate(b, geo, med, path, 3.0);
    const auto cs = propagate(sum, geo, med, path, 3.0), cz = propagate(zero, geo, med, path, 3.0);
    const double scale = *std::max_element(cs.samples.begin(), cs.samples.end());
    for (std::size_t i = 0; i < grid.n; ++i) {
        CHECK(std::abs(cs.samples[i] - ca.samples[i] - cb.samples[i]) <= 1e-12 * scale);
        CHECK(cz.samples[i] == 0.0);
    }
}

TEST_CASE("propagate validates its inputs") {
    WindModel m{0.3, CovarianceKernel::white(0.0)};
    const auto path = sample_wind_path(m, {1, 0}, TimeGrid{0.0, 0.01, 100}, 5);
    Waveform q{100.0, std::vector<double>(100, 1.0)};
    CHECK_THROWS_AS(propagate(Waveform{50.0, q.samples}, kDefaultGeometry, Medium{}, path, 1.0), ValidationError);
    CHECK_THROWS_AS(propagate(Waveform{100.0, std::vector<double>(101, 1.0)}, kDefaultGeometry, Medium{}, path, 1.0),
                    ValidationError);
    CHECK_THROWS_AS(propagate(q, kDefaultGeometry, Medium{}, path, 0.0), ValidationError);
    q.samples[3] = -1.0;
    CHECK_THROWS_AS(propagate(q, kDefaultGeometry, Medium{}, path, 1.0), ValidationError);
}
