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

#include <doctest.h>

using namespace diffadv;

namespace {

Scenario advective() {
    Scenario s;
    s.wind.mean_speed = 0.5;
    s.wind.kernel = CovarianceKernel::white(1e-6);
    return s;
}

} // namespace

TEST_CASE("a single pulse cannot leak") {
    CHECK(pulse_leakage(1, 2.0, advective(), ChannelMode::MeanResponse).leakage == 0.0);
    CHECK(pulse_leakage(1, 8.0, advective(), ChannelMode::SeededRealization, 3).leakage == 0.0);
}

TEST_CASE("advective leakage shrinks with longer symbols") {
    const Scenario s = advective();
    double prev = INFINITY;
    for (double T : {2.0, 4.0, 8.0, 16.0}) {
        const double v = pulse_leakage(2, T, s, ChannelMode::MeanResponse).leakage;
        CHECK(v >= 0.0);
        CHECK(v < prev);
        prev = v;
    }
    const double l2 = pulse_leakage(2, 2.0, s, ChannelMode::MeanResponse).leakage;
    CHECK(l2 < pulse_leakage(3, 2.0, s, ChannelMode::MeanResponse).leakage);
    CHECK(l2 < pulse_leakage(4, 2.0, s, ChannelMode::MeanResponse).leakage);
}

TEST_CASE("leakage scales with the square of the source amplitude") {
    LeakageOptions o;
    const double base = pulse_leakage(2, 4.0, advective(), ChannelMode::MeanResponse, 0, o).leakage;
    o.source_amplitude = 3.0;
    const double tripled = pulse_leakage(2, 4.0, advective(), ChannelMode::MeanResponse, 0, o).leakage;
    CHECK(tripled == doctest::Approx(9.0 * base).epsilon(1e-10));
}

TEST_CASE("rate is raised until segments hold whole samples") {
    const auto r = pulse_leakage(3, 2.0, advective(), ChannelMode::MeanResponse);
    CHECK(r.rate == 300.0);
    CHECK(pulse_leakage(2, 2.0, advective(), ChannelMode::MeanResponse).rate == 100.0);
}

TEST_CASE("realisation mode is seeded") {
    const Scenario s = advective();
    const auto a = pulse_leakage(2, 4.0, s, ChannelMode::SeededRealization, 17);
    const auto b = pulse_leakage(2, 4.0, s, ChannelMode::SeededRealization, 17);
    CHECK(a.leakage == b.leakage);
    CHECK(a.leakage >= 0.0);
    CHECK(a.seed == 17);
}

TEST_CASE("sweep cells match single evaluations") {
    const Scenario s = advective();
    const auto rows = leakage_sweep({1, 2}, {2.0, 4.0}, s, ChannelMode::MeanResponse);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].N == 1);
    CHECK(rows[1].T_sym == 4.0);
    for (const auto &r : rows) {
        CHECK(r.leakage == pulse_leakage(r.N, r.T_sym, s, ChannelMode::MeanResponse).leakage);
        CHECK(!r.scenario.empty());
    }
    CHECK(channel_mode_from_string(to_string(ChannelMode::SeededRealization)) == ChannelMode::SeededRealization);
    CHECK_THROWS_AS(channel_mode_from_string("average"), ValidationError);
    CHECK_THROWS_AS(pulse_leakage(0, 2.0, s, ChannelMode::MeanResponse), ValidationError);
}
