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

// Brute-force reference computations shared by the unit and acceptance tests.
// They only use the kernel-level impulse response and a Gaussian generator,
// never the closed forms under test.

#include "diffadv/kernel.hpp"
#include "diffadv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace diffadv::oracle {

struct Estimate {
    double mean = 0.0;
    double se = 0.0; ///< standard error of the mean
};

inline Estimate summarize(double sum, double sum2, std::size_t n) {
    const double m = sum / static_cast<double>(n);
    const double var = std::max(0.0, (sum2 - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    return {m, std::sqrt(var / static_cast<double>(n))};
}

/// E[h(tau, t)] over white wind: the window integral is Gaussian with mean
/// mu tau along the wind direction and variance intensity * tau per axis.
inline Estimate mc_mean_response(const Scenario &s, double tau, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> g;
    const double sd = std::sqrt(s.wind.kernel.params().intensity * tau);
    const Vec2 mean = s.mean_wind() * tau;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 x{mean.x + sd * g(eng), mean.y + sd * g(eng)};
        const double h = impulse_response_for_displacement(s.geometry, s.medium, x, tau);
        sum += h;
        sum2 += h * h;
    }
    return summarize(sum, sum2, n);
}

/// E[h(tau1, t1) h(tau2, t2)] over white wind. The union of the two windows
/// is cut at every endpoint; each piece contributes an independent Gaussian
/// increment to the windows that contain it.
inline Estimate mc_autocorrelation(const Scenario &s, double tau1, double tau2, double t1, double t2,
                                   std::size_t n, std::uint64_t seed) {
    std::vector<double> cuts{t1 - tau1, t1, t2 - tau2, t2};
    std::sort(cuts.begin(), cuts.end());
    struct Piece {
        double len;
        bool in1, in2;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b <= a) continue;
        const double mid = 0.5 * (a + b);
        pieces.push_back({b - a, mid > t1 - tau1 && mid < t1, mid > t2 - tau2 && mid < t2});
    }
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> g;
    const double q = s.wind.kernel.params().intensity;
    const Vec2 mu = s.mean_wind();
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 x1{}, x2{};
        for (const auto &p : pieces) {
            const double sd = std::sqrt(q * p.len);
            const Vec2 inc{mu.x * p.len + sd * g(eng), mu.y * p.len + sd * g(eng)};
            if (p.in1) x1 += inc;
            if (p.in2) x2 += inc;
        }
        const double h = impulse_response_for_displacement(s.geometry, s.medium, x1, tau1) *
                         impulse_response_for_displacement(s.geometry, s.medium, x2, tau2);
        sum += h;
        sum2 += h * h;
    }
    return summarize(sum, sum2, n);
}

/// Tuples drawn for the statistical oracle checks: moderate diffusion so that
/// a finite sample resolves the response, mean transport near the receiver.
struct StatTuple {
    Scenario scenario;
    double tau1, tau2, t1, t2;
};

inline std::vector<StatTuple> stat_tuples(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<StatTuple> out;
    for (std::size_t i = 0; i < count; ++i) {
        StatTuple t;
        t.scenario.medium.D = 0.003 + 0.017 * u(eng);
        t.tau1 = 1.5 + 1.5 * u(eng);
        t.tau2 = t.tau1 + (u(eng) - 0.5);
        t.scenario.wind.mean_speed = (0.8 + 0.4 * u(eng)) / t.tau1;
        t.scenario.wind.kernel = CovarianceKernel::white(0.002 + 0.018 * u(eng));
        t.t1 = 5.0 + 5.0 * u(eng);
        t.t2 = t.t1 + 2.0 * (u(eng) - 0.5);
        out.push_back(t);
    }
    return out;
}

} // namespace diffadv::oracle
