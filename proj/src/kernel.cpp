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

#include <algorithm>
#include <cmath>
#include <limits>

namespace diffadv {

namespace {

double log_free_prefactor(double tau, double D) { return -1.5 * std::log(4.0 * kPi * D * tau); }

// 1 - exp(-x3 z3 / (D tau)): the image term relative to the direct term.
double image_factor(double x3, double z3, double tau, double D) { return -std::expm1(-(x3 * z3) / (D * tau)); }

double flush(double v) { return std::abs(v) < kUnderflowFloor ? 0.0 : v; }

void check_finite_vec(const Vec3 &v, const std::string &field) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
        throw ValidationError("coordinates must be finite", field);
}

} // namespace

Geometry::Geometry(Vec3 source, Vec3 receiver) : source_(source), receiver_(receiver) {
    check_finite_vec(source_, "geometry.source");
    check_finite_vec(receiver_, "geometry.receiver");
    if (!(source_.z > 0.0)) throw ValidationError("source height must be > 0", "geometry.source");
    if (!(receiver_.z > 0.0)) throw ValidationError("receiver height must be > 0", "geometry.receiver");
    if (source_ == receiver_) throw ValidationError("receiver coincides with source", "geometry.receiver");
}

Vec2 Geometry::horizontal_direction() const {
    const Vec2 d = horizontal_offset();
    const double n = d.norm();
    if (n == 0.0) return {1.0, 0.0};
    return d * (1.0 / n);
}

void Medium::validate() const {
    if (!(std::isfinite(D) && D > 0.0)) throw ValidationError("diffusion coefficient must be > 0", "medium.D");
}

double heat_kernel(Vec3 y, double t, double D) {
    if (!(t > 0.0)) return 0.0;
    return flush(std::exp(log_free_prefactor(t, D) - y.norm2() / (4.0 * D * t)));
}

double image_kernel(Vec2 y_par, double y3, Vec2 z_par, double z3, double t, double D) {
    if (!(t > 0.0)) return 0.0;
    const double dz = y3 - z3;
    const double r2 = (y_par - z_par).norm2() + dz * dz;
    const double direct = std::exp(log_free_prefactor(t, D) - r2 / (4.0 * D * t));
    return flush(direct * image_factor(y3, z3, t, D));
}

double impulse_response_for_displacement(const Geometry &geo, const Medium &med, Vec2 wind_displacement,
                                         double tau) {
    if (!(tau > 0.0)) return 0.0;
    const Vec3 &x = geo.receiver();
    const Vec3 &z = geo.source();
    const Vec2 d = geo.horizontal_offset() - wind_displacement;
    const double dz = x.z - z.z;
    const double arg = log_free_prefactor(tau, med.D) - (d.norm2() + dz * dz) / (4.0 * med.D * tau);
    if (arg < kLogUnderflowFloor) return 0.0;
    return flush(std::exp(arg) * image_factor(x.z, z.z, tau, med.D));
}

double impulse_response(const Geometry &geo, const Medium &med, const WindPath &path, double tau, double t) {
    if (!(tau > 0.0)) return 0.0;
    const auto &g = path.grid();
    if (tau > t - g.t0 + 1e-9 * g.dt || t > g.end() + 1e-9 * g.dt) {
        throw RangeError("impulse_response window [" + format_double(t - tau) + ", " + format_double(t) +
                         "] outside wind grid; valid delays for this t are (0, " +
                         format_double(std::max(0.0, t - g.t0)) + "] with t <= " + format_double(g.end()));
    }
    return impulse_response_for_displacement(geo, med, path.displacement(t - tau, t), tau);
}

namespace {

constexpr std::size_t kBlock = 128;

// Direct evaluation of the convolution sum with block pruning. A block of
// source indices is skipped only when every term in it is provably below the
// underflow floor, so pruning never changes the result.
Waveform propagate_impl(const Waveform &q, const Geometry &geo, const Medium &med, const WindPath &path,
                        double t_mem, std::size_t factor) {
    med.validate();
    const auto &g = path.grid();
    if (!(q.rate > 0.0)) throw ValidationError("source waveform rate must be > 0", "q.rate");
    if (std::abs(q.dt() - g.dt) > 1e-9 * g.dt)
        throw ValidationError("source waveform step does not match wind grid step", "q.rate");
    if (q.size() > g.n) throw ValidationError("wind path shorter than source waveform", "path");
    if (!(t_mem > 0.0)) throw ValidationError("channel memory must be > 0", "simulation.T_mem");
    if (factor == 0) throw ValidationError("decimation factor must be >= 1", "factor");
    for (double v : q.samples)
        if (!(v >= 0.0)) throw ValidationError("source waveform must be nonnegative", "q");

    const std::size_t n = q.size();
    const double dt = g.dt;
    const auto M = static_cast<std::size_t>(std::llround(t_mem / dt));

    std::vector<double> inv4dt(M + 1, 0.0), logpref(M + 1, 0.0), img(M + 1, 0.0);
    const Vec3 &x = geo.receiver();
    const Vec3 &z = geo.source();
    for (std::size_t j = 1; j <= M; ++j) {
        const double tau = static_cast<double>(j) * dt;
        inv4dt[j] = 1.0 / (4.0 * med.D * tau);
        logpref[j] = log_free_prefactor(tau, med.D);
        img[j] = image_factor(x.z, z.z, tau, med.D);
    }

    const auto &r = path.cumulative();
    const auto &rl = path.cumulative_low();
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<Vec2> bmin(nblocks), bmax(nblocks);
    std::vector<char> bactive(nblocks, 0);
    for (std::size_t b = 0; b < nblocks; ++b) {
        const std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
        Vec2 mn{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        Vec2 mx{-mn.x, -mn.y};
        for (std::size_t m = lo; m < hi; ++m) {
            mn.x = std::min(mn.x, r[m].x);
            mn.y = std::min(mn.y, r[m].y);
            mx.x = std::max(mx.x, r[m].x);
            mx.y = std::max(mx.y, r[m].y);
            if (q.samples[m] != 0.0) bactive[b] = 1;
        }
        bmin[b] = mn;
        bmax[b] = mx;
    }

    const Vec2 offset = geo.horizontal_offset();
    const double dz = x.z - z.z;
    const double dz2 = dz * dz;
    const double skip_level = kLogUnderflowFloor - 1e-6;

    auto axis_gap = [](double lo, double hi) {
        if (lo > 0.0) return lo;
        if (hi < 0.0) return -hi;
        return 0.0;
    };

    Waveform out;
    out.rate = q.rate / static_cast<double>(factor);
    out.samples.assign((n + factor - 1) / factor, 0.0);

    for (std::size_t k = 0, o = 0; k < n; k += factor, ++o) {
        if (k == 0) continue;
        const std::size_t mlo = k > M ? k - M : 0;
        const std::size_t mhi = k - 1;
        const Vec2 base = offset - r[k]; // d ~ base + r[m], used for the pruning bound
        double acc = 0.0;
        for (std::size_t b = mlo / kBlock; b <= mhi / kBlock; ++b) {
            if (!bactive[b]) continue;
            const std::size_t m0 = std::max(mlo, b * kBlock);
            const std::size_t m1 = std::min(mhi, b * kBlock + kBlock - 1);
            const std::size_t jmin = k - m1, jmax = k - m0;
            const double gx = axis_gap(base.x + bmin[b].x, base.x + bmax[b].x);
            const double gy = axis_gap(base.y + bmin[b].y, base.y + bmax[b].y);
            const double bound = logpref[jmin] - (gx * gx + gy * gy + dz2) * inv4dt[jmax];
            if (bound < skip_level) continue;
            for (std::size_t m = m0; m <= m1; ++m) {
                const double qm = q.samples[m];
                if (qm == 0.0) continue;
                const std::size_t j = k - m;
                const Vec2 disp = (r[k] - r[m]) + (rl[k] - rl[m]);
                const double dx = offset.x - disp.x;
                const double dy = offset.y - disp.y;
                const double arg = logpref[j] - (dx * dx + dy * dy + dz2) * inv4dt[j];
                if (arg < kLogUnderflowFloor) continue;
                const double h = std::exp(arg) * img[j];
                if (h < kUnderflowFloor) continue;
                acc += h * qm;
            }
        }
        out.samples[o] = acc * dt;
    }
    return out;
}

} // namespace

Waveform propagate(const Waveform &q, const Geometry &geo, const Medium &med, const WindPath &path, double t_mem) {
    return propagate_impl(q, geo, med, path, t_mem, 1);
}

Waveform propagate_decimated(const Waveform &q, const Geometry &geo, const Medium &med, const WindPath &path,
                             double t_mem, std::size_t factor) {
    return propagate_impl(q, geo, med, path, t_mem, factor);
}

} // namespace diffadv
