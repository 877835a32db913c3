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

#include "diffadv/stats.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

namespace diffadv {

namespace {

struct Eigen2 {
    double lmax, lmin;
    Vec2 vmax, vmin;
};

Eigen2 eigen_sym(const Sym2 &m) {
    const double mid = 0.5 * (m.a + m.c);
    const double half = 0.5 * (m.a - m.c);
    const double rad = std::hypot(half, m.b);
    Eigen2 e{mid + rad, mid - rad, {1.0, 0.0}, {0.0, 1.0}};
    if (m.b != 0.0) {
        // Pick the better-conditioned of the two equivalent eigenvector forms.
        Vec2 v = half >= 0.0 ? Vec2{half + rad, m.b} : Vec2{m.b, rad - half};
        v = v * (1.0 / v.norm());
        e.vmax = v;
    } else if (m.c > m.a) {
        e.vmax = {0.0, 1.0};
    }
    e.vmin = {-e.vmax.y, e.vmax.x};
    return e;
}

struct Mat2 {
    double m00, m01, m10, m11;
};

Mat2 mul(const Mat2 &p, const Mat2 &q) {
    return {p.m00 * q.m00 + p.m01 * q.m10, p.m00 * q.m01 + p.m01 * q.m11, p.m10 * q.m00 + p.m11 * q.m10,
            p.m10 * q.m01 + p.m11 * q.m11};
}

Vec2 mul(const Mat2 &p, Vec2 v) { return {p.m00 * v.x + p.m01 * v.y, p.m10 * v.x + p.m11 * v.y}; }

Mat2 to_mat(const Sym2 &s) { return {s.a, s.b, s.b, s.c}; }

// V diag(f(l1), f(l2)) V^T
Mat2 spectral(const Eigen2 &e, double f1, double f2) {
    const Vec2 u = e.vmax, w = e.vmin;
    return {f1 * u.x * u.x + f2 * w.x * w.x, f1 * u.x * u.y + f2 * w.x * w.y, f1 * u.y * u.x + f2 * w.y * w.x,
            f1 * u.y * u.y + f2 * w.y * w.y};
}

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

double log_beta(double tau, const Geometry &geo, const Medium &med) {
    const double x3 = geo.receiver().z, z3 = geo.source().z;
    const double dz = x3 - z3;
    const double img = -std::expm1(-(x3 * z3) / (med.D * tau));
    return -1.5 * std::log(4.0 * kPi * med.D * tau) - dz * dz / (4.0 * med.D * tau) + std::log(img);
}

double flush(double v) { return std::abs(v) < kUnderflowFloor ? 0.0 : v; }

std::mutex fftw_plan_mutex;

} // namespace

EnvelopeTerms envelope(double tau, const Geometry &geo, const Medium &med) {
    if (!(tau > 0.0)) throw ValidationError("delay must be > 0", "tau");
    med.validate();
    return {flush(std::exp(log_beta(tau, geo, med))), 1.0 / (4.0 * med.D * tau)};
}

double mgf_full_rank(const QuadraticFormSpec &spec) {
    const Eigen2 e = eigen_sym(spec.cov);
    if (!(e.lmin > 0.0)) throw Error("full-rank quadratic form MGF needs a positive definite covariance");
    const Mat2 root = spectral(e, std::sqrt(e.lmax), std::sqrt(e.lmin));
    const Mat2 inv_root = spectral(e, 1.0 / std::sqrt(e.lmax), 1.0 / std::sqrt(e.lmin));
    const Mat2 R = mul(mul(root, to_mat(spec.A)), root);
    const double t = spec.t;
    const Mat2 I2tR{1.0 - 2.0 * t * R.m00, -2.0 * t * R.m01, -2.0 * t * R.m10, 1.0 - 2.0 * t * R.m11};
    const double det = I2tR.m00 * I2tR.m11 - I2tR.m01 * I2tR.m10;
    if (!(det > 0.0)) throw Error("quadratic form MGF diverges: |I - 2tR| <= 0");
    const Mat2 inv{I2tR.m11 / det, -I2tR.m01 / det, -I2tR.m10 / det, I2tR.m00 / det};
    const Vec2 w = mul(inv_root, spec.mean);
    const double expo = t * dot(w, mul(mul(R, inv), w));
    return std::exp(expo) / std::sqrt(det);
}

double mgf_rank_one(const QuadraticFormSpec &spec) {
    const Eigen2 e = eigen_sym(spec.cov);
    if (!(e.lmax > 0.0)) throw Error("rank-one quadratic form MGF needs a nonzero covariance");
    const Vec2 B = e.vmax * std::sqrt(e.lmax);
    const Mat2 A = to_mat(spec.A);
    const double lambda = dot(B, mul(A, B));
    const double alpha = dot(spec.mean, mul(A, spec.mean));
    const double b = dot(B, mul(A, spec.mean));
    const double t = spec.t;
    const double denom = 1.0 - 2.0 * t * lambda;
    if (!(denom > 0.0)) throw Error("quadratic form MGF diverges: 1 - 2 t lambda <= 0");
    return std::exp(-0.5 * std::log(denom) + alpha * t + 2.0 * t * t * b * b / denom);
}

MgfResult mgf_quadratic_form(const QuadraticFormSpec &spec) {
    const Eigen2 e = eigen_sym(spec.cov);
    if (!(e.lmax > 0.0)) {
        const double alpha = dot(spec.mean, mul(to_mat(spec.A), spec.mean));
        return {std::exp(spec.t * alpha), MgfBranch::Degenerate};
    }
    if (e.lmin < kSingularThreshold * e.lmax) return {mgf_rank_one(spec), MgfBranch::RankOne};
    return {mgf_full_rank(spec), MgfBranch::FullRank};
}

double mean_response(double tau, double t, const Scenario &scenario, const QuadratureOptions &opts) {
    const EnvelopeTerms env = envelope(tau, scenario.geometry, scenario.medium);
    const double s2 = sigma_x_squared(scenario.wind.kernel, tau, t, opts);
    const Vec2 m = scenario.geometry.horizontal_offset() - scenario.mean_wind() * tau;
    const double den = 1.0 + 2.0 * env.alpha * s2;
    return flush(env.beta / den * std::exp(-env.alpha * m.norm2() / den));
}

QuadraticFormSpec autocorrelation_form(int axis, double tau1, double tau2, double t1, double t2,
                                       const Scenario &scenario, const QuadratureOptions &opts) {
    if (!(tau1 > 0.0)) throw ValidationError("delay must be > 0", "tau1");
    if (!(tau2 > 0.0)) throw ValidationError("delay must be > 0", "tau2");
    scenario.medium.validate();
    const auto &k = scenario.wind.kernel;
    const Vec2 off = scenario.geometry.horizontal_offset();
    const Vec2 mu = scenario.mean_wind();
    const double o = axis == 0 ? off.x : off.y;
    const double u = axis == 0 ? mu.x : mu.y;
    QuadraticFormSpec q;
    q.A = {1.0 / tau1, 0.0, 1.0 / tau2};
    q.mean = {o - u * tau1, o - u * tau2};
    q.cov = {sigma_x_squared(k, tau1, t1, opts), big_l(k, tau1, tau2, t1, t2, opts),
             sigma_x_squared(k, tau2, t2, opts)};
    q.t = -1.0 / (4.0 * scenario.medium.D);
    return q;
}

double autocorrelation(double tau1, double tau2, double t1, double t2, const Scenario &scenario,
                       const QuadratureOptions &opts) {
    const Geometry &g = scenario.geometry;
    const Medium &med = scenario.medium;
    const double lb = log_beta(tau1, g, med) + log_beta(tau2, g, med);
    QuadraticFormSpec q0 = autocorrelation_form(0, tau1, tau2, t1, t2, scenario, opts);
    // Both axes share the covariance; only the mean offsets differ.
    QuadraticFormSpec q1 = q0;
    const Vec2 off = g.horizontal_offset();
    const Vec2 mu = scenario.mean_wind();
    q1.mean = {off.y - mu.y * tau1, off.y - mu.y * tau2};
    const double m0 = mgf_quadratic_form(q0).value;
    const double m1 = mgf_quadratic_form(q1).value;
    if (m0 == 0.0 || m1 == 0.0) return 0.0;
    return flush(std::exp(lb + std::log(m0) + std::log(m1)));
}

double wss_autocorrelation(double tau1, double tau2, double dt, const Scenario &scenario, double t0,
                           const QuadratureOptions &opts) {
    if (!scenario.wind.kernel.is_wss())
        throw ValidationError("WSS autocorrelation needs a stationary kernel, got " +
                                  scenario.wind.kernel.describe(),
                              "wind.kernel.kind");
    return autocorrelation(tau1, tau2, t0, t0 + dt, scenario, opts);
}

PdpCurve pdp(const std::vector<double> &tau, const Scenario &scenario) {
    if (!scenario.wind.kernel.is_white())
        throw ValidationError("closed-form PDP needs a white wind kernel, got " + scenario.wind.kernel.describe(),
                              "wind.kernel.kind");
    const Geometry &g = scenario.geometry;
    const Medium &med = scenario.medium;
    med.validate();
    const double sv2 = scenario.wind.kernel.params().intensity;
    const double deff = med.D + sv2;
    const double log_pref = std::log(med.D / deff);
    const Vec2 off = g.horizontal_offset();
    const Vec2 mu = scenario.mean_wind();

    PdpCurve curve;
    curve.tau = tau;
    curve.value.resize(tau.size(), 0.0);
    for (std::size_t i = 0; i < tau.size(); ++i) {
        const double tt = tau[i];
        if (!(tt > 0.0)) continue;
        const Vec2 m = off - mu * tt;
        const double arg = 2.0 * log_beta(tt, g, med) + log_pref - m.norm2() / (2.0 * tt * deff);
        curve.value[i] = arg < kLogUnderflowFloor ? 0.0 : flush(std::exp(arg));
    }
    curve.peclet = peclet(g, med, scenario.wind);
    if (scenario.wind.mean_speed > 0.0) curve.dispersion_time = dispersion_time(g, med, scenario.wind);
    return curve;
}

std::vector<double> pdp_via_autocorrelation(const std::vector<double> &tau, const Scenario &scenario) {
    std::vector<double> out(tau.size(), 0.0);
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (tau[i] > 0.0) out[i] = wss_autocorrelation(tau[i], tau[i], 0.0, scenario);
    }
    return out;
}

double pdp_discrepancy(const std::vector<double> &tau, const Scenario &scenario) {
    const PdpCurve closed = pdp(tau, scenario);
    const std::vector<double> general = pdp_via_autocorrelation(tau, scenario);
    double scale = 0.0, worst = 0.0;
    for (double v : general) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        worst = std::max(worst, std::abs(closed.value[i] - general[i]) / scale);
    return worst;
}

Spectrum pdp_spectrum(const PdpCurve &curve) {
    const std::size_t n = curve.tau.size();
    if (n != curve.value.size()) throw ValidationError("tau and value lengths differ", "pdp");
    if (n < 2) throw ValidationError("spectrum needs at least two samples", "pdp.tau");
    const double step = curve.tau[1] - curve.tau[0];
    if (!(step > 0.0)) throw ValidationError("tau grid must be increasing", "pdp.tau");
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((curve.tau[i] - curve.tau[i - 1]) - step) > 1e-9 * step)
            throw ValidationError("tau grid is not uniform", "pdp.tau");
    }
    std::vector<double> in(curve.value);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), reinterpret_cast<fftw_complex *>(out.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    Spectrum s;
    s.frequency.resize(out.size());
    s.magnitude.resize(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        s.frequency[k] = static_cast<double>(k) / (static_cast<double>(n) * step);
        s.magnitude[k] = std::abs(out[k]) * step;
    }
    return s;
}

double bandwidth_3db(const Spectrum &spectrum) {
    if (spectrum.magnitude.empty()) return 0.0;
    const double dc = spectrum.magnitude[0];
    if (dc == 0.0) return 0.0;
    const double level = dc / std::sqrt(2.0);
    for (std::size_t k = 1; k < spectrum.magnitude.size(); ++k) {
        const double m1 = spectrum.magnitude[k];
        if (m1 < level) {
            const double m0 = spectrum.magnitude[k - 1];
            const double f0 = spectrum.frequency[k - 1], f1 = spectrum.frequency[k];
            return f0 + (m0 - level) / (m0 - m1) * (f1 - f0);
        }
    }
    return spectrum.frequency.back();
}

double peclet(const Geometry &geo, const Medium &med, const WindModel &wind) {
    med.validate();
    return geo.horizontal_distance() * wind.mean_speed / (med.D + wind.kernel.effective_intensity());
}

double dispersion_time(const Geometry &geo, const Medium &med, const WindModel &wind) {
    med.validate();
    const double mu = wind.mean_speed;
    if (!(mu > 0.0))
        throw ValidationError("dispersion time needs a positive mean wind (advection-dominated regime)",
                              "wind.mean");
    const double L2 = geo.horizontal_offset().norm2();
    const double deff = med.D + wind.kernel.effective_intensity();
    return std::sqrt(L2 * deff / (2.0 * std::sqrt(2.0) * mu * mu * mu));
}

std::string to_string(ChannelClass c) { return c == ChannelClass::NonDispersive ? "NonDispersive" : "Dispersive"; }

ChannelClass classify(double t_sym, double t_d) {
    if (!(t_sym > 0.0)) throw ValidationError("symbol period must be > 0", "T_sym");
    if (!(t_d > 0.0)) throw ValidationError("dispersion time must be > 0", "T_d");
    return t_sym >= t_d ? ChannelClass::NonDispersive : ChannelClass::Dispersive;
}

} // namespace diffadv
