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

#include "diffadv/wind.hpp"

#include "diffadv/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diffadv {

namespace {

void require(bool ok, const std::string &msg, const std::string &field) {
    if (!ok) throw ValidationError(msg, field);
}

// Trapezoid nodes covering [lo, lo + len] with step min(step, len / 64).
struct TrapezoidRule {
    double lo;
    double h;
    std::size_t intervals;

    TrapezoidRule(double lo_, double len, double step) : lo(lo_) {
        const double target = std::min(step, len / 64.0);
        intervals = static_cast<std::size_t>(std::ceil(len / target - 1e-9));
        intervals = std::max<std::size_t>(intervals, 1);
        h = len / static_cast<double>(intervals);
    }

    double node(std::size_t i) const { return lo + static_cast<double>(i) * h; }
    double weight(std::size_t i) const { return (i == 0 || i == intervals) ? 0.5 * h : h; }
};

} // namespace

std::string to_string(KernelKind kind) {
    switch (kind) {
    case KernelKind::White: return "white";
    case KernelKind::WssExponential: return "wss_exponential";
    case KernelKind::WssGaussian: return "wss_gaussian";
    case KernelKind::NonstationaryExponential: return "nonstationary_exponential";
    case KernelKind::NonstationaryOscillatory: return "nonstationary_oscillatory";
    case KernelKind::Custom: return "custom";
    }
    return "unknown";
}

KernelKind kernel_kind_from_string(const std::string &name) {
    for (auto k : {KernelKind::White, KernelKind::WssExponential, KernelKind::WssGaussian,
                   KernelKind::NonstationaryExponential, KernelKind::NonstationaryOscillatory}) {
        if (to_string(k) == name) return k;
    }
    throw ValidationError("unknown kernel kind '" + name + "'", "wind.kernel.kind");
}

CovarianceKernel::CovarianceKernel(KernelKind kind, KernelParams params, Function fn, bool stationary)
    : kind_(kind), params_(params), custom_(std::move(fn)), custom_stationary_(stationary) {}

CovarianceKernel CovarianceKernel::white(double intensity) {
    KernelParams p;
    p.intensity = intensity;
    return from_params(KernelKind::White, p);
}

CovarianceKernel CovarianceKernel::wss_exponential(double variance, double corr_time) {
    KernelParams p;
    p.variance = variance;
    p.corr_time = corr_time;
    return from_params(KernelKind::WssExponential, p);
}

CovarianceKernel CovarianceKernel::wss_gaussian(double variance, double corr_time) {
    KernelParams p;
    p.variance = variance;
    p.corr_time = corr_time;
    return from_params(KernelKind::WssGaussian, p);
}

CovarianceKernel CovarianceKernel::nonstationary_exponential(double variance, double corr_time,
                                                             double center, double width) {
    KernelParams p;
    p.variance = variance;
    p.corr_time = corr_time;
    p.center = center;
    p.width = width;
    return from_params(KernelKind::NonstationaryExponential, p);
}

CovarianceKernel CovarianceKernel::nonstationary_oscillatory(double variance, double corr_time,
                                                             double period, double mod_depth,
                                                             double mod_scale) {
    KernelParams p;
    p.variance = variance;
    p.corr_time = corr_time;
    p.period = period;
    p.mod_depth = mod_depth;
    p.mod_scale = mod_scale;
    return from_params(KernelKind::NonstationaryOscillatory, p);
}

CovarianceKernel CovarianceKernel::custom(Function fn, bool stationary) {
    if (!fn) throw ValidationError("custom kernel needs a callable", "wind.kernel");
    return CovarianceKernel(KernelKind::Custom, KernelParams{}, std::move(fn), stationary);
}

CovarianceKernel CovarianceKernel::from_params(KernelKind kind, const KernelParams &p) {
    const std::string f = "wind.kernel.";
    switch (kind) {
    case KernelKind::White:
        require(std::isfinite(p.intensity) && p.intensity >= 0.0, "must be >= 0", f + "intensity");
        break;
    case KernelKind::NonstationaryOscillatory:
        require(std::isfinite(p.period) && p.period > 0.0, "must be > 0", f + "period");
        require(std::isfinite(p.mod_scale) && p.mod_scale > 0.0, "must be > 0", f + "mod_scale");
        require(std::isfinite(p.mod_depth) && std::abs(p.mod_depth) <= 1.0, "must lie in [-1, 1]",
                f + "mod_depth");
        [[fallthrough]];
    case KernelKind::WssExponential:
    case KernelKind::WssGaussian:
    case KernelKind::NonstationaryExponential:
        require(std::isfinite(p.variance) && p.variance >= 0.0, "must be >= 0", f + "variance");
        require(std::isfinite(p.corr_time) && p.corr_time > 0.0, "must be > 0", f + "corr_time");
        if (kind == KernelKind::NonstationaryExponential) {
            require(std::isfinite(p.width) && p.width > 0.0, "must be > 0", f + "width");
            require(std::isfinite(p.center), "must be finite", f + "center");
        }
        break;
    case KernelKind::Custom:
        throw ValidationError("custom kernels are built with CovarianceKernel::custom", f + "kind");
    }
    return CovarianceKernel(kind, p);
}

bool CovarianceKernel::is_wss() const {
    switch (kind_) {
    case KernelKind::White:
    case KernelKind::WssExponential:
    case KernelKind::WssGaussian: return true;
    case KernelKind::Custom: return custom_stationary_;
    default: return false;
    }
}

double CovarianceKernel::operator()(double t1, double t2) const {
    const double d = t1 - t2;
    const auto &p = params_;
    switch (kind_) {
    case KernelKind::White:
        throw ValidationError("white kernel is a delta and has no pointwise value; "
                              "use sigma_x_squared or big_l",
                              "wind.kernel");
    case KernelKind::WssExponential: return p.variance * std::exp(-std::abs(d) / p.corr_time);
    case KernelKind::WssGaussian: {
        const double u = d / p.corr_time;
        return p.variance * std::exp(-u * u);
    }
    case KernelKind::NonstationaryExponential: {
        const double mid = 0.5 * (t1 + t2) - p.center;
        return p.variance * std::exp(-std::abs(d) / p.corr_time) *
               std::exp(-mid * mid / (2.0 * p.width * p.width));
    }
    case KernelKind::NonstationaryOscillatory:
        return p.variance * std::cos(2.0 * kPi * d / p.period) * std::exp(-std::abs(d) / p.corr_time) *
               (1.0 + p.mod_depth * std::sin((t1 + t2) / p.mod_scale));
    case KernelKind::Custom: return custom_(t1, t2);
    }
    return 0.0;
}

double CovarianceKernel::effective_intensity() const {
    switch (kind_) {
    case KernelKind::White: return params_.intensity;
    case KernelKind::WssExponential: return 2.0 * params_.variance * params_.corr_time;
    case KernelKind::WssGaussian: return std::sqrt(kPi) * params_.variance * params_.corr_time;
    default:
        throw ValidationError("effective intensity is defined only for white and built-in WSS kernels (got " +
                                  to_string(kind_) + ")",
                              "wind.kernel.kind");
    }
}

std::string CovarianceKernel::describe() const {
    std::ostringstream os;
    const auto &p = params_;
    os << to_string(kind_);
    switch (kind_) {
    case KernelKind::White: os << "(intensity=" << format_double(p.intensity) << ")"; break;
    case KernelKind::WssExponential:
    case KernelKind::WssGaussian:
        os << "(variance=" << format_double(p.variance) << ", corr_time=" << format_double(p.corr_time) << ")";
        break;
    case KernelKind::NonstationaryExponential:
        os << "(variance=" << format_double(p.variance) << ", corr_time=" << format_double(p.corr_time)
           << ", center=" << format_double(p.center) << ", width=" << format_double(p.width) << ")";
        break;
    case KernelKind::NonstationaryOscillatory:
        os << "(variance=" << format_double(p.variance) << ", corr_time=" << format_double(p.corr_time)
           << ", period=" << format_double(p.period) << ", mod_depth=" << format_double(p.mod_depth)
           << ", mod_scale=" << format_double(p.mod_scale) << ")";
        break;
    case KernelKind::Custom: os << (custom_stationary_ ? "(stationary)" : "()"); break;
    }
    return os.str();
}

double cov(const CovarianceKernel &kernel, double t1, double t2) { return kernel(t1, t2); }

double sigma_x_squared(const CovarianceKernel &kernel, double tau, double t, const QuadratureOptions &opts) {
    if (!(tau >= 0.0)) throw ValidationError("delay must be >= 0", "tau");
    if (tau == 0.0) return 0.0;
    if (kernel.is_white()) return kernel.params().intensity * tau;
    return big_l(kernel, tau, tau, t, t, opts);
}

double big_l(const CovarianceKernel &kernel, double tau1, double tau2, double t1, double t2,
             const QuadratureOptions &opts) {
    if (!(tau1 >= 0.0)) throw ValidationError("delay must be >= 0", "tau1");
    if (!(tau2 >= 0.0)) throw ValidationError("delay must be >= 0", "tau2");
    if (tau1 == 0.0 || tau2 == 0.0) return 0.0;
    if (kernel.is_white()) {
        const double lo = std::max(t1 - tau1, t2 - tau2);
        const double hi = std::min(t1, t2);
        return kernel.params().intensity * std::max(0.0, hi - lo);
    }
    if (!(opts.step > 0.0)) throw ValidationError("quadrature step must be > 0", "quadrature.step");
    const TrapezoidRule a(t1 - tau1, tau1, opts.step);
    const TrapezoidRule b(t2 - tau2, tau2, opts.step);
    double total = 0.0;
    for (std::size_t i = 0; i <= a.intervals; ++i) {
        const double ti = a.node(i);
        double row = 0.0;
        for (std::size_t j = 0; j <= b.intervals; ++j) row += b.weight(j) * kernel(ti, b.node(j));
        total += a.weight(i) * row;
    }
    return total;
}

namespace {

// Error-free sum: a + b == s + err exactly.
void two_sum(double a, double b, double &s, double &err) {
    s = a + b;
    const double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
}

} // namespace

WindPath::WindPath(TimeGrid grid, std::vector<Vec2> samples) : grid_(grid), samples_(std::move(samples)) {
    if (!(grid_.dt > 0.0)) throw ValidationError("grid step must be > 0", "grid.dt");
    if (samples_.size() != grid_.n) throw ValidationError("sample count does not match grid", "grid.n");
    cumulative_.resize(grid_.n);
    cumulative_low_.resize(grid_.n);
    // Compensated running sum so that differences of distant positions keep
    // full precision.
    Vec2 hi{}, lo{};
    for (std::size_t k = 0; k < grid_.n; ++k) {
        cumulative_[k] = hi;
        cumulative_low_[k] = lo;
        const Vec2 step = samples_[k] * grid_.dt;
        double ex = 0.0, ey = 0.0;
        two_sum(hi.x, step.x, hi.x, ex);
        two_sum(hi.y, step.y, hi.y, ey);
        lo += Vec2{ex, ey};
    }
}

void WindPath::locate(double t, std::size_t &index, Vec2 &remainder) const {
    const double u = (t - grid_.t0) / grid_.dt;
    const double k = std::round(u);
    if (std::abs(u - k) <= 1e-9) {
        index = static_cast<std::size_t>(k);
        remainder = {};
        return;
    }
    index = static_cast<std::size_t>(std::floor(u));
    remainder = samples_[index] * (t - grid_.at(index));
}

Vec2 WindPath::displacement(double a, double b) const {
    const double slack = 1e-9 * grid_.dt;
    if (!(a <= b)) throw RangeError("displacement needs a <= b");
    if (grid_.n < 2 || a < grid_.t0 - slack || b > grid_.end() + slack) {
        throw RangeError("displacement window [" + format_double(a) + ", " + format_double(b) +
                         "] outside wind grid [" + format_double(grid_.t0) + ", " + format_double(grid_.end()) +
                         "]");
    }
    if (a == b) return {};
    std::size_t ia = 0, ib = 0;
    Vec2 ra, rb;
    locate(a, ia, ra);
    locate(b, ib, rb);
    return (cumulative_[ib] - cumulative_[ia]) + ((cumulative_low_[ib] - cumulative_low_[ia]) + (rb - ra));
}

Vec2 displacement(const WindPath &path, double a, double b) { return path.displacement(a, b); }

WindPath sample_wind_path(const WindModel &model, Vec2 direction, const TimeGrid &grid, std::uint64_t seed) {
    if (!(grid.dt > 0.0)) throw ValidationError("grid step must be > 0", "grid.dt");
    if (grid.n < 2) throw ValidationError("grid needs at least 2 points", "grid.n");
    const Vec2 mean = direction * model.mean_speed;
    std::vector<Vec2> v(grid.n, mean);
    Rng rng(seed);

    if (model.kernel.is_white()) {
        const double sd = std::sqrt(model.kernel.params().intensity / grid.dt);
        for (auto &s : v) {
            const double g1 = rng.gaussian();
            const double g2 = rng.gaussian();
            s.x += sd * g1;
            s.y += sd * g2;
        }
        return WindPath(grid, std::move(v));
    }

    if (grid.n > kMaxDenseWindSamples) {
        throw ValidationError("dense sampling of " + model.kernel.describe() + " limited to " +
                                  std::to_string(kMaxDenseWindSamples) + " grid points (got " +
                                  std::to_string(grid.n) + ")",
                              "grid.n");
    }
    const auto n = static_cast<Eigen::Index>(grid.n);
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double c = model.kernel(grid.at(static_cast<std::size_t>(i)), grid.at(static_cast<std::size_t>(j)));
            K(i, j) = c;
            K(j, i) = c;
        }
    }
    const double max_diag = K.diagonal().maxCoeff();
    if (max_diag == 0.0) return WindPath(grid, std::move(v));
    K.diagonal().array() += 1e-10 * max_diag;
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() != Eigen::Success) {
        throw ValidationError("covariance matrix not positive definite after jitter for " + model.kernel.describe(),
                              "wind.kernel");
    }
    Eigen::VectorXd z1(n), z2(n);
    for (Eigen::Index i = 0; i < n; ++i) z1(i) = rng.gaussian();
    for (Eigen::Index i = 0; i < n; ++i) z2(i) = rng.gaussian();
    const Eigen::VectorXd w1 = llt.matrixL() * z1;
    const Eigen::VectorXd w2 = llt.matrixL() * z2;
    for (Eigen::Index i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)].x += w1(i);
        v[static_cast<std::size_t>(i)].y += w2(i);
    }
    return WindPath(grid, std::move(v));
}

} // namespace diffadv
