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

#include "diffadv/common.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace diffadv {

enum class KernelKind {
    White,
    WssExponential,
    WssGaussian,
    NonstationaryExponential,
    NonstationaryOscillatory,
    Custom,
};

std::string to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string &name);

/// Named parameters of the built-in kernels. Only the fields relevant to a
/// kind are read.
struct KernelParams {
    double intensity = 0.0;  ///< White: sigma_v^2 as delta intensity [m^2/s]
    double variance = 0.0;   ///< finite kernels: pointwise variance [m^2/s^2]
    double corr_time = 10.0; ///< exponential / Gaussian decay time [s]
    double center = 5.0;     ///< NonstationaryExponential envelope centre [s]
    double width = 30.0;     ///< NonstationaryExponential envelope std [s]
    double period = 8.0;     ///< NonstationaryOscillatory cosine period [s]
    double mod_depth = 0.3;  ///< NonstationaryOscillatory modulation depth
    double mod_scale = 20.0; ///< NonstationaryOscillatory: sin((t1 + t2) / mod_scale)

    bool operator==(const KernelParams &) const = default;
};

/// Covariance function Cov(v(t1), v(t2)) of one horizontal wind component.
///
/// The built-in kernels, with dt = t1 - t2 and s = t1 + t2:
///   WssExponential            var * exp(-|dt| / tc)
///   WssGaussian               var * exp(-(dt / tc)^2)
///   NonstationaryExponential  var * exp(-|dt| / tc) * exp(-(s/2 - center)^2 / (2 width^2))
///   NonstationaryOscillatory  var * cos(2 pi dt / period) * exp(-|dt| / tc)
///                                 * (1 + depth * sin(s / mod_scale))
/// White is intensity * delta(dt) and has no pointwise value.
class CovarianceKernel {
  public:
    using Function = std::function<double(double, double)>;

    static CovarianceKernel white(double intensity);
    static CovarianceKernel wss_exponential(double variance, double corr_time);
    static CovarianceKernel wss_gaussian(double variance, double corr_time);
    static CovarianceKernel nonstationary_exponential(double variance, double corr_time,
                                                      double center = 5.0, double width = 30.0);
    static CovarianceKernel nonstationary_oscillatory(double variance, double corr_time,
                                                      double period = 8.0, double mod_depth = 0.3,
                                                      double mod_scale = 20.0);
    /// User-supplied kernel. `stationary` declares dependence on t1 - t2 only.
    static CovarianceKernel custom(Function fn, bool stationary = false);

    /// Builds and validates a built-in kernel from named parameters.
    static CovarianceKernel from_params(KernelKind kind, const KernelParams &params);

    KernelKind kind() const { return kind_; }
    const KernelParams &params() const { return params_; }
    bool is_white() const { return kind_ == KernelKind::White; }
    bool is_wss() const;

    /// Pointwise covariance; throws ValidationError for White.
    double operator()(double t1, double t2) const;

    /// Long-window diffusion intensity lim sigma_X^2(tau) / tau for White and
    /// WSS kernels [m^2/s]. Throws for non-stationary kernels.
    double effective_intensity() const;

    std::string describe() const;

  private:
    CovarianceKernel(KernelKind kind, KernelParams params, Function fn = {}, bool stationary = false);

    KernelKind kind_;
    KernelParams params_;
    Function custom_;
    bool custom_stationary_ = false;
};

/// Pointwise covariance, symmetric in its arguments.
double cov(const CovarianceKernel &kernel, double t1, double t2);

struct QuadratureOptions {
    /// Upper bound on the nested trapezoid step; the step used on a window of
    /// length tau is min(step, tau / 64).
    double step = 0.05;
};

/// Variance of the integrated wind over [t - tau, t].
double sigma_x_squared(const CovarianceKernel &kernel, double tau, double t,
                       const QuadratureOptions &opts = {});

/// Covariance of the integrated wind over [t1 - tau1, t1] and [t2 - tau2, t2].
double big_l(const CovarianceKernel &kernel, double tau1, double tau2, double t1, double t2,
             const QuadratureOptions &opts = {});

struct WindModel {
    /// Mean speed along the source->receiver horizontal direction [m/s].
    /// Positive means towards the receiver.
    double mean_speed = 0.0;
    CovarianceKernel kernel = CovarianceKernel::white(0.0);
};

struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 0;

    double at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double end() const { return at(n == 0 ? 0 : n - 1); }
};

/// One sampled realisation of the horizontal wind. The wind is held constant
/// over [t_k, t_k + dt), so the cumulative displacement is piecewise linear in
/// time and exact at every grid point.
class WindPath {
  public:
    WindPath(TimeGrid grid, std::vector<Vec2> samples);

    const TimeGrid &grid() const { return grid_; }
    const std::vector<Vec2> &samples() const { return samples_; }
    /// r(t_k) - r(t_0) at every grid point; r[0] == 0. The exact running
    /// sum is cumulative()[k] + cumulative_low()[k].
    const std::vector<Vec2> &cumulative() const { return cumulative_; }
    const std::vector<Vec2> &cumulative_low() const { return cumulative_low_; }

    /// Integral of the wind over [a, b]; a <= b, both inside the grid span.
    Vec2 displacement(double a, double b) const;

  private:
    // Grid index at or below t and the wind integral from there to t.
    void locate(double t, std::size_t &index, Vec2 &remainder) const;

    TimeGrid grid_;
    std::vector<Vec2> samples_;
    std::vector<Vec2> cumulative_;
    std::vector<Vec2> cumulative_low_;
};

/// Largest grid accepted for dense sampling of finite-memory kernels.
inline constexpr std::size_t kMaxDenseWindSamples = 4096;

/// Draws a wind realisation on `grid`. The mean is mean_speed * direction;
/// both horizontal components are iid with the model's kernel. White wind
/// uses per-sample standard deviation sqrt(intensity / dt) so the integrated
/// displacement over a window of length tau has variance intensity * tau.
WindPath sample_wind_path(const WindModel &model, Vec2 direction, const TimeGrid &grid,
                          std::uint64_t seed);

/// Integral of the sampled wind over [a, b].
Vec2 displacement(const WindPath &path, double a, double b);

} // namespace diffadv
