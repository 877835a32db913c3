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

#include "diffadv/scenario.hpp"

#include <optional>
#include <vector>

namespace diffadv {

/// h(tau, t) = beta(tau) * exp(-alpha(tau) * (X1^2 + X2^2)).
struct EnvelopeTerms {
    double beta = 0.0;  ///< [1/m^3]
    double alpha = 0.0; ///< 1 / (4 D tau) [1/m^2]
};

EnvelopeTerms envelope(double tau, const Geometry &geo, const Medium &med);

/// Minimal symmetric 2x2 matrix [[a, b], [b, c]].
struct Sym2 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

/// Q = X^T A X with X ~ N(mean, cov), evaluated as E[exp(t Q)].
struct QuadraticFormSpec {
    Sym2 A;
    Vec2 mean;
    Sym2 cov;
    double t = 0.0;
};

enum class MgfBranch { FullRank, RankOne, Degenerate };

struct MgfResult {
    double value = 0.0;
    MgfBranch branch = MgfBranch::FullRank;
};

/// Relative eigenvalue gap below which the covariance counts as singular.
inline constexpr double kSingularThreshold = 1e-10;

/// Full-rank moment generating function through the symmetric square root
/// of the covariance.
double mgf_full_rank(const QuadraticFormSpec &spec);
/// Rank-one moment generating function with cov = B B^T, B the leading
/// eigenvector scaled by the square root of its eigenvalue.
double mgf_rank_one(const QuadraticFormSpec &spec);
/// Routes to the full-rank, rank-one or zero-covariance form.
MgfResult mgf_quadratic_form(const QuadraticFormSpec &spec);

/// Mean of h(tau, t) over the wind distribution.
double mean_response(double tau, double t, const Scenario &scenario, const QuadratureOptions &opts = {});

/// Per-axis quadratic-form description used by autocorrelation; axis 0 or 1.
QuadraticFormSpec autocorrelation_form(int axis, double tau1, double tau2, double t1, double t2,
                                       const Scenario &scenario, const QuadratureOptions &opts = {});

/// R_h(tau1, tau2; t1, t2) = E[h(tau1, t1) h(tau2, t2)].
double autocorrelation(double tau1, double tau2, double t1, double t2, const Scenario &scenario,
                       const QuadratureOptions &opts = {});

inline constexpr double kWssReferenceTime = 120.0;

/// R_h(tau1, tau2; dt) for a WSS wind, evaluated at (t1, t2) = (t0, t0 + dt).
double wss_autocorrelation(double tau1, double tau2, double dt, const Scenario &scenario,
                           double t0 = kWssReferenceTime, const QuadratureOptions &opts = {});

struct PdpCurve {
    std::vector<double> tau;
    std::vector<double> value;
    double peclet = 0.0;
    std::optional<double> dispersion_time;
};

/// Closed-form power delay profile with effective diffusion D + sigma_v^2.
/// Requires a white wind kernel.
PdpCurve pdp(const std::vector<double> &tau, const Scenario &scenario);

/// PDP through the general autocorrelation path (dt = 0, tau1 = tau2).
std::vector<double> pdp_via_autocorrelation(const std::vector<double> &tau, const Scenario &scenario);

/// Largest |closed - general| / max(|general|) over the grid.
double pdp_discrepancy(const std::vector<double> &tau, const Scenario &scenario);

struct Spectrum {
    std::vector<double> frequency; ///< [Hz], 0 .. Nyquist
    std::vector<double> magnitude; ///< |sum_n R(tau_n) exp(-2 pi i f tau_n)| * dtau
};

/// Discrete Fourier transform magnitude of a uniformly sampled PDP.
Spectrum pdp_spectrum(const PdpCurve &curve);

/// First frequency at which the magnitude falls below DC / sqrt(2).
double bandwidth_3db(const Spectrum &spectrum);

/// Horizontal distance * mean speed / (D + sigma_v^2).
double peclet(const Geometry &geo, const Medium &med, const WindModel &wind);

/// sqrt(L^2 (D + sigma_v^2) / (2 sqrt(2) mu^3)) [s]; requires mu > 0.
double dispersion_time(const Geometry &geo, const Medium &med, const WindModel &wind);

enum class ChannelClass { NonDispersive, Dispersive };

std::string to_string(ChannelClass c);

ChannelClass classify(double t_sym, double t_d);

} // namespace diffadv
