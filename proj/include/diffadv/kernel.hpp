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
#include "diffadv/wind.hpp"

namespace diffadv {

/// Point source and receiver above the absorbing plane x3 = 0.
class Geometry {
  public:
    Geometry(Vec3 source, Vec3 receiver);

    const Vec3 &source() const { return source_; }
    const Vec3 &receiver() const { return receiver_; }

    /// Receiver minus source, horizontal part [m].
    Vec2 horizontal_offset() const { return receiver_.horizontal() - source_.horizontal(); }
    double horizontal_distance() const { return horizontal_offset().norm(); }
    /// Unit vector from source to receiver in the horizontal plane; (1, 0)
    /// when the two are vertically aligned.
    Vec2 horizontal_direction() const;

  private:
    Vec3 source_;
    Vec3 receiver_;
};

struct Medium {
    double D = 6.7698e-6; ///< diffusion coefficient [m^2/s]

    void validate() const;
};

/// Free-space heat kernel (4 pi D t)^(-3/2) exp(-|y|^2 / (4 D t)); zero for t <= 0.
double heat_kernel(Vec3 y, double t, double D);

/// Half-space kernel with the absorbing plane at x3 = 0: the direct term minus
/// the image source mirrored through the plane.
double image_kernel(Vec2 y_par, double y3, Vec2 z_par, double z3, double t, double D);

/// h(tau, t) given the integrated wind over [t - tau, t]. Zero for tau <= 0.
double impulse_response_for_displacement(const Geometry &geo, const Medium &med, Vec2 wind_displacement,
                                         double tau);

/// Time-varying impulse response: concentration at the receiver at time t per
/// unit mass released at t - tau.
double impulse_response(const Geometry &geo, const Medium &med, const WindPath &path, double tau, double t);

/// Receiver concentration for a source rate waveform q sampled on the wind
/// path's grid (same t0 and step). Left-endpoint rectangle rule over
/// s in [t - t_mem, t].
Waveform propagate(const Waveform &q, const Geometry &geo, const Medium &med, const WindPath &path, double t_mem);

/// Same as propagate, evaluated only at every `factor`-th grid point
/// (phase 0). Each returned sample equals the corresponding sample of
/// propagate exactly.
Waveform propagate_decimated(const Waveform &q, const Geometry &geo, const Medium &med, const WindPath &path,
                             double t_mem, std::size_t factor);

} // namespace diffadv
