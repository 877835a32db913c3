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

#include "diffadv/kernel.hpp"
#include "diffadv/wind.hpp"

namespace diffadv {

/// Geometry, medium and wind model: everything on the channel side.
struct Scenario {
    Geometry geometry{{0.0, 0.0, 1.0}, {0.70710678118654757, 0.70710678118654757, 1.0}};
    Medium medium{};
    WindModel wind{};

    /// Unit horizontal vector along which the mean wind blows.
    Vec2 wind_direction() const { return geometry.horizontal_direction(); }
    /// Mean horizontal wind vector [m/s].
    Vec2 mean_wind() const { return wind_direction() * wind.mean_speed; }
};

} // namespace diffadv
