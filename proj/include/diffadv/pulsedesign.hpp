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

#include <cstdint>
#include <string>
#include <vector>

namespace diffadv {

enum class ChannelMode { MeanResponse, SeededRealization };

std::string to_string(ChannelMode m);
/// Accepts "mean" and "realization".
ChannelMode channel_mode_from_string(const std::string &name);

struct LeakageOptions {
    /// Base sample rate [Hz]. Raised to the smallest multiple for which every
    /// pulse segment spans an integer number of samples.
    double rate = 100.0;
    double t_mem = 30.0;
    /// Multiplies the transmitted pulse amplitude.
    double source_amplitude = 1.0;
};

struct LeakageReport {
    std::size_t N = 0;
    double T_sym = 0.0;
    double leakage = 0.0;
    ChannelMode mode = ChannelMode::MeanResponse;
    std::uint64_t seed = 0;
    double rate = 0.0;          ///< sample rate actually used
    std::size_t timing = 0;     ///< common decision offset, in samples
    std::string scenario;       ///< one-line summary
};

/// Cross matched-filter energy between channel-distorted orthogonal pulses.
/// Each pulse is sent alone; the cross filter outputs are read at the symbol
/// rate decision instants over a window of T_sym + t_mem.
LeakageReport pulse_leakage(std::size_t N, double T_sym, const Scenario &scenario, ChannelMode mode,
                            std::uint64_t seed = 0, const LeakageOptions &options = {});

/// Cartesian sweep, ordered by N then T_sym.
std::vector<LeakageReport> leakage_sweep(const std::vector<std::size_t> &N, const std::vector<double> &T_sym,
                                         const Scenario &scenario, ChannelMode mode, std::uint64_t seed = 0,
                                         const LeakageOptions &options = {});

std::string describe(const Scenario &scenario);

} // namespace diffadv
