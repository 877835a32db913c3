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

#include "diffadv/linksim.hpp"
#include "diffadv/pulsedesign.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace diffadv {

struct PdpGrid {
    double tau_step = 0.01;
    double tau_max = 30.0;

    bool operator==(const PdpGrid &) const = default;
};

/// R_h is tabulated on tau1, tau2 in {tau_step, 2 tau_step, ..., tau_max}
/// at t1 = t and t2 = t + dt for each listed dt.
struct AutocorrGrid {
    double tau_step = 0.1;
    double tau_max = 6.0;
    double t = 120.0;
    std::vector<double> dt{0.0};

    bool operator==(const AutocorrGrid &) const = default;
};

struct BerSettings {
    NoiseSpec::Kind convention = NoiseSpec::Kind::EbN0;
    std::vector<double> points{0.0, 5.0, 10.0, 15.0, 20.0};
    std::size_t trials = 10;

    bool operator==(const BerSettings &) const = default;
};

/// Symbol periods classified by `stats`.
struct StatsSettings {
    std::vector<double> t_sym{1.0, 2.0};

    bool operator==(const StatsSettings &) const = default;
};

struct LeakageSettings {
    std::vector<std::size_t> n_dim{1, 2, 3, 4};
    std::vector<double> t_sym{2.0, 4.0, 8.0, 16.0};
    ChannelMode mode = ChannelMode::MeanResponse;
    double rate = 100.0;

    bool operator==(const LeakageSettings &) const = default;
};

/// Everything a run needs. The scenario, simulation, link and seed live in
/// `link`; the analysis grids sit alongside.
struct ScenarioConfig {
    LinkConfig link = default_link();
    PdpGrid pdp;
    AutocorrGrid autocorr;
    BerSettings ber;
    StatsSettings stats;
    LeakageSettings leakage;

    static LinkConfig default_link();
};

bool operator==(const ScenarioConfig &a, const ScenarioConfig &b);

/// Parses YAML text. Missing keys take their defaults, unknown keys are
/// rejected. Syntax errors raise ValidationError with the line number;
/// invalid values name the dotted field path.
ScenarioConfig parse_scenario(const std::string &text);

/// Reads and parses a file.
ScenarioConfig load_scenario(const std::string &path);

/// Canonical YAML: every field, fixed key order, 17 significant digits.
std::string serialize(const ScenarioConfig &config);

/// FNV-1a 64 of the canonical serialisation, as 16 hex digits.
std::string config_hash(const ScenarioConfig &config);

std::string to_string(NoiseSpec::Kind kind);
NoiseSpec::Kind noise_kind_from_string(const std::string &name);

} // namespace diffadv
