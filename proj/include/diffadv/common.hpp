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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffadv {

inline constexpr double kPi = std::numbers::pi;

// Values of the channel kernels below this are flushed to zero.
inline constexpr const char *kVersion = "0.1.0";

inline constexpr double kUnderflowFloor = 1e-300;

inline const double kLogUnderflowFloor = std::log(kUnderflowFloor);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 &operator+=(const Vec2 &o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr bool operator==(const Vec2 &) const = default;

    constexpr double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr bool operator==(const Vec3 &) const = default;

    constexpr Vec2 horizontal() const { return {x, y}; }
    constexpr double norm2() const { return x * x + y * y + z * z; }
};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter or configuration value violates a documented invariant.
/// `field()` carries the dotted path of the offending value when known.
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string &message, std::string field = {})
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// A query falls outside the time span covered by a sampled object.
class RangeError : public Error {
  public:
    using Error::Error;
};

/// Receiver found nothing to lock onto.
class NoSignalError : public Error {
  public:
    using Error::Error;
};

/// Uniformly sampled real waveform.
struct Waveform {
    double rate = 0.0; ///< samples per second
    std::vector<double> samples;

    double dt() const { return 1.0 / rate; }
    std::size_t size() const { return samples.size(); }
};

/// Integer ratio `hi / lo` between two sample rates; throws if not an integer.
std::size_t rate_ratio(double hi, double lo, const std::string &what);

/// Shortest round-trip decimal representation with 17 significant digits.
std::string format_double(double v);

} // namespace diffadv
