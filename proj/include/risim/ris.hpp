// SPDX-License-Identifier: Apache-2.0
//
// risim - RIS-assisted mmWave channel simulation and analysis
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

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "risim/geometry.hpp"
#include "risim/mpc.hpp"

namespace risim {

// 1-bit reflective surface: a rows x cols grid of switchable elements on a
// plane. Each element selects one of exactly two phase states. The element
// scattering pattern is cos^q of the angle off the panel normal, applied to
// the incident and the outgoing leg separately.
struct RisPanel {
    int rows = 16;
    int cols = 16;
    double pitch = 0.0053534367589285714; // m, half wavelength at 28 GHz
    Vec3 center = Vec3::Zero();
    Vec3 normal = Vec3::UnitX();
    double orientation = 0.0; // in-plane rotation, rad
    double element_amplitude = 1.0;
    std::array<double, 2> phase_states{0.0, kPi};
    double pattern_exponent = 0.5;

    void validate() const;
    int size() const { return rows * cols; }
    Vec3 element_position(int r, int c) const;
    // panel outline as a scene rectangle (occluder in ray tests)
    RectSurface bounding_rect() const;
};

// Per-element state selection, row-major bit matrix. Bit k selects
// phase_states[k].
struct RisConfig {
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> bits;

    static RisConfig zeros(const RisPanel& panel);
    // one text line per row, '0'/'1' per element (the wire payload)
    std::string to_ascii() const;
    static RisConfig from_ascii(const std::string& text);
};

enum class RangeMode : unsigned char { true_range, fixed_range };

// Camera-style position sensor mounted at the panel: accurate bearing with
// optional Gaussian angular noise, range either measured or pinned to a
// fixed value.
struct VisionSensor {
    double angular_noise_std = 0.0; // rad
    RangeMode range_mode = RangeMode::true_range;
    double fixed_range = 1.0;      // m, used in fixed_range mode
    double range_noise_std = 0.0;  // m

    void validate() const;
};

// Position estimate reconstructed from the sensed bearing and range.
// Deterministic for a given seed.
Vec3 vision_estimate(const VisionSensor& sensor, const Vec3& true_pos, const RisPanel& panel, std::uint64_t seed);

// Per-element phase of the propagation tx -> element -> rx, mod 2*pi. The
// continuous co-phasing configuration is the negative of this map.
Eigen::ArrayXXd ideal_phase_map(const RisPanel& panel, const Vec3& tx, const Vec3& rx, double f_hz);

// Round each ideal phase to the available state with the smallest wrapped
// residual; ties go to the first state.
RisConfig quantize_1bit(const Eigen::ArrayXXd& ideal, const std::array<double, 2>& states);

// Scattered field at rx for a configured panel: per-element spherical
// spreading 1/(d1*d2), cos^q patterns on both legs, programmed state phase,
// scaled by pitch^2/lambda so a fully co-phased panel at specular incidence
// approaches the image-method amplitude of a metal plate.
std::complex<double> ris_path_gain(const RisPanel& panel, const RisConfig& config, const Vec3& tx, const Vec3& rx,
                                   double f_hz);

// Same sum with arbitrary per-element phases (continuous configuration).
std::complex<double> ris_path_gain_continuous(const RisPanel& panel, const Eigen::ArrayXXd& phases, const Vec3& tx,
                                              const Vec3& rx, double f_hz);

// Package the configured panel as a single path: delay over the panel
// center, geometric departure/arrival directions, VV-only gain.
Mpc ris_to_mpc(const RisPanel& panel, const RisConfig& config, const Vec3& tx, const Vec3& rx, double f_center,
               const Vec3& rx_velocity = Vec3::Zero());

} // namespace risim
