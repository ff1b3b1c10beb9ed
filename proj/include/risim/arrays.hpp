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

#include <complex>
#include <vector>

#include "risim/geometry.hpp"

namespace risim {

enum class Pol : unsigned char { H = 0, V = 1 };

struct ArrayElement {
    Vec3 position = Vec3::Zero();   // array-local frame, m
    Vec3 boresight = Vec3::UnitX(); // element pattern axis, local frame
    Pol pol = Pol::V;
};

// Analytic antenna array. Element positions and boresights live in the
// array-local frame; `rotation` maps local to scene coordinates and `origin`
// places the array in the scene. The element pattern is cos^q of the angle
// off the element boresight (q = 0 means isotropic, including the back
// hemisphere).
struct ArrayGeometry {
    std::vector<ArrayElement> elements;
    double pattern_exponent = 1.0;
    Vec3 origin = Vec3::Zero();
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();

    int size() const { return static_cast<int>(elements.size()); }
    int count_pol(Pol p) const;
    void validate() const;

    // lambda/2-spaced rectangular panel in the local y-z plane, boresight +x.
    // With dual_pol each site carries an H and a V element (H first).
    static ArrayGeometry planar(int rows, int cols, double pitch, bool dual_pol, double pattern_exponent = 1.0);

    // Octagonal prism approximating a cylindrical array: `faces` flat panels,
    // each rows x cols with the given pitch, element boresights along the
    // face normals.
    static ArrayGeometry octagonal(int faces, int rows, int cols, double pitch, bool dual_pol,
                                   double pattern_exponent = 1.0);

    // single isotropic element at the origin
    static ArrayGeometry single(Pol p);
};

// rotation about the scene z axis (used to aim planar arrays)
Eigen::Matrix3d rotation_about_z(double angle_rad);

// Complex response of element m to a plane wave from scene direction `d` at
// frequency `f_hz`, for the requested polarization. Ideal cross-polar
// isolation: the factor is 1 for a matching element tag and 0 otherwise.
std::complex<double> element_response(const ArrayGeometry& array, const Direction& d, double f_hz, Pol pol, int m);

// Full steering vector (one entry per element; cross-polarized entries are 0)
Eigen::VectorXcd steering_vector(const ArrayGeometry& array, const Direction& d, double f_hz, Pol pol);

enum class SwitchOrder { rx_fastest, tx_fastest };

// Switched-sounder timing: every (m_t, m_r) channel of a snapshot is visited
// sequentially, `switching_time_s` apart; snapshots start `snapshot_time_s`
// apart.
struct SounderTiming {
    double switching_time_s = 18.8e-6;
    double snapshot_time_s = 0.62;
    int n_tx = 1;
    int n_rx = 1;
    SwitchOrder order = SwitchOrder::rx_fastest;

    void validate() const;
};

// Absolute sample time of channel (m_t, m_r) in snapshot s.
double sample_time(const SounderTiming& timing, int snapshot, int m_t, int m_r);

} // namespace risim
