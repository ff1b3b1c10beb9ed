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

#include "risim/arrays.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

int ArrayGeometry::count_pol(Pol p) const {
    int n = 0;
    for (const auto& e : elements)
        if (e.pol == p)
            ++n;
    return n;
}

void ArrayGeometry::validate() const {
    if (elements.empty())
        throw std::invalid_argument("ArrayGeometry: at least one element required");
    for (const auto& e : elements)
        if (!e.position.allFinite())
            throw std::invalid_argument("ArrayGeometry: element positions must be finite");
    if (pattern_exponent < 0.0)
        throw std::invalid_argument("ArrayGeometry: pattern exponent must be non-negative");
}

ArrayGeometry ArrayGeometry::planar(int rows, int cols, double pitch, bool dual_pol, double pattern_exponent) {
    if (rows < 1 || cols < 1 || !(pitch > 0.0))
        throw std::invalid_argument("ArrayGeometry::planar: invalid grid");
    ArrayGeometry a;
    a.pattern_exponent = pattern_exponent;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Vec3 p{0.0, (c - 0.5 * (cols - 1)) * pitch, (r - 0.5 * (rows - 1)) * pitch};
            if (dual_pol)
                a.elements.push_back({p, Vec3::UnitX(), Pol::H});
            a.elements.push_back({p, Vec3::UnitX(), Pol::V});
        }
    }
    return a;
}

ArrayGeometry ArrayGeometry::octagonal(int faces, int rows, int cols, double pitch, bool dual_pol,
                                       double pattern_exponent) {
    if (faces < 3 || rows < 1 || cols < 1 || !(pitch > 0.0))
        throw std::invalid_argument("ArrayGeometry::octagonal: invalid layout");
    ArrayGeometry a;
    a.pattern_exponent = pattern_exponent;
    // apothem so adjacent faces meet edge to edge
    double apothem = 0.5 * cols * pitch / std::tan(kPi / faces);
    for (int k = 0; k < faces; ++k) {
        double az = kTwoPi * k / faces;
        Vec3 n{std::cos(az), std::sin(az), 0.0};
        Vec3 t{-std::sin(az), std::cos(az), 0.0};
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                Vec3 p = apothem * n + (c - 0.5 * (cols - 1)) * pitch * t +
                         Vec3{0.0, 0.0, (r - 0.5 * (rows - 1)) * pitch};
                if (dual_pol)
                    a.elements.push_back({p, n, Pol::H});
                a.elements.push_back({p, n, Pol::V});
            }
        }
    }
    return a;
}

ArrayGeometry ArrayGeometry::single(Pol p) {
    ArrayGeometry a;
    a.pattern_exponent = 0.0;
    a.elements.push_back({Vec3::Zero(), Vec3::UnitX(), p});
    return a;
}

Eigen::Matrix3d rotation_about_z(double angle_rad) {
    Eigen::Matrix3d r;
    double c = std::cos(angle_rad), s = std::sin(angle_rad);
    r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
    return r;
}

std::complex<double> element_response(const ArrayGeometry& array, const Direction& d, double f_hz, Pol pol, int m) {
    if (m < 0 || m >= array.size())
        throw std::out_of_range("element_response: invalid element index");
    const ArrayElement& el = array.elements[static_cast<size_t>(m)];
    if (el.pol != pol)
        return {0.0, 0.0};
    Vec3 u_local = array.rotation.transpose() * d.unit();
    double phase = kTwoPi * f_hz * u_local.dot(el.position) / kSpeedOfLight;
    double g = 1.0;
    if (array.pattern_exponent > 0.0) {
        double ca = u_local.dot(el.boresight);
        g = (ca > 0.0) ? std::pow(ca, array.pattern_exponent) : 0.0;
    }
    return std::polar(g, phase);
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& array, const Direction& d, double f_hz, Pol pol) {
    Eigen::VectorXcd b(array.size());
    Vec3 u_local = array.rotation.transpose() * d.unit();
    double k = kTwoPi * f_hz / kSpeedOfLight;
    for (int m = 0; m < array.size(); ++m) {
        const ArrayElement& el = array.elements[static_cast<size_t>(m)];
        if (el.pol != pol) {
            b(m) = {0.0, 0.0};
            continue;
        }
        double g = 1.0;
        if (array.pattern_exponent > 0.0) {
            double ca = u_local.dot(el.boresight);
            g = (ca > 0.0) ? std::pow(ca, array.pattern_exponent) : 0.0;
        }
        b(m) = std::polar(g, k * u_local.dot(el.position));
    }
    return b;
}

void SounderTiming::validate() const {
    if (!(switching_time_s > 0.0))
        throw std::invalid_argument("SounderTiming: switching time must be positive");
    if (n_tx < 1 || n_rx < 1)
        throw std::invalid_argument("SounderTiming: array sizes must be positive");
    if (snapshot_time_s < switching_time_s * n_tx * n_rx)
        throw std::invalid_argument("SounderTiming: snapshot time shorter than one full channel sweep");
}

double sample_time(const SounderTiming& timing, int snapshot, int m_t, int m_r) {
    if (snapshot < 0)
        throw std::out_of_range("sample_time: snapshot index out of range");
    if (m_t < 0 || m_t >= timing.n_tx || m_r < 0 || m_r >= timing.n_rx)
        throw std::out_of_range("sample_time: antenna index out of range");
    long rank = (timing.order == SwitchOrder::rx_fastest)
                    ? static_cast<long>(m_t) * timing.n_rx + m_r
                    : static_cast<long>(m_r) * timing.n_tx + m_t;
    return snapshot * timing.snapshot_time_s + rank * timing.switching_time_s;
}

} // namespace risim
