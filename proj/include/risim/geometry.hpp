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

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace risim {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

// wrap angle to [0, 2*pi)
double wrap_two_pi(double a);
// wrap angle to (-pi, pi]
double wrap_pm_pi(double a);

// Scene frame: right-handed, z up. Azimuth is measured counter-clockwise
// from the +x axis in the horizontal plane; elevation from the horizontal
// plane toward +z. At the zenith/nadir singularity the azimuth is
// canonicalized to 0.
struct Direction {
    double azimuth = 0.0;   // rad, [0, 2*pi)
    double elevation = 0.0; // rad, [-pi/2, pi/2]

    static Direction from_unit(const Vec3& u);
    Vec3 unit() const;
};

enum class Material { absorber, metal, wood, glass, ris, scatterer };

// Finite rectangle in 3-D. `width` extends along the first in-plane axis,
// `height` along the second; `orientation` rotates the in-plane axes about
// the normal. The in-plane frame is deterministic (see axes()).
struct RectSurface {
    Vec3 center = Vec3::Zero();
    Vec3 normal = Vec3::UnitX();
    double width = 1.0;
    double height = 1.0;
    double orientation = 0.0; // rad
    Material material = Material::metal;

    // Deterministic in-plane orthonormal axes (u, v) with u x v = normal.
    void axes(Vec3& u, Vec3& v) const;
    void validate() const;
};

// Straight RX run with optional repeated (static) endpoint samples used to
// pad the position list at both ends.
struct Trajectory {
    Vec3 start = Vec3::Zero();
    Vec3 end = Vec3::Zero();
    int n_positions = 0;
    int n_static_head = 0;
    int n_static_tail = 0;
    double speed = 0.0; // m/s

    int n_moving() const { return n_positions - n_static_head - n_static_tail; }
};

// Azimuth/elevation of the unit vector (to - from). Throws on coincident
// points.
Direction direction_between(const Vec3& from, const Vec3& to);

// Intersection of the ray origin + t*dir (t > 0) with the bounded rectangle.
// `dir` must be unit length. Rectangle bounds are inclusive.
std::optional<Vec3> ray_hits_rect(const Vec3& origin, const Vec3& dir, const RectSurface& rect);

// True if the open segment (a, b) crosses the rectangle (endpoints excluded
// by a relative margin).
bool segment_hits_rect(const Vec3& a, const Vec3& b, const RectSurface& rect);

// Position list: n_static_head copies of start, the moving positions spaced
// uniformly from start to end (inclusive), n_static_tail copies of end.
std::vector<Vec3> trajectory_positions(const Trajectory& t);

// RX velocity at a position index: zero inside the static pads, otherwise
// speed along the segment direction.
Vec3 trajectory_velocity(const Trajectory& t, int index);

// Mirror image of `source` across the rectangle's plane. Throws if source
// lies on the plane.
Vec3 specular_image(const Vec3& source, const RectSurface& rect);

} // namespace risim
