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

#include "risim/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace risim {

double wrap_two_pi(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi) // fmod can land exactly on 2*pi after the add
        w = 0.0;
    return w;
}

double wrap_pm_pi(double a) {
    double w = wrap_two_pi(a);
    if (w > kPi)
        w -= kTwoPi;
    return w;
}

Direction Direction::from_unit(const Vec3& u) {
    Direction d;
    double h = std::hypot(u.x(), u.y());
    d.elevation = std::atan2(u.z(), h);
    d.azimuth = (h < 1e-12) ? 0.0 : wrap_two_pi(std::atan2(u.y(), u.x()));
    return d;
}

Vec3 Direction::unit() const {
    double ce = std::cos(elevation);
    return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

void RectSurface::axes(Vec3& u, Vec3& v) const {
    // reference axis: z unless the normal is near-vertical, then x
    Vec3 helper = (std::abs(normal.z()) < 0.9) ? Vec3::UnitZ() : Vec3::UnitX();
    Vec3 t1 = helper.cross(normal).normalized();
    Vec3 t2 = normal.cross(t1);
    double c = std::cos(orientation), s = std::sin(orientation);
    u = c * t1 + s * t2;
    v = normal.cross(u);
}

void RectSurface::validate() const {
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("RectSurface: width and height must be positive");
    if (std::abs(normal.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("RectSurface: normal must have unit length");
    if (!center.allFinite())
        throw std::invalid_argument("RectSurface: center must be finite");
}

Direction direction_between(const Vec3& from, const Vec3& to) {
    Vec3 d = to - from;
    double r = d.norm();
    if (r < 1e-15)
        throw std::invalid_argument("direction_between: coincident points (degenerate geometry)");
    return Direction::from_unit(d / r);
}

std::optional<Vec3> ray_hits_rect(const Vec3& origin, const Vec3& dir, const RectSurface& rect) {
    double denom = dir.dot(rect.normal);
    if (std::abs(denom) < 1e-12)
        return std::nullopt; // parallel to the plane
    double t = (rect.center - origin).dot(rect.normal) / denom;
    if (t <= 1e-12)
        return std::nullopt; // behind the origin or at it
    Vec3 p = origin + t * dir;
    Vec3 u, v;
    rect.axes(u, v);
    Vec3 rel = p - rect.center;
    if (std::abs(rel.dot(u)) > 0.5 * rect.width || std::abs(rel.dot(v)) > 0.5 * rect.height)
        return std::nullopt;
    return p;
}

bool segment_hits_rect(const Vec3& a, const Vec3& b, const RectSurface& rect) {
    Vec3 d = b - a;
    double len = d.norm();
    if (len < 1e-15)
        return false;
    auto hit = ray_hits_rect(a, d / len, rect);
    if (!hit)
        return false;
    double t = (*hit - a).norm();
    // endpoints excluded so a surface never occludes a path that starts or
    // terminates on it
    return t > 1e-9 * std::max(1.0, len) && t < len * (1.0 - 1e-9);
}

std::vector<Vec3> trajectory_positions(const Trajectory& t) {
    if (t.n_positions < 1)
        throw std::invalid_argument("Trajectory: n_positions must be at least 1");
    if (t.n_static_head < 0 || t.n_static_tail < 0)
        throw std::invalid_argument("Trajectory: static pad counts must be non-negative");
    int moving = t.n_moving();
    if (moving < 2)
        throw std::invalid_argument("Trajectory: static pads leave fewer than two moving positions");
    double len = (t.end - t.start).norm();
    if (len < 1e-15)
        throw std::invalid_argument("Trajectory: zero-length segment with moving positions requested");

    std::vector<Vec3> out;
    out.reserve(static_cast<size_t>(t.n_positions));
    for (int i = 0; i < t.n_static_head; ++i)
        out.push_back(t.start);
    for (int i = 0; i < moving; ++i) {
        double a = static_cast<double>(i) / static_cast<double>(moving - 1);
        out.push_back(t.start + a * (t.end - t.start));
    }
    for (int i = 0; i < t.n_static_tail; ++i)
        out.push_back(t.end);
    return out;
}

Vec3 trajectory_velocity(const Trajectory& t, int index) {
    if (index < 0 || index >= t.n_positions)
        throw std::out_of_range("trajectory_velocity: position index out of range");
    if (index < t.n_static_head || index >= t.n_positions - t.n_static_tail)
        return Vec3::Zero();
    Vec3 d = t.end - t.start;
    double len = d.norm();
    if (len < 1e-15)
        return Vec3::Zero();
    return t.speed * d / len;
}

Vec3 specular_image(const Vec3& source, const RectSurface& rect) {
    double dist = (source - rect.center).dot(rect.normal);
    if (std::abs(dist) < 1e-12)
        throw std::invalid_argument("specular_image: source lies on the rectangle plane");
    return source - 2.0 * dist * rect.normal;
}

} // namespace risim
