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

#include "risim/ris.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "risim/rng.hpp"

namespace risim {

namespace {

void require_illuminated(const RisPanel& panel, const Vec3& p, const char* who) {
    if ((p - panel.center).dot(panel.normal) <= 1e-12)
        throw std::invalid_argument(std::string(who) + ": point is behind the panel");
}

double leg_pattern(const RisPanel& panel, const Vec3& from_element_to_point, double dist) {
    double ca = from_element_to_point.dot(panel.normal) / dist;
    if (ca <= 0.0)
        return 0.0;
    return (panel.pattern_exponent > 0.0) ? std::pow(ca, panel.pattern_exponent) : 1.0;
}

} // namespace

void RisPanel::validate() const {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("RisPanel: grid must be at least 1x1");
    if (!(pitch > 0.0))
        throw std::invalid_argument("RisPanel: pitch must be positive");
    if (!(element_amplitude > 0.0) || element_amplitude > 1.0)
        throw std::invalid_argument("RisPanel: element amplitude must lie in (0, 1]");
    if (std::abs(normal.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("RisPanel: normal must have unit length");
    if (std::abs(wrap_pm_pi(phase_states[1] - phase_states[0])) < 1e-9)
        throw std::invalid_argument("RisPanel: the two phase states must differ");
}

Vec3 RisPanel::element_position(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::out_of_range("RisPanel: element index out of range");
    RectSurface rect;
    rect.center = center;
    rect.normal = normal;
    rect.orientation = orientation;
    Vec3 u, v;
    rect.axes(u, v);
    return center + (c - 0.5 * (cols - 1)) * pitch * u + (r - 0.5 * (rows - 1)) * pitch * v;
}

RectSurface RisPanel::bounding_rect() const {
    RectSurface rect;
    rect.center = center;
    rect.normal = normal;
    rect.orientation = orientation;
    rect.width = cols * pitch;
    rect.height = rows * pitch;
    rect.material = Material::ris;
    return rect;
}

RisConfig RisConfig::zeros(const RisPanel& panel) {
    RisConfig c;
    c.bits.setZero(panel.rows, panel.cols);
    return c;
}

std::string RisConfig::to_ascii() const {
    std::string out;
    out.reserve(static_cast<size_t>(bits.rows()) * (static_cast<size_t>(bits.cols()) + 1));
    for (Eigen::Index r = 0; r < bits.rows(); ++r) {
        for (Eigen::Index c = 0; c < bits.cols(); ++c)
            out.push_back(bits(r, c) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

RisConfig RisConfig::from_ascii(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            lines.push_back(line);
    if (lines.empty())
        throw std::invalid_argument("RisConfig: empty bit matrix");
    RisConfig c;
    c.bits.resize(static_cast<Eigen::Index>(lines.size()), static_cast<Eigen::Index>(lines[0].size()));
    for (size_t r = 0; r < lines.size(); ++r) {
        if (lines[r].size() != lines[0].size())
            throw std::invalid_argument("RisConfig: ragged bit matrix");
        for (size_t col = 0; col < lines[r].size(); ++col) {
            char ch = lines[r][col];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("RisConfig: bit characters must be 0 or 1");
            c.bits(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = (ch == '1') ? 1 : 0;
        }
    }
    return c;
}

void VisionSensor::validate() const {
    if (angular_noise_std < 0.0 || range_noise_std < 0.0)
        throw std::invalid_argument("VisionSensor: noise deviations must be non-negative");
    if (range_mode == RangeMode::fixed_range && !(fixed_range > 0.0))
        throw std::invalid_argument("VisionSensor: fixed range must be positive");
}

Vec3 vision_estimate(const VisionSensor& sensor, const Vec3& true_pos, const RisPanel& panel, std::uint64_t seed) {
    sensor.validate();
    Direction bearing = direction_between(panel.center, true_pos);
    Rng rng(seed);
    // fixed draw order: azimuth, elevation, range
    double az = bearing.azimuth + sensor.angular_noise_std * rng.gaussian();
    double el = bearing.elevation + sensor.angular_noise_std * rng.gaussian();
    el = std::clamp(el, -0.5 * kPi, 0.5 * kPi);
    double range = (sensor.range_mode == RangeMode::true_range) ? (true_pos - panel.center).norm()
                                                                : sensor.fixed_range;
    range += sensor.range_noise_std * rng.gaussian();
    range = std::max(range, 1e-6);
    Direction d{wrap_two_pi(az), el};
    return panel.center + range * d.unit();
}

Eigen::ArrayXXd ideal_phase_map(const RisPanel& panel, const Vec3& tx, const Vec3& rx, double f_hz) {
    panel.validate();
    require_illuminated(panel, tx, "ideal_phase_map");
    require_illuminated(panel, rx, "ideal_phase_map");
    double k = kTwoPi * f_hz / kSpeedOfLight;
    Eigen::ArrayXXd phases(panel.rows, panel.cols);
    for (int r = 0; r < panel.rows; ++r) {
        for (int c = 0; c < panel.cols; ++c) {
            Vec3 p = panel.element_position(r, c);
            double path = (tx - p).norm() + (p - rx).norm();
            phases(r, c) = wrap_two_pi(k * path);
        }
    }
    return phases;
}

RisConfig quantize_1bit(const Eigen::ArrayXXd& ideal, const std::array<double, 2>& states) {
    RisConfig cfg;
    cfg.bits.resize(ideal.rows(), ideal.cols());
    for (Eigen::Index r = 0; r < ideal.rows(); ++r) {
        for (Eigen::Index c = 0; c < ideal.cols(); ++c) {
            double r0 = std::abs(wrap_pm_pi(-ideal(r, c) - states[0]));
            double r1 = std::abs(wrap_pm_pi(-ideal(r, c) - states[1]));
            cfg.bits(r, c) = (r1 < r0) ? 1 : 0;
        }
    }
    return cfg;
}

namespace {

template <typename StatePhase>
std::complex<double> panel_sum(const RisPanel& panel, const Vec3& tx, const Vec3& rx, double f_hz,
                               StatePhase&& state_phase) {
    panel.validate();
    require_illuminated(panel, tx, "ris_path_gain");
    require_illuminated(panel, rx, "ris_path_gain");
    double k = kTwoPi * f_hz / kSpeedOfLight;
    double lambda = kSpeedOfLight / f_hz;
    std::complex<double> acc{0.0, 0.0};
    for (int r = 0; r < panel.rows; ++r) {
        for (int c = 0; c < panel.cols; ++c) {
            Vec3 p = panel.element_position(r, c);
            Vec3 to_tx = tx - p;
            Vec3 to_rx = rx - p;
            double d1 = to_tx.norm();
            double d2 = to_rx.norm();
            double g = leg_pattern(panel, to_tx, d1) * leg_pattern(panel, to_rx, d2);
            double amp = panel.element_amplitude * g / (d1 * d2);
            acc += std::polar(amp, state_phase(r, c) - k * (d1 + d2));
        }
    }
    return acc * (panel.pitch * panel.pitch / lambda);
}

} // namespace

std::complex<double> ris_path_gain(const RisPanel& panel, const RisConfig& config, const Vec3& tx, const Vec3& rx,
                                   double f_hz) {
    if (config.bits.rows() != panel.rows || config.bits.cols() != panel.cols)
        throw std::invalid_argument("ris_path_gain: configuration does not match the panel grid");
    return panel_sum(panel, tx, rx, f_hz,
                     [&](int r, int c) { return panel.phase_states[config.bits(r, c) ? 1 : 0]; });
}

std::complex<double> ris_path_gain_continuous(const RisPanel& panel, const Eigen::ArrayXXd& phases, const Vec3& tx,
                                              const Vec3& rx, double f_hz) {
    if (phases.rows() != panel.rows || phases.cols() != panel.cols)
        throw std::invalid_argument("ris_path_gain_continuous: phase map does not match the panel grid");
    return panel_sum(panel, tx, rx, f_hz, [&](int r, int c) { return phases(r, c); });
}

Mpc ris_to_mpc(const RisPanel& panel, const RisConfig& config, const Vec3& tx, const Vec3& rx, double f_center,
               const Vec3& rx_velocity) {
    Mpc m;
    double d1 = (tx - panel.center).norm();
    double d2 = (panel.center - rx).norm();
    m.delay_s = (d1 + d2) / kSpeedOfLight;
    m.departure = direction_between(tx, panel.center);
    m.arrival = direction_between(rx, panel.center);
    double lambda = kSpeedOfLight / f_center;
    Vec3 travel = (rx - panel.center) / d2; // propagation direction of the arriving leg
    m.doppler_hz = -travel.dot(rx_velocity) / lambda;
    m.gamma(1, 1) = ris_path_gain(panel, config, tx, rx, f_center);
    m.kind = PathKind::ris;
    return m;
}

} // namespace risim
