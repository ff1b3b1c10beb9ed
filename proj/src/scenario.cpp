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

#include "risim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace risim {

ArrayGeometry ArraySpec::build(double carrier_hz) const {
    double pitch = (pitch_m > 0.0) ? pitch_m : 0.5 * kSpeedOfLight / carrier_hz;
    ArrayGeometry a;
    switch (kind) {
    case ArrayKind::planar: a = ArrayGeometry::planar(rows, cols, pitch, dual_pol, pattern_exponent); break;
    case ArrayKind::octagonal:
        a = ArrayGeometry::octagonal(faces, rows, cols, pitch, dual_pol, pattern_exponent);
        break;
    case ArrayKind::single: a = ArrayGeometry::single(Pol::V); break;
    }
    a.rotation = rotation_about_z(boresight_az_deg * kPi / 180.0);
    return a;
}

int ArraySpec::element_count() const {
    int per_site = dual_pol ? 2 : 1;
    switch (kind) {
    case ArrayKind::planar: return rows * cols * per_site;
    case ArrayKind::octagonal: return faces * rows * cols * per_site;
    case ArrayKind::single: return 1;
    }
    return 0;
}

SounderTiming Scenario::timing() const {
    SounderTiming t;
    t.switching_time_s = switching_time_s;
    t.snapshot_time_s = snapshot_time_s;
    t.n_tx = tx_array.element_count();
    t.n_rx = rx_array.element_count();
    t.order = switch_order;
    return t;
}

void Scenario::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("scenario field " + field + ": " + why);
    };
    if (!(grid.carrier_hz > 0.0))
        fail("sounder.carrier_hz", "must be positive");
    if (!(grid.bandwidth_hz > 0.0))
        fail("sounder.bandwidth_hz", "must be positive");
    if (grid.n_bins < 2)
        fail("sounder.n_freq", "at least two bins required");
    if (!(switching_time_s > 0.0))
        fail("sounder.switching_time_s", "must be positive");
    if (noise_std < 0.0)
        fail("sounder.noise_std", "must be non-negative");
    if (snapshot_time_s < switching_time_s * tx_array.element_count() * rx_array.element_count())
        fail("sounder.snapshot_time_s", "shorter than one full channel sweep");
    if (tx_array.rows < 1 || tx_array.cols < 1 || tx_array.faces < 1)
        fail("tx_array", "grid dimensions must be positive");
    if (rx_array.rows < 1 || rx_array.cols < 1 || rx_array.faces < 1)
        fail("rx_array", "grid dimensions must be positive");
    if (tx_array.pitch_m < 0.0)
        fail("tx_array.pitch_m", "must be positive (or 0 for half wavelength)");
    if (rx_array.pitch_m < 0.0)
        fail("rx_array.pitch_m", "must be positive (or 0 for half wavelength)");
    if (analysis.snr_db.empty())
        fail("analysis.snr_db", "at least one SNR point required");
    if (analysis.window < 1 || analysis.window % 2 == 0)
        fail("analysis.window", "must be odd and positive");
    if (beam_update_every < 1)
        fail("run.beam_update_every", "must be at least 1");
    try {
        scene.validate();
    } catch (const std::exception& e) {
        fail("scene", e.what());
    }
    try {
        estimator.validate();
    } catch (const std::exception& e) {
        fail("estimator", e.what());
    }
}

Scenario default_scenario() {
    Scenario s;
    s.scene = default_scene();
    s.tx_array.kind = ArrayKind::planar;
    s.tx_array.rows = 8;
    s.tx_array.cols = 8;
    s.tx_array.dual_pol = true;
    s.tx_array.boresight_az_deg = 49.4; // aimed at the middle of the RX run
    s.rx_array.kind = ArrayKind::octagonal;
    s.rx_array.faces = 8;
    s.rx_array.rows = 4;
    s.rx_array.cols = 4;
    s.rx_array.dual_pol = true;
    s.rx_array.boresight_az_deg = 0.0;
    for (int snr = -10; snr <= 30; snr += 5)
        s.analysis.snr_db.push_back(static_cast<double>(snr));
    return s;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_vec(const Vec3& v) {
    return "(" + fmt_double(v.x()) + ", " + fmt_double(v.y()) + ", " + fmt_double(v.z()) + ")";
}

std::string material_name(Material m) {
    switch (m) {
    case Material::absorber: return "absorber";
    case Material::metal: return "metal";
    case Material::wood: return "wood";
    case Material::glass: return "glass";
    case Material::ris: return "ris";
    case Material::scatterer: return "scatterer";
    }
    return "metal";
}

struct ParseCtx {
    int line = 0;
    [[noreturn]] void err(const std::string& what) const {
        throw std::runtime_error("scenario:" + std::to_string(line) + ": " + what);
    }

    double num(const std::string& v) const {
        try {
            size_t pos = 0;
            double d = std::stod(v, &pos);
            while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos])))
                ++pos;
            if (pos != v.size())
                err("trailing characters after number '" + v + "'");
            return d;
        } catch (const std::invalid_argument&) {
            err("expected a number, got '" + v + "'");
        } catch (const std::out_of_range&) {
            err("number out of range: '" + v + "'");
        }
    }

    int integer(const std::string& v) const {
        double d = num(v);
        if (d != std::floor(d))
            err("expected an integer, got '" + v + "'");
        return static_cast<int>(d);
    }

    std::uint64_t u64(const std::string& v) const {
        try {
            size_t pos = 0;
            unsigned long long x = std::stoull(v, &pos);
            if (pos != v.size())
                err("trailing characters after integer '" + v + "'");
            return static_cast<std::uint64_t>(x);
        } catch (const std::exception&) {
            err("expected an unsigned integer, got '" + v + "'");
        }
    }

    bool boolean(const std::string& v) const {
        if (v == "true")
            return true;
        if (v == "false")
            return false;
        err("expected true/false, got '" + v + "'");
    }

    Vec3 vec(const std::string& v) const {
        std::string t = v;
        if (t.size() < 2 || t.front() != '(' || t.back() != ')')
            err("expected a vector '(x, y, z)', got '" + v + "'");
        t = t.substr(1, t.size() - 2);
        std::array<double, 3> parts{};
        int idx = 0;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (idx >= 3)
                err("vector has more than three components: '" + v + "'");
            parts[static_cast<size_t>(idx++)] = num(trim(item));
        }
        if (idx != 3)
            err("vector needs three components: '" + v + "'");
        return {parts[0], parts[1], parts[2]};
    }

    Material material(const std::string& v) const {
        if (v == "absorber")
            return Material::absorber;
        if (v == "metal")
            return Material::metal;
        if (v == "wood")
            return Material::wood;
        if (v == "glass")
            return Material::glass;
        if (v == "ris")
            return Material::ris;
        if (v == "scatterer")
            return Material::scatterer;
        err("unknown material '" + v + "'");
    }

    std::vector<double> snr_list(const std::string& v) const {
        std::vector<double> out;
        if (v.find(':') != std::string::npos) {
            // range lo:step:hi
            std::array<double, 3> parts{};
            int idx = 0;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ':')) {
                if (idx >= 3)
                    err("SNR range must be lo:step:hi");
                parts[static_cast<size_t>(idx++)] = num(trim(item));
            }
            if (idx != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
                err("SNR range must be lo:step:hi with a positive step");
            for (double x = parts[0]; x <= parts[2] + 1e-9; x += parts[1])
                out.push_back(x);
        } else {
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(num(trim(item)));
        }
        if (out.empty())
            err("empty SNR list");
        return out;
    }

    static std::string trim(const std::string& s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        if (a == std::string::npos)
            return "";
        return s.substr(a, b - a + 1);
    }
};

} // namespace

Scenario parse_scenario_text(const std::string& text) {
    Scenario s = default_scenario();
    ParseCtx ctx;
    std::string section;
    bool surfaces_cleared = false;
    RectSurface* cur_surface = nullptr;
    RectSurface blocker_buf;
    bool blocker_open = false;
    bool blocker_none = false;

    auto finish_blocker = [&]() {
        if (blocker_open) {
            blocker_buf.material = Material::absorber;
            if (blocker_none)
                s.scene.blocker.reset();
            else
                s.scene.blocker = blocker_buf;
            blocker_open = false;
        }
    };

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++ctx.line;
        std::string line = ParseCtx::trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                ctx.err("unterminated section header");
            finish_blocker();
            section = line.substr(1, line.size() - 2);
            cur_surface = nullptr;
            if (section == "surface") {
                if (!surfaces_cleared) {
                    s.scene.surfaces.clear();
                    surfaces_cleared = true;
                }
                RectSurface fresh;
                s.scene.surfaces.push_back(fresh);
                cur_surface = &s.scene.surfaces.back();
            } else if (section == "blocker") {
                blocker_buf = s.scene.blocker.value_or(RectSurface{});
                blocker_open = true;
                blocker_none = false;
            } else if (section != "sounder" && section != "trajectory" && section != "scene" && section != "ris" &&
                       section != "vision" && section != "tx_array" && section != "rx_array" &&
                       section != "materials" && section != "estimator" && section != "analysis" &&
                       section != "run") {
                ctx.err("unknown section [" + section + "]");
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            ctx.err("expected 'key = value'");
        std::string key = ParseCtx::trim(line.substr(0, eq));
        std::string val = ParseCtx::trim(line.substr(eq + 1));
        if (section.empty())
            ctx.err("key '" + key + "' outside any section");

        auto unknown = [&]() { ctx.err("unknown key '" + key + "' in [" + section + "]"); };

        if (section == "sounder") {
            if (key == "carrier_hz")
                s.grid.carrier_hz = ctx.num(val);
            else if (key == "bandwidth_hz")
                s.grid.bandwidth_hz = ctx.num(val);
            else if (key == "n_freq")
                s.grid.n_bins = ctx.integer(val);
            else if (key == "grid")
                s.grid.kind = (val == "periodic")   ? GridKind::periodic
                              : (val == "endpoint") ? GridKind::endpoint
                                                    : (ctx.err("grid must be periodic or endpoint"), GridKind::periodic);
            else if (key == "switching_time_s")
                s.switching_time_s = ctx.num(val);
            else if (key == "snapshot_time_s")
                s.snapshot_time_s = ctx.num(val);
            else if (key == "switch_order")
                s.switch_order = (val == "rx_fastest")   ? SwitchOrder::rx_fastest
                                 : (val == "tx_fastest") ? SwitchOrder::tx_fastest
                                                         : (ctx.err("switch_order must be rx_fastest or tx_fastest"),
                                                            SwitchOrder::rx_fastest);
            else if (key == "noise_std")
                s.noise_std = ctx.num(val);
            else
                unknown();
        } else if (section == "trajectory") {
            if (key == "start")
                s.scene.rx_trajectory.start = ctx.vec(val);
            else if (key == "end")
                s.scene.rx_trajectory.end = ctx.vec(val);
            else if (key == "n_positions")
                s.scene.rx_trajectory.n_positions = ctx.integer(val);
            else if (key == "n_static_head")
                s.scene.rx_trajectory.n_static_head = ctx.integer(val);
            else if (key == "n_static_tail")
                s.scene.rx_trajectory.n_static_tail = ctx.integer(val);
            else if (key == "speed_mps")
                s.scene.rx_trajectory.speed = ctx.num(val);
            else
                unknown();
        } else if (section == "scene") {
            if (key == "tx")
                s.scene.tx = ctx.vec(val);
            else
                unknown();
        } else if (section == "ris") {
            if (key == "rows")
                s.scene.ris.rows = ctx.integer(val);
            else if (key == "cols")
                s.scene.ris.cols = ctx.integer(val);
            else if (key == "pitch_m")
                s.scene.ris.pitch = ctx.num(val);
            else if (key == "center")
                s.scene.ris.center = ctx.vec(val);
            else if (key == "normal")
                s.scene.ris.normal = ctx.vec(val).normalized();
            else if (key == "orientation_rad")
                s.scene.ris.orientation = ctx.num(val);
            else if (key == "element_amplitude")
                s.scene.ris.element_amplitude = ctx.num(val);
            else if (key == "pattern_exponent")
                s.scene.ris.pattern_exponent = ctx.num(val);
            else if (key == "phase0_rad")
                s.scene.ris.phase_states[0] = ctx.num(val);
            else if (key == "phase1_rad")
                s.scene.ris.phase_states[1] = ctx.num(val);
            else
                unknown();
        } else if (section == "vision") {
            if (key == "angular_noise_std_rad")
                s.scene.vision.angular_noise_std = ctx.num(val);
            else if (key == "range_mode")
                s.scene.vision.range_mode = (val == "true_range")    ? RangeMode::true_range
                                            : (val == "fixed_range") ? RangeMode::fixed_range
                                                                     : (ctx.err("range_mode must be true_range or "
                                                                                "fixed_range"),
                                                                        RangeMode::true_range);
            else if (key == "fixed_range_m")
                s.scene.vision.fixed_range = ctx.num(val);
            else if (key == "range_noise_std_m")
                s.scene.vision.range_noise_std = ctx.num(val);
            else
                unknown();
        } else if (section == "tx_array" || section == "rx_array") {
            ArraySpec& a = (section == "tx_array") ? s.tx_array : s.rx_array;
            if (key == "type")
                a.kind = (val == "planar")      ? ArrayKind::planar
                         : (val == "octagonal") ? ArrayKind::octagonal
                         : (val == "single")    ? ArrayKind::single
                                                : (ctx.err("array type must be planar, octagonal or single"),
                                                   ArrayKind::planar);
            else if (key == "rows")
                a.rows = ctx.integer(val);
            else if (key == "cols")
                a.cols = ctx.integer(val);
            else if (key == "faces")
                a.faces = ctx.integer(val);
            else if (key == "dual_pol")
                a.dual_pol = ctx.boolean(val);
            else if (key == "pitch_m")
                a.pitch_m = ctx.num(val);
            else if (key == "pattern_exponent")
                a.pattern_exponent = ctx.num(val);
            else if (key == "boresight_az_deg")
                a.boresight_az_deg = ctx.num(val);
            else
                unknown();
        } else if (section == "materials") {
            if (key == "metal_loss_db")
                s.materials.metal_loss_db = ctx.num(val);
            else if (key == "wood_loss_db")
                s.materials.wood_loss_db = ctx.num(val);
            else if (key == "glass_loss_db")
                s.materials.glass_loss_db = ctx.num(val);
            else if (key == "scatterer_loss_db")
                s.materials.scatterer_loss_db = ctx.num(val);
            else
                unknown();
        } else if (section == "estimator") {
            if (key == "max_paths")
                s.estimator.max_paths = ctx.integer(val);
            else if (key == "tolerance")
                s.estimator.tolerance = ctx.num(val);
            else if (key == "max_sweeps")
                s.estimator.max_sweeps = ctx.integer(val);
            else if (key == "delay_grid_bins")
                s.estimator.delay_grid_bins = ctx.num(val);
            else if (key == "azimuth_grid_deg")
                s.estimator.azimuth_grid_deg = ctx.num(val);
            else if (key == "elevation_grid_deg")
                s.estimator.elevation_grid_deg = ctx.num(val);
            else if (key == "doppler_span_hz")
                s.estimator.doppler_span_hz = ctx.num(val);
            else if (key == "doppler_grid_hz")
                s.estimator.doppler_grid_hz = ctx.num(val);
            else if (key == "detection_threshold_db")
                s.estimator.detection_threshold_db = ctx.num(val);
            else if (key == "search_elevation")
                s.estimator.search_elevation = ctx.boolean(val);
            else if (key == "search_doppler")
                s.estimator.search_doppler = ctx.boolean(val);
            else
                unknown();
        } else if (section == "analysis") {
            if (key == "snr_db")
                s.analysis.snr_db = ctx.snr_list(val);
            else if (key == "window")
                s.analysis.window = ctx.integer(val);
            else if (key == "pol")
                s.analysis.pol = (val == "vv")     ? PolMode::vv_only
                                 : (val == "full") ? PolMode::full_pol
                                                   : (ctx.err("pol must be vv or full"), PolMode::vv_only);
            else
                unknown();
        } else if (section == "run") {
            if (key == "seed")
                s.seed = ctx.u64(val);
            else if (key == "out_dir")
                s.out_dir = val;
            else if (key == "beam_update_every")
                s.beam_update_every = ctx.integer(val);
            else
                unknown();
        } else if (section == "surface") {
            if (!cur_surface)
                ctx.err("surface key outside a [surface] section");
            if (key == "center")
                cur_surface->center = ctx.vec(val);
            else if (key == "normal")
                cur_surface->normal = ctx.vec(val).normalized();
            else if (key == "width")
                cur_surface->width = ctx.num(val);
            else if (key == "height")
                cur_surface->height = ctx.num(val);
            else if (key == "orientation_rad")
                cur_surface->orientation = ctx.num(val);
            else if (key == "material")
                cur_surface->material = ctx.material(val);
            else
                unknown();
        } else if (section == "blocker") {
            if (key == "none")
                blocker_none = ctx.boolean(val);
            else if (key == "center")
                blocker_buf.center = ctx.vec(val);
            else if (key == "normal")
                blocker_buf.normal = ctx.vec(val).normalized();
            else if (key == "width")
                blocker_buf.width = ctx.num(val);
            else if (key == "height")
                blocker_buf.height = ctx.num(val);
            else if (key == "orientation_rad")
                blocker_buf.orientation = ctx.num(val);
            else
                unknown();
        }
    }
    finish_blocker();
    s.validate();
    return s;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("parse_scenario: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream o;
    o << "# risim scenario\n";
    o << "[sounder]\n";
    o << "carrier_hz = " << fmt_double(s.grid.carrier_hz) << "\n";
    o << "bandwidth_hz = " << fmt_double(s.grid.bandwidth_hz) << "\n";
    o << "n_freq = " << s.grid.n_bins << "\n";
    o << "grid = " << (s.grid.kind == GridKind::periodic ? "periodic" : "endpoint") << "\n";
    o << "switching_time_s = " << fmt_double(s.switching_time_s) << "\n";
    o << "snapshot_time_s = " << fmt_double(s.snapshot_time_s) << "\n";
    o << "switch_order = " << (s.switch_order == SwitchOrder::rx_fastest ? "rx_fastest" : "tx_fastest") << "\n";
    o << "noise_std = " << fmt_double(s.noise_std) << "\n";
    o << "\n[trajectory]\n";
    o << "start = " << fmt_vec(s.scene.rx_trajectory.start) << "\n";
    o << "end = " << fmt_vec(s.scene.rx_trajectory.end) << "\n";
    o << "n_positions = " << s.scene.rx_trajectory.n_positions << "\n";
    o << "n_static_head = " << s.scene.rx_trajectory.n_static_head << "\n";
    o << "n_static_tail = " << s.scene.rx_trajectory.n_static_tail << "\n";
    o << "speed_mps = " << fmt_double(s.scene.rx_trajectory.speed) << "\n";
    o << "\n[scene]\n";
    o << "tx = " << fmt_vec(s.scene.tx) << "\n";
    o << "\n[ris]\n";
    o << "rows = " << s.scene.ris.rows << "\n";
    o << "cols = " << s.scene.ris.cols << "\n";
    o << "pitch_m = " << fmt_double(s.scene.ris.pitch) << "\n";
    o << "center = " << fmt_vec(s.scene.ris.center) << "\n";
    o << "normal = " << fmt_vec(s.scene.ris.normal) << "\n";
    o << "orientation_rad = " << fmt_double(s.scene.ris.orientation) << "\n";
    o << "element_amplitude = " << fmt_double(s.scene.ris.element_amplitude) << "\n";
    o << "pattern_exponent = " << fmt_double(s.scene.ris.pattern_exponent) << "\n";
    o << "phase0_rad = " << fmt_double(s.scene.ris.phase_states[0]) << "\n";
    o << "phase1_rad = " << fmt_double(s.scene.ris.phase_states[1]) << "\n";
    o << "\n[vision]\n";
    o << "angular_noise_std_rad = " << fmt_double(s.scene.vision.angular_noise_std) << "\n";
    o << "range_mode = " << (s.scene.vision.range_mode == RangeMode::true_range ? "true_range" : "fixed_range")
      << "\n";
    o << "fixed_range_m = " << fmt_double(s.scene.vision.fixed_range) << "\n";
    o << "range_noise_std_m = " << fmt_double(s.scene.vision.range_noise_std) << "\n";

    auto dump_array = [&](const char* name, const ArraySpec& a) {
        o << "\n[" << name << "]\n";
        o << "type = "
          << (a.kind == ArrayKind::planar ? "planar" : a.kind == ArrayKind::octagonal ? "octagonal" : "single")
          << "\n";
        o << "rows = " << a.rows << "\n";
        o << "cols = " << a.cols << "\n";
        o << "faces = " << a.faces << "\n";
        o << "dual_pol = " << (a.dual_pol ? "true" : "false") << "\n";
        o << "pitch_m = " << fmt_double(a.pitch_m) << "\n";
        o << "pattern_exponent = " << fmt_double(a.pattern_exponent) << "\n";
        o << "boresight_az_deg = " << fmt_double(a.boresight_az_deg) << "\n";
    };
    dump_array("tx_array", s.tx_array);
    dump_array("rx_array", s.rx_array);

    o << "\n[materials]\n";
    o << "metal_loss_db = " << fmt_double(s.materials.metal_loss_db) << "\n";
    o << "wood_loss_db = " << fmt_double(s.materials.wood_loss_db) << "\n";
    o << "glass_loss_db = " << fmt_double(s.materials.glass_loss_db) << "\n";
    o << "scatterer_loss_db = " << fmt_double(s.materials.scatterer_loss_db) << "\n";

    o << "\n[estimator]\n";
    o << "max_paths = " << s.estimator.max_paths << "\n";
    o << "tolerance = " << fmt_double(s.estimator.tolerance) << "\n";
    o << "max_sweeps = " << s.estimator.max_sweeps << "\n";
    o << "delay_grid_bins = " << fmt_double(s.estimator.delay_grid_bins) << "\n";
    o << "azimuth_grid_deg = " << fmt_double(s.estimator.azimuth_grid_deg) << "\n";
    o << "elevation_grid_deg = " << fmt_double(s.estimator.elevation_grid_deg) << "\n";
    o << "doppler_span_hz = " << fmt_double(s.estimator.doppler_span_hz) << "\n";
    o << "doppler_grid_hz = " << fmt_double(s.estimator.doppler_grid_hz) << "\n";
    o << "detection_threshold_db = " << fmt_double(s.estimator.detection_threshold_db) << "\n";
    o << "search_elevation = " << (s.estimator.search_elevation ? "true" : "false") << "\n";
    o << "search_doppler = " << (s.estimator.search_doppler ? "true" : "false") << "\n";

    o << "\n[analysis]\n";
    o << "snr_db = ";
    for (size_t i = 0; i < s.analysis.snr_db.size(); ++i)
        o << (i ? "," : "") << fmt_double(s.analysis.snr_db[i]);
    o << "\n";
    o << "window = " << s.analysis.window << "\n";
    o << "pol = " << (s.analysis.pol == PolMode::vv_only ? "vv" : "full") << "\n";

    o << "\n[run]\n";
    o << "seed = " << s.seed << "\n";
    o << "out_dir = " << s.out_dir << "\n";
    o << "beam_update_every = " << s.beam_update_every << "\n";

    for (const auto& surf : s.scene.surfaces) {
        o << "\n[surface]\n";
        o << "center = " << fmt_vec(surf.center) << "\n";
        o << "normal = " << fmt_vec(surf.normal) << "\n";
        o << "width = " << fmt_double(surf.width) << "\n";
        o << "height = " << fmt_double(surf.height) << "\n";
        o << "orientation_rad = " << fmt_double(surf.orientation) << "\n";
        o << "material = " << material_name(surf.material) << "\n";
    }
    if (s.scene.blocker) {
        o << "\n[blocker]\n";
        o << "center = " << fmt_vec(s.scene.blocker->center) << "\n";
        o << "normal = " << fmt_vec(s.scene.blocker->normal) << "\n";
        o << "width = " << fmt_double(s.scene.blocker->width) << "\n";
        o << "height = " << fmt_double(s.scene.blocker->height) << "\n";
        o << "orientation_rad = " << fmt_double(s.scene.blocker->orientation) << "\n";
    } else {
        o << "\n[blocker]\n";
        o << "none = true\n";
    }
    return o.str();
}

bool operator==(const Scenario& a, const Scenario& b) {
    return serialize_scenario(a) == serialize_scenario(b);
}

} // namespace risim
