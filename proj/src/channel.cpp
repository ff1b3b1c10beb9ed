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

#include "risim/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "risim/rng.hpp"

#include <unsupported/Eigen/FFT>

namespace risim {

void FreqGrid::validate() const {
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("FreqGrid: carrier must be positive");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("FreqGrid: bandwidth must be positive");
    if (n_bins < 2)
        throw std::invalid_argument("FreqGrid: at least two bins required");
}

double Ctf::energy() const {
    double e = 0.0;
    for (const auto& v : data)
        e += std::norm(v);
    return e;
}

Eigen::VectorXcd impulse_response(const Ctf& ctf, int s, int mt, int mr) {
    const int n = ctf.grid.n_bins;
    std::vector<cplx> line(static_cast<size_t>(n));
    for (int f = 0; f < n; ++f)
        line[static_cast<size_t>(f)] = ctf.at(f, s, mt, mr);
    std::vector<cplx> out(static_cast<size_t>(n));
    Eigen::FFT<double> fft;
    fft.inv(out, line);
    // unitary scaling so time- and frequency-domain energies match
    Eigen::VectorXcd h(n);
    double scale = std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        h(i) = out[static_cast<size_t>(i)] * scale;
    return h;
}

double ChannelConfig::amplitude_factor(Material m) const {
    double db = 0.0;
    switch (m) {
    case Material::metal: db = metal_loss_db; break;
    case Material::wood: db = wood_loss_db; break;
    case Material::glass: db = glass_loss_db; break;
    case Material::scatterer: db = scatterer_loss_db; break;
    case Material::ris:
    case Material::absorber: return 0.0;
    }
    return std::pow(10.0, -db / 20.0);
}

namespace {

// segment occlusion against the scene rectangles; scatterer markers never
// occlude and the index `skip` (the reflecting surface itself) is excluded
bool occluded(const Vec3& a, const Vec3& b, const std::vector<RectSurface>& surfaces, const RectSurface* panel_rect,
              int skip) {
    for (size_t j = 0; j < surfaces.size(); ++j) {
        if (static_cast<int>(j) == skip || surfaces[j].material == Material::scatterer)
            continue;
        if (segment_hits_rect(a, b, surfaces[j]))
            return true;
    }
    if (panel_rect && segment_hits_rect(a, b, *panel_rect))
        return true;
    return false;
}

bool reflective(Material m) {
    return m == Material::metal || m == Material::wood || m == Material::glass;
}

} // namespace

MpcSet scene_to_mpcs(const SceneLayout& layout, int position_index, RisState state, double carrier_hz,
                     const ChannelConfig& cfg, std::uint64_t vision_seed, const RisConfig* preset_config) {
    layout.validate();
    const auto positions = trajectory_positions(layout.rx_trajectory);
    if (position_index < 0 || position_index >= static_cast<int>(positions.size()))
        throw std::out_of_range("scene_to_mpcs: position index out of range");
    const Vec3 rx = positions[static_cast<size_t>(position_index)];
    const Vec3 v = trajectory_velocity(layout.rx_trajectory, position_index);
    const Vec3 tx = layout.tx;
    const double lambda = kSpeedOfLight / carrier_hz;
    const RectSurface panel_rect = layout.ris.bounding_rect();

    MpcSet set;
    set.position = position_index;
    set.state = state;
    set.visibility = Visibility::los;

    auto doppler_toward_rx = [&](const Vec3& last_point) {
        Vec3 d = rx - last_point;
        double n = d.norm();
        if (n < 1e-15)
            return 0.0;
        return -(d / n).dot(v) / lambda;
    };

    // direct path
    if (!occluded(tx, rx, layout.surfaces, &panel_rect, -1)) {
        Mpc m;
        double d = (rx - tx).norm();
        m.delay_s = d / kSpeedOfLight;
        m.departure = direction_between(tx, rx);
        m.arrival = direction_between(rx, tx);
        double amp = 1.0 / d;
        m.gamma(0, 0) = amp;
        m.gamma(1, 1) = amp;
        m.doppler_hz = doppler_toward_rx(tx);
        m.kind = PathKind::los;
        set.paths.push_back(m);
    }

    // first-order specular reflections
    for (size_t j = 0; j < layout.surfaces.size(); ++j) {
        const RectSurface& surf = layout.surfaces[j];
        if (!reflective(surf.material))
            continue;
        double side_tx = (tx - surf.center).dot(surf.normal);
        double side_rx = (rx - surf.center).dot(surf.normal);
        if (side_tx * side_rx <= 1e-12)
            continue; // transmission geometry, not a reflection
        Vec3 img = specular_image(tx, surf);
        Vec3 to_rx = rx - img;
        double img_dist = to_rx.norm();
        auto hit = ray_hits_rect(img, to_rx / img_dist, surf);
        if (!hit)
            continue;
        Vec3 q = *hit;
        if ((q - img).norm() >= img_dist)
            continue; // specular point beyond the receiver
        if (occluded(tx, q, layout.surfaces, &panel_rect, static_cast<int>(j)) ||
            occluded(q, rx, layout.surfaces, &panel_rect, static_cast<int>(j)))
            continue;
        Mpc m;
        double d1 = (q - tx).norm();
        double d2 = (rx - q).norm();
        m.delay_s = (d1 + d2) / kSpeedOfLight;
        m.departure = direction_between(tx, q);
        m.arrival = direction_between(rx, q);
        double amp = cfg.amplitude_factor(surf.material) / (d1 + d2);
        m.gamma(0, 0) = amp;
        m.gamma(1, 1) = amp;
        m.doppler_hz = doppler_toward_rx(q);
        m.kind = PathKind::surface;
        m.surface_id = static_cast<int>(j);
        set.paths.push_back(m);
    }

    // point scatterers
    for (size_t j = 0; j < layout.surfaces.size(); ++j) {
        const RectSurface& surf = layout.surfaces[j];
        if (surf.material != Material::scatterer)
            continue;
        Vec3 p = surf.center;
        if (occluded(tx, p, layout.surfaces, &panel_rect, static_cast<int>(j)) ||
            occluded(p, rx, layout.surfaces, &panel_rect, static_cast<int>(j)))
            continue;
        Mpc m;
        double d1 = (p - tx).norm();
        double d2 = (rx - p).norm();
        if (d1 < 1e-12 || d2 < 1e-12)
            continue;
        m.delay_s = (d1 + d2) / kSpeedOfLight;
        m.departure = direction_between(tx, p);
        m.arrival = direction_between(rx, p);
        double amp = cfg.amplitude_factor(Material::scatterer) / (d1 * d2);
        m.gamma(0, 0) = amp;
        m.gamma(1, 1) = amp;
        m.doppler_hz = doppler_toward_rx(p);
        m.kind = PathKind::scatterer;
        m.surface_id = static_cast<int>(j);
        set.paths.push_back(m);
    }

    // configured panel path (VV only)
    const RisPanel& panel = layout.ris;
    bool illuminated = (tx - panel.center).dot(panel.normal) > 1e-12 && (rx - panel.center).dot(panel.normal) > 1e-12;
    if (illuminated && !occluded(tx, panel.center, layout.surfaces, nullptr, -1) &&
        !occluded(panel.center, rx, layout.surfaces, nullptr, -1)) {
        RisConfig config;
        if (preset_config) {
            config = *preset_config;
        } else if (state == RisState::on) {
            Vec3 est = vision_estimate(layout.vision, rx, panel, vision_seed);
            if ((est - panel.center).dot(panel.normal) <= 1e-12)
                est = rx; // noisy estimate fell behind the panel; fall back
            config = quantize_1bit(ideal_phase_map(panel, tx, est, carrier_hz), panel.phase_states);
        } else {
            config = RisConfig::zeros(panel);
        }
        set.paths.push_back(ris_to_mpc(panel, config, tx, rx, carrier_hz, v));
    }

    return set;
}

void accumulate_path(std::vector<cplx>& data, const Mpc& path, const ArrayGeometry& tx_array,
                     const ArrayGeometry& rx_array, const SounderTiming& timing, const FreqGrid& grid,
                     int n_snapshots, int snapshot_offset, double sign) {
    const int nf = grid.n_bins;
    const int mt_n = tx_array.size();
    const int mr_n = rx_array.size();
    const std::size_t pairs = static_cast<std::size_t>(mt_n) * mr_n;
    const std::size_t slab = static_cast<std::size_t>(n_snapshots) * pairs;
    if (data.size() != static_cast<std::size_t>(nf) * slab)
        throw std::invalid_argument("accumulate_path: tensor size mismatch");

    const double f_first = grid.bin_hz(0);
    const double df = grid.spacing_hz();

    std::vector<cplx> work(slab);
    std::vector<cplx> rho(pairs);
    std::vector<double> g_t(static_cast<size_t>(mt_n)), g_r(static_cast<size_t>(mr_n));
    std::vector<double> delta_t(static_cast<size_t>(mt_n)), delta_r(static_cast<size_t>(mr_n));

    // per-element pattern gains and geometric time advances
    Vec3 u_t = tx_array.rotation.transpose() * path.departure.unit();
    Vec3 u_r = rx_array.rotation.transpose() * path.arrival.unit();
    for (int mt = 0; mt < mt_n; ++mt) {
        const ArrayElement& el = tx_array.elements[static_cast<size_t>(mt)];
        double ca = u_t.dot(el.boresight);
        g_t[static_cast<size_t>(mt)] =
            (tx_array.pattern_exponent > 0.0) ? ((ca > 0.0) ? std::pow(ca, tx_array.pattern_exponent) : 0.0) : 1.0;
        delta_t[static_cast<size_t>(mt)] = u_t.dot(el.position) / kSpeedOfLight;
    }
    for (int mr = 0; mr < mr_n; ++mr) {
        const ArrayElement& el = rx_array.elements[static_cast<size_t>(mr)];
        double ca = u_r.dot(el.boresight);
        g_r[static_cast<size_t>(mr)] =
            (rx_array.pattern_exponent > 0.0) ? ((ca > 0.0) ? std::pow(ca, rx_array.pattern_exponent) : 0.0) : 1.0;
        delta_r[static_cast<size_t>(mr)] = u_r.dot(el.position) / kSpeedOfLight;
    }

    for (int mt = 0; mt < mt_n; ++mt) {
        Pol qt = tx_array.elements[static_cast<size_t>(mt)].pol;
        for (int mr = 0; mr < mr_n; ++mr) {
            Pol pr = rx_array.elements[static_cast<size_t>(mr)].pol;
            std::size_t pair = static_cast<std::size_t>(mt) * mr_n + mr;
            cplx g = sign * path.gamma(static_cast<int>(pr), static_cast<int>(qt)) * g_t[static_cast<size_t>(mt)] *
                     g_r[static_cast<size_t>(mr)];
            double tau_eff = path.delay_s - delta_t[static_cast<size_t>(mt)] - delta_r[static_cast<size_t>(mr)];
            rho[pair] = std::polar(1.0, -kTwoPi * df * tau_eff);
            cplx base = g * std::polar(1.0, -kTwoPi * f_first * tau_eff);
            for (int s = 0; s < n_snapshots; ++s) {
                double t = sample_time(timing, snapshot_offset + s, mt, mr);
                work[static_cast<std::size_t>(s) * pairs + pair] =
                    base * std::polar(1.0, -kTwoPi * path.doppler_hz * t);
            }
        }
    }

    // geometric progression across frequency bins
    cplx* dst = data.data();
    for (int f = 0; f < nf; ++f, dst += slab) {
        for (std::size_t i = 0; i < slab; ++i)
            dst[i] += work[i];
        if (f + 1 < nf)
            for (std::size_t s = 0; s < static_cast<std::size_t>(n_snapshots); ++s)
                for (std::size_t p = 0; p < pairs; ++p)
                    work[s * pairs + p] *= rho[p];
    }
}

Ctf synthesize_ctf(const MpcSet& mpcs, const ArrayGeometry& tx_array, const ArrayGeometry& rx_array,
                   const SounderTiming& timing, const FreqGrid& grid, const NoiseModel& noise, int n_snapshots,
                   int snapshot_offset) {
    grid.validate();
    tx_array.validate();
    rx_array.validate();
    timing.validate();
    if (timing.n_tx != tx_array.size() || timing.n_rx != rx_array.size())
        throw std::invalid_argument("synthesize_ctf: timing channel counts do not match the arrays");
    if (n_snapshots < 1 || snapshot_offset < 0)
        throw std::invalid_argument("synthesize_ctf: invalid snapshot range");

    Ctf out;
    out.grid = grid;
    out.n_snapshots = n_snapshots;
    out.n_tx = tx_array.size();
    out.n_rx = rx_array.size();
    out.snapshot_offset = snapshot_offset;
    out.data.assign(static_cast<std::size_t>(grid.n_bins) * n_snapshots * out.n_tx * out.n_rx, cplx{0.0, 0.0});

    for (const Mpc& path : mpcs.paths)
        accumulate_path(out.data, path, tx_array, rx_array, timing, grid, n_snapshots, snapshot_offset);

    if (noise.std > 0.0) {
        Rng rng(noise.seed);
        for (auto& v : out.data)
            v += noise.std * rng.gaussian_complex();
    }
    return out;
}

} // namespace risim
