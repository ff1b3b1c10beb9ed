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
#include <cstdint>
#include <vector>

#include "risim/arrays.hpp"
#include "risim/mpc.hpp"
#include "risim/scene.hpp"

namespace risim {

using cplx = std::complex<double>;

enum class GridKind : unsigned char { endpoint, periodic };

// Uniform frequency grid centered on the carrier. `periodic` spacing is
// bandwidth/n_bins (natural for FFT processing), `endpoint` spacing is
// bandwidth/(n_bins-1) with both band edges sampled.
struct FreqGrid {
    double carrier_hz = 28e9;
    double bandwidth_hz = 768e6;
    int n_bins = 256;
    GridKind kind = GridKind::periodic;

    void validate() const;
    double spacing_hz() const {
        return bandwidth_hz / (kind == GridKind::periodic ? n_bins : n_bins - 1);
    }
    double bin_hz(int i) const { return carrier_hz - 0.5 * bandwidth_hz + i * spacing_hz(); }
};

// Complex white Gaussian observation noise, std per complex sample
// (E|n|^2 = std^2).
struct NoiseModel {
    double std = 0.0;
    std::uint64_t seed = 0;
};

// Channel transfer function tensor over (frequency bin, snapshot, TX
// element, RX element), stored row-major in that order (RX element fastest).
// `snapshot_offset` is the absolute index of the first snapshot, so sample
// times stay consistent when a trajectory is cut into per-position tensors.
struct Ctf {
    FreqGrid grid;
    int n_snapshots = 1;
    int n_tx = 1;
    int n_rx = 1;
    int snapshot_offset = 0;
    std::vector<cplx> data;

    std::size_t size() const { return data.size(); }
    std::size_t index(int f, int s, int mt, int mr) const {
        return ((static_cast<std::size_t>(f) * n_snapshots + s) * n_tx + mt) * n_rx + mr;
    }
    cplx& at(int f, int s, int mt, int mr) { return data[index(f, s, mt, mr)]; }
    const cplx& at(int f, int s, int mt, int mr) const { return data[index(f, s, mt, mr)]; }

    // n_tx x n_rx matrix view of one (frequency, snapshot) slice
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> slice(int f, int s) const {
        return {data.data() + index(f, s, 0, 0), n_tx, n_rx};
    }

    double energy() const;
};

// Unitary-normalized inverse DFT of one (snapshot, mt, mr) line across
// frequency; bin n corresponds to delay n / bandwidth.
Eigen::VectorXcd impulse_response(const Ctf& ctf, int s, int mt, int mr);

// Reflection losses by material, linear amplitude factors derived from dB
// values. Path amplitudes use a free-space constant of 1 at 1 m.
struct ChannelConfig {
    double metal_loss_db = 0.0;
    double wood_loss_db = 6.0;
    double glass_loss_db = 3.0;
    double scatterer_loss_db = 18.0;

    double amplitude_factor(Material m) const;
};

// Expand the scene into propagation paths at one RX position: the direct
// path when not occluded, one first-order image-method reflection per
// reflecting rectangle whose specular point lies on it, a point-scatterer
// path per scatterer-tagged surface, and the configured panel path (co-
// phasing configuration from the vision estimate when `state` is on, the
// all-zero metal-plate configuration when off). `preset_config` overrides
// the on-state configuration (beam update cadence).
MpcSet scene_to_mpcs(const SceneLayout& layout, int position_index, RisState state, double carrier_hz,
                     const ChannelConfig& cfg = {}, std::uint64_t vision_seed = 0,
                     const RisConfig* preset_config = nullptr);

// Superimpose all paths into the CTF tensor:
//   H(f,s,mt,mr) = sum_l b_r(mr)^T gamma_l b_t(mt) e^{-j2pi f tau_l}
//                  e^{-j2pi nu_l t(s,mt,mr)} + noise,
// with the element steering phases evaluated at each frequency bin and the
// switched-sounder timestamps from `timing`. Deterministic given the noise
// seed.
Ctf synthesize_ctf(const MpcSet& mpcs, const ArrayGeometry& tx_array, const ArrayGeometry& rx_array,
                   const SounderTiming& timing, const FreqGrid& grid, const NoiseModel& noise, int n_snapshots = 1,
                   int snapshot_offset = 0);

// Add (or with sign = -1 subtract) one path's noiseless contribution to a
// tensor laid out like Ctf::data. Shared by the synthesizer and the
// estimator.
void accumulate_path(std::vector<cplx>& data, const Mpc& path, const ArrayGeometry& tx_array,
                     const ArrayGeometry& rx_array, const SounderTiming& timing, const FreqGrid& grid,
                     int n_snapshots, int snapshot_offset, double sign = 1.0);

} // namespace risim
