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
#include <complex>
#include <vector>

#include "risim/geometry.hpp"

namespace risim {

enum class PathKind : unsigned char { los, ris, surface, scatterer };

// One propagation path. Directions follow the sounding convention: the
// departure direction points from the TX toward the first interaction point
// (or the RX for the direct path); the arrival direction points from the RX
// toward the last interaction point. The polarimetric matrix is indexed
// gamma(rx_pol, tx_pol) with H = 0, V = 1.
struct Mpc {
    double delay_s = 0.0;
    double doppler_hz = 0.0;
    Direction departure;
    Direction arrival;
    Eigen::Matrix2cd gamma = Eigen::Matrix2cd::Zero();
    PathKind kind = PathKind::scatterer;
    int surface_id = -1;

    std::complex<double> gamma_vv() const { return gamma(1, 1); }
    double power_vv() const { return std::norm(gamma(1, 1)); }
    double power_full() const { return gamma.squaredNorm(); }
};

enum class RisState : unsigned char { off = 0, on = 1 };
enum class Visibility : unsigned char { los = 0, nlos = 1 };

struct MpcSet {
    std::vector<Mpc> paths;
    int position = 0;
    RisState state = RisState::off;
    Visibility visibility = Visibility::los;

    double total_power_vv() const;
    double total_power_full() const;
    const Mpc* find(PathKind kind) const;
};

inline double MpcSet::total_power_vv() const {
    double p = 0.0;
    for (const auto& m : paths)
        p += m.power_vv();
    return p;
}

inline double MpcSet::total_power_full() const {
    double p = 0.0;
    for (const auto& m : paths)
        p += m.power_full();
    return p;
}

inline const Mpc* MpcSet::find(PathKind kind) const {
    for (const auto& m : paths)
        if (m.kind == kind)
            return &m;
    return nullptr;
}

} // namespace risim
