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

#include "risim/blocker.hpp"

#include <stdexcept>

namespace risim {

bool mpc_blocked(const Mpc& m, const RectSurface& blocker, const Vec3& tx, const Vec3& rx) {
    return ray_hits_rect(tx, m.departure.unit(), blocker).has_value() ||
           ray_hits_rect(rx, m.arrival.unit(), blocker).has_value();
}

MpcSet apply_blocker(const MpcSet& mpcs, const RectSurface& blocker, const Vec3& tx, const Vec3& rx) {
    if (blocker.material != Material::absorber)
        throw std::invalid_argument("apply_blocker: blocker must be tagged as absorber");
    blocker.validate();

    MpcSet out;
    out.position = mpcs.position;
    out.state = mpcs.state;
    bool los_present = false;
    for (const Mpc& m : mpcs.paths) {
        if (mpc_blocked(m, blocker, tx, rx))
            continue;
        if (m.kind == PathKind::los)
            los_present = true;
        out.paths.push_back(m);
    }
    out.visibility = los_present ? Visibility::los : Visibility::nlos;
    return out;
}

Ctf reconstruct_nlos_ctf(const MpcSet& filtered, const ArrayGeometry& tx_array, const ArrayGeometry& rx_array,
                         const SounderTiming& timing, const FreqGrid& grid, const NoiseModel& noise, int n_snapshots,
                         int snapshot_offset) {
    return synthesize_ctf(filtered, tx_array, rx_array, timing, grid, noise, n_snapshots, snapshot_offset);
}

} // namespace risim
