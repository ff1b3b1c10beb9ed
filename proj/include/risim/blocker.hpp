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

#include "risim/channel.hpp"
#include "risim/mpc.hpp"

namespace risim {

// Remove every path whose departure ray from the TX or whose arrival ray
// from the RX (pointing toward the incoming wave) crosses the absorbing
// rectangle. The geometric rays are tested at unbounded positive range, so
// only the stored path directions are needed. The visibility tag of the
// result is `nlos` exactly when no direct path remains.
MpcSet apply_blocker(const MpcSet& mpcs, const RectSurface& blocker, const Vec3& tx, const Vec3& rx);

// Blocking predicate for a single path (the rule apply_blocker applies).
bool mpc_blocked(const Mpc& m, const RectSurface& blocker, const Vec3& tx, const Vec3& rx);

// Rebuild the CTF from a filtered path set; the observation noise is drawn
// from the given (fresh) seed.
Ctf reconstruct_nlos_ctf(const MpcSet& filtered, const ArrayGeometry& tx_array, const ArrayGeometry& rx_array,
                         const SounderTiming& timing, const FreqGrid& grid, const NoiseModel& noise,
                         int n_snapshots = 1, int snapshot_offset = 0);

} // namespace risim
