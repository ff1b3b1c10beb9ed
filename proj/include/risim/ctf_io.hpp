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

#include <string>

#include "risim/channel.hpp"

namespace risim {

// Binary CTF container, little-endian throughout:
//   u64 magic 0x3046544D49534952 ("RISIMTF0")
//   u64 n_freq, u64 n_snapshots, u64 n_tx, u64 n_rx
//   u64 grid_kind (0 endpoint, 1 periodic), u64 snapshot_offset
//   f64 carrier_hz, f64 bandwidth_hz
//   payload: n_freq*n_snapshots*n_tx*n_rx complex samples as interleaved
//   (re, im) f64 pairs, (f, s, m_t, m_r) row-major (m_r fastest).
void save_ctf(const Ctf& ctf, const std::string& path);
Ctf load_ctf(const std::string& path);

inline constexpr std::uint64_t kCtfMagic = 0x3046544D49534952ULL;

} // namespace risim
