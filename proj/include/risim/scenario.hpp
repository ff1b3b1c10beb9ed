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

#include <cstdint>
#include <string>
#include <vector>

#include "risim/analysis.hpp"
#include "risim/channel.hpp"
#include "risim/sage.hpp"
#include "risim/scene.hpp"

namespace risim {

enum class ArrayKind : unsigned char { planar, octagonal, single };

// Array description as it appears in the scenario file; resolved into an
// ArrayGeometry by build().
struct ArraySpec {
    ArrayKind kind = ArrayKind::planar;
    int rows = 8;
    int cols = 8;
    int faces = 8;
    bool dual_pol = true;
    double pitch_m = 0.0; // 0 = half wavelength at the carrier
    double pattern_exponent = 1.0;
    double boresight_az_deg = 0.0;

    ArrayGeometry build(double carrier_hz) const;
    int element_count() const;
};

struct AnalysisConfig {
    std::vector<double> snr_db; // defaults to -10:5:30
    int window = 5;
    PolMode pol = PolMode::vv_only;
};

// Everything one reproducible run needs. Parsed from the scenario text
// format (see the repository README for the grammar); every field has a
// default mirroring the reference sounder setup, so an empty file is a
// valid scenario.
struct Scenario {
    FreqGrid grid;
    double switching_time_s = 18.8e-6;
    double snapshot_time_s = 0.62;
    SwitchOrder switch_order = SwitchOrder::rx_fastest;
    double noise_std = 0.01;

    SceneLayout scene;
    ArraySpec tx_array;
    ArraySpec rx_array;
    ChannelConfig materials;
    EstimatorConfig estimator;
    AnalysisConfig analysis;

    int beam_update_every = 1;
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    void validate() const;
    SounderTiming timing() const;
};

Scenario default_scenario();

// Parse scenario text; unknown sections or keys are rejected with the line
// number, invariant violations name the offending field.
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::string& path);

// Canonical serialization; parse(serialize(s)) == s field for field.
std::string serialize_scenario(const Scenario& s);

bool operator==(const Scenario& a, const Scenario& b);
inline bool operator!=(const Scenario& a, const Scenario& b) { return !(a == b); }

} // namespace risim
