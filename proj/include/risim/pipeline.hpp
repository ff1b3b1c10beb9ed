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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "risim/analysis.hpp"
#include "risim/scenario.hpp"

namespace risim {

enum class StateSelection : unsigned char { off, on, both };

struct RunOptions {
    StateSelection ris = StateSelection::both;
    bool estimate = false; // false: ground-truth paths feed the analysis
    std::optional<int> nlos_from;
    std::optional<std::pair<int, int>> positions; // inclusive range
    std::vector<double> snr_db;                   // empty: scenario default
    std::string out_dir;                          // empty: scenario default
    std::optional<std::uint64_t> seed;
};

// One row of estimates.csv.
struct EstimateRow {
    int position = 0;
    RisState state = RisState::off;
    int path_id = 0;
    double delay_ns = 0.0;
    double doppler_hz = 0.0;
    double aod_az_deg = 0.0, aod_el_deg = 0.0;
    double aoa_az_deg = 0.0, aoa_el_deg = 0.0;
    double gamma_vv_db = 0.0;
    double gamma_vv_arg_deg = 0.0;
    double residual_db = 0.0;
    bool converged = true;
};

struct PipelineResult {
    std::vector<int> positions;
    std::vector<Visibility> visibility;
    // post-blocker path sets per position, index 0 = off, 1 = on (empty when
    // the state was not run)
    std::vector<std::array<MpcSet, 2>> mpcs;
    Eigen::VectorXd ratio_raw;      // per-position power ratio (both states)
    Eigen::VectorXd ratio_smoothed;
    CapacityReport capacity;
    std::vector<EstimateRow> estimates;
    std::vector<std::string> files; // written outputs, manifest last
};

// Run the scenario end to end: expand paths, synthesize, (optionally)
// estimate, apply the blocker, analyze, and write the CSV outputs plus a
// manifest into the output directory. Deterministic for fixed seeds.
PipelineResult run_pipeline(const Scenario& scenario, const RunOptions& options);

// FNV-1a 64-bit content hash used by the manifest.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64_file(const std::string& path);

} // namespace risim
