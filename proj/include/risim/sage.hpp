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

#include <vector>

#include "risim/channel.hpp"
#include "risim/mpc.hpp"

namespace risim {

// Space-alternating EM extraction of path parameters from a CTF tensor.
//
// Initialization runs successive interference cancellation: coarse matched
// filtering over delay, then arrival/departure azimuth, then Doppler, a
// least-squares polarimetric fit, and subtraction, repeated until the
// residual delay profile falls below the detection threshold or the path
// budget is exhausted. Refinement alternates over the paths, maximizing the
// per-path likelihood one parameter at a time (coarse grid around the
// current value, then golden-section polish); the data log-likelihood never
// decreases.
struct EstimatorConfig {
    int max_paths = 10;
    double tolerance = 1e-4; // relative residual-energy improvement per sweep
    int max_sweeps = 15;
    double delay_grid_bins = 1.0;     // coarse delay step, in units of 1/bandwidth
    double azimuth_grid_deg = 2.0;
    double elevation_grid_deg = 2.0;
    double doppler_span_hz = 500.0;   // search interval is [-span, +span]
    double doppler_grid_hz = 5.0;
    double detection_threshold_db = 10.0; // above the estimated noise floor
    bool search_elevation = false;
    bool search_doppler = true;

    void validate() const;
};

struct PathEstimate {
    double delay_s = 0.0;
    double doppler_hz = 0.0;
    Direction departure;
    Direction arrival;
    Eigen::Matrix2cd gamma = Eigen::Matrix2cd::Zero();
    double power_db = 0.0; // contribution relative to the observation energy
    bool converged = false;
    bool above_threshold = true;
};

std::vector<PathEstimate> initialize_sic(const Ctf& ctf, const ArrayGeometry& tx_array,
                                         const ArrayGeometry& rx_array, const SounderTiming& timing,
                                         const EstimatorConfig& cfg);

std::vector<PathEstimate> sage_refine(const Ctf& ctf, std::vector<PathEstimate> estimates,
                                      const ArrayGeometry& tx_array, const ArrayGeometry& rx_array,
                                      const SounderTiming& timing, const EstimatorConfig& cfg);

// Synthesize the noiseless tensor described by a set of estimates (used for
// residual/energy checks).
Ctf synthesize_estimates(const std::vector<PathEstimate>& estimates, const ArrayGeometry& tx_array,
                         const ArrayGeometry& rx_array, const SounderTiming& timing, const FreqGrid& grid,
                         int n_snapshots, int snapshot_offset);

// Field-wise conversion, dropping estimates flagged below the detection
// threshold.
MpcSet estimates_to_mpcs(const std::vector<PathEstimate>& estimates, int position = 0,
                         RisState state = RisState::off);

// Residual observation energy after subtracting all estimates; the
// log-likelihood of the white-noise model is a negative multiple of this.
double residual_energy(const Ctf& ctf, const std::vector<PathEstimate>& estimates, const ArrayGeometry& tx_array,
                       const ArrayGeometry& rx_array, const SounderTiming& timing);

} // namespace risim
