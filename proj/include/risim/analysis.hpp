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
#include <stdexcept>
#include <vector>

#include "risim/channel.hpp"
#include "risim/mpc.hpp"

namespace risim {

enum class PolMode : unsigned char { vv_only, full_pol };

// Ratio of total path powers, active over inactive, for one position.
// Powers are |gamma_vv|^2 (vv_only) or squared Frobenius norms (full_pol).
// Throws when the inactive set carries no power.
double power_ratio(const MpcSet& on, const MpcSet& off, PolMode mode = PolMode::vv_only);

// Centered moving average with truncated windows at the edges. The window
// must be odd and no longer than the series.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> moving_average(const Eigen::Vector<Scalar, Eigen::Dynamic>& series, int window) {
    if (series.size() == 0)
        throw std::invalid_argument("moving_average: empty series");
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("moving_average: window must be odd and positive");
    if (window > series.size())
        throw std::invalid_argument("moving_average: window longer than the series");
    const Eigen::Index n = series.size();
    const Eigen::Index half = window / 2;
    Eigen::Vector<Scalar, Eigen::Dynamic> out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
        Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + half);
        Scalar acc{};
        for (Eigen::Index k = lo; k <= hi; ++k)
            acc += series(k);
        out(i) = acc / static_cast<Scalar>(hi - lo + 1);
    }
    return out;
}

struct PowerRatioSeries {
    Eigen::VectorXd raw;
    Eigen::VectorXd smoothed;
    int window = 5;
};

// Scale the tensor so the mean per-entry power over all of (f, s, m_t, m_r)
// equals one; removes the large-scale gain before capacity evaluation.
Ctf normalize_ctf(const Ctf& ctf);

// Water-filling power allocation over channel eigenmodes: singular values
// sorted descending, total power P, noise power sigma_n^2. Returns per-mode
// powers satisfying sum P_k = P with the common water level found by
// bisection to 1e-12 * P.
Eigen::VectorXd waterfill(const Eigen::VectorXd& singular_values, double total_power, double noise_power);

// Verify the KKT conditions of a water-filling allocation (used by tests).
bool waterfill_kkt_ok(const Eigen::VectorXd& singular_values, double total_power, double noise_power,
                      const Eigen::VectorXd& alloc, double tol = 1e-9);

// Shannon capacity of a water-filled allocation, bit/s/Hz.
double waterfill_capacity(const Eigen::VectorXd& singular_values, const Eigen::VectorXd& alloc, double noise_power);

// Per-frequency-bin capacity of one snapshot of a (normalized) CTF at the
// given SNR. Noise power density is fixed to 1 (0 dB); the total power per
// bin is the linear SNR. Modes below 1e-12 of the largest singular value do
// not count toward the rank.
Eigen::VectorXd capacity_per_bin(const Ctf& ctf, double snr_db, int snapshot = 0);

struct CapacityStats {
    double mean = 0.0;
    double stddev = 0.0;
};

// Everything the capacity CSVs are written from. Outer index: position,
// inner index: SNR point.
struct CapacityReport {
    std::vector<double> snr_db;
    std::vector<int> positions;
    std::vector<Visibility> visibility;                 // per position
    std::vector<std::vector<CapacityStats>> on, off;    // [position][snr]
    std::vector<std::vector<double>> ratio;             // mean_on / mean_off

    // region summaries, indexed [region][snr] with region 0 = los, 1 = nlos
    std::array<std::vector<double>, 2> region_mean_on, region_mean_off;
    std::array<std::vector<double>, 2> region_mean_std_on, region_mean_std_off;
    std::array<std::vector<double>, 2> region_ratio;
    // relative capacity increase of the active state across the SNR range
    std::array<double, 2> mean_relative_increase{0.0, 0.0};
    std::array<double, 2> max_relative_increase{0.0, 0.0};
    std::array<int, 2> region_count{0, 0};
};

CapacityStats capacity_stats(const Eigen::VectorXd& per_bin);

// Aggregate per-position capacity statistics into the report: per-position
// on/off ratios plus region means over the LOS and NLOS position groups.
CapacityReport region_report(const std::vector<double>& snr_db, const std::vector<int>& positions,
                             const std::vector<Visibility>& visibility,
                             const std::vector<std::vector<CapacityStats>>& on,
                             const std::vector<std::vector<CapacityStats>>& off);

} // namespace risim
