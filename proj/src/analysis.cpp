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

#include "risim/analysis.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risim {

double power_ratio(const MpcSet& on, const MpcSet& off, PolMode mode) {
    double num = (mode == PolMode::vv_only) ? on.total_power_vv() : on.total_power_full();
    double den = (mode == PolMode::vv_only) ? off.total_power_vv() : off.total_power_full();
    if (!(den > 0.0))
        throw std::domain_error("power_ratio: inactive set carries no power (undefined ratio)");
    return num / den;
}

Ctf normalize_ctf(const Ctf& ctf) {
    double e = ctf.energy();
    if (!(e > 0.0))
        throw std::domain_error("normalize_ctf: all-zero tensor");
    double scale = std::sqrt(static_cast<double>(ctf.size()) / e);
    Ctf out = ctf;
    for (auto& v : out.data)
        v *= scale;
    return out;
}

Eigen::VectorXd waterfill(const Eigen::VectorXd& singular_values, double total_power, double noise_power) {
    const Eigen::Index n = singular_values.size();
    if (n == 0)
        throw std::invalid_argument("waterfill: empty singular value list");
    if (!(total_power > 0.0) || !(noise_power > 0.0))
        throw std::invalid_argument("waterfill: power and noise must be positive");
    for (Eigen::Index k = 0; k < n; ++k) {
        if (!(singular_values(k) > 0.0))
            throw std::invalid_argument("waterfill: singular values must be positive");
        if (k > 0 && singular_values(k) > singular_values(k - 1) * (1.0 + 1e-12))
            throw std::invalid_argument("waterfill: singular values must be sorted descending");
    }

    Eigen::VectorXd inv_gain(n); // noise_power / sigma_k^2, ascending
    for (Eigen::Index k = 0; k < n; ++k)
        inv_gain(k) = noise_power / (singular_values(k) * singular_values(k));

    if (n == 1) {
        Eigen::VectorXd alloc(1);
        alloc(0) = total_power;
        return alloc;
    }

    auto allocated = [&](double level) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < n; ++k)
            acc += std::max(0.0, level - inv_gain(k));
        return acc;
    };

    double lo = inv_gain(0);
    double hi = inv_gain(0) + total_power;
    while (allocated(hi) < total_power)
        hi += total_power;
    for (int it = 0; it < 200 && (hi - lo) > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        double a = allocated(mid);
        if (std::abs(a - total_power) <= 1e-12 * total_power) {
            lo = hi = mid;
            break;
        }
        if (a < total_power)
            lo = mid;
        else
            hi = mid;
    }
    double level = 0.5 * (lo + hi);

    Eigen::VectorXd alloc(n);
    for (Eigen::Index k = 0; k < n; ++k)
        alloc(k) = std::max(0.0, level - inv_gain(k));
    // distribute the bisection residue across active modes so the budget is
    // met exactly
    double used = alloc.sum();
    int active = 0;
    for (Eigen::Index k = 0; k < n; ++k)
        if (alloc(k) > 0.0)
            ++active;
    if (active > 0) {
        double adjust = (total_power - used) / active;
        for (Eigen::Index k = 0; k < n; ++k)
            if (alloc(k) > 0.0)
                alloc(k) = std::max(0.0, alloc(k) + adjust);
    }
    return alloc;
}

bool waterfill_kkt_ok(const Eigen::VectorXd& singular_values, double total_power, double noise_power,
                      const Eigen::VectorXd& alloc, double tol) {
    if (alloc.size() != singular_values.size())
        return false;
    double budget = alloc.sum();
    if (std::abs(budget - total_power) > tol * std::max(1.0, total_power))
        return false;
    // active modes share one water level; inactive modes sit above it
    double level = -1.0;
    for (Eigen::Index k = 0; k < alloc.size(); ++k) {
        if (alloc(k) < 0.0)
            return false;
        double inv_gain = noise_power / (singular_values(k) * singular_values(k));
        if (alloc(k) > tol) {
            double lk = alloc(k) + inv_gain;
            if (level < 0.0)
                level = lk;
            else if (std::abs(lk - level) > tol * std::max(1.0, level))
                return false;
        }
    }
    if (level < 0.0)
        return false;
    for (Eigen::Index k = 0; k < alloc.size(); ++k) {
        double inv_gain = noise_power / (singular_values(k) * singular_values(k));
        if (alloc(k) <= tol && inv_gain < level * (1.0 - 1e-9))
            return false;
    }
    return true;
}

double waterfill_capacity(const Eigen::VectorXd& singular_values, const Eigen::VectorXd& alloc, double noise_power) {
    double c = 0.0;
    for (Eigen::Index k = 0; k < singular_values.size(); ++k)
        c += std::log2(1.0 + alloc(k) * singular_values(k) * singular_values(k) / noise_power);
    return c;
}

Eigen::VectorXd capacity_per_bin(const Ctf& ctf, double snr_db, int snapshot) {
    if (snapshot < 0 || snapshot >= ctf.n_snapshots)
        throw std::out_of_range("capacity_per_bin: snapshot index out of range");
    const double noise_power = 1.0;
    const double total_power = std::pow(10.0, snr_db / 10.0) * noise_power;
    Eigen::VectorXd out(ctf.grid.n_bins);
    Eigen::MatrixXcd h(ctf.n_tx, ctf.n_rx);
    for (int f = 0; f < ctf.grid.n_bins; ++f) {
        h = ctf.slice(f, snapshot);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        const Eigen::VectorXd& sv = svd.singularValues();
        int rank = 0;
        for (Eigen::Index k = 0; k < sv.size(); ++k)
            if (sv(k) > 1e-12 * sv(0))
                ++rank;
        if (rank == 0) {
            out(f) = 0.0;
            continue;
        }
        Eigen::VectorXd kept = sv.head(rank);
        Eigen::VectorXd alloc = waterfill(kept, total_power, noise_power);
        out(f) = waterfill_capacity(kept, alloc, noise_power);
    }
    return out;
}

CapacityStats capacity_stats(const Eigen::VectorXd& per_bin) {
    CapacityStats s;
    s.mean = per_bin.mean();
    double var = (per_bin.array() - s.mean).square().sum() / per_bin.size();
    s.stddev = std::sqrt(var);
    return s;
}

CapacityReport region_report(const std::vector<double>& snr_db, const std::vector<int>& positions,
                             const std::vector<Visibility>& visibility,
                             const std::vector<std::vector<CapacityStats>>& on,
                             const std::vector<std::vector<CapacityStats>>& off) {
    const size_t np = positions.size();
    const size_t ns = snr_db.size();
    if (visibility.size() != np || on.size() != np || off.size() != np)
        throw std::invalid_argument("region_report: inconsistent input sizes");

    CapacityReport rep;
    rep.snr_db = snr_db;
    rep.positions = positions;
    rep.visibility = visibility;
    rep.on = on;
    rep.off = off;
    rep.ratio.assign(np, std::vector<double>(ns, 0.0));
    for (size_t p = 0; p < np; ++p)
        for (size_t s = 0; s < ns; ++s)
            rep.ratio[p][s] = (off[p][s].mean > 0.0) ? on[p][s].mean / off[p][s].mean
                                                     : std::numeric_limits<double>::quiet_NaN();

    for (int region = 0; region < 2; ++region) {
        rep.region_mean_on[region].assign(ns, 0.0);
        rep.region_mean_off[region].assign(ns, 0.0);
        rep.region_mean_std_on[region].assign(ns, 0.0);
        rep.region_mean_std_off[region].assign(ns, 0.0);
        rep.region_ratio[region].assign(ns, 0.0);
        int count = 0;
        for (size_t p = 0; p < np; ++p)
            if (static_cast<int>(visibility[p]) == region)
                ++count;
        rep.region_count[region] = count;
        if (count == 0)
            continue;
        for (size_t s = 0; s < ns; ++s) {
            double mon = 0.0, moff = 0.0, son = 0.0, soff = 0.0;
            for (size_t p = 0; p < np; ++p) {
                if (static_cast<int>(visibility[p]) != region)
                    continue;
                mon += on[p][s].mean;
                moff += off[p][s].mean;
                son += on[p][s].stddev;
                soff += off[p][s].stddev;
            }
            rep.region_mean_on[region][s] = mon / count;
            rep.region_mean_off[region][s] = moff / count;
            rep.region_mean_std_on[region][s] = son / count;
            rep.region_mean_std_off[region][s] = soff / count;
            rep.region_ratio[region][s] =
                (moff > 0.0) ? mon / moff : std::numeric_limits<double>::quiet_NaN();
        }
        double acc = 0.0, best = -std::numeric_limits<double>::infinity();
        for (size_t s = 0; s < ns; ++s) {
            double inc = rep.region_ratio[region][s] - 1.0;
            acc += inc;
            best = std::max(best, inc);
        }
        rep.mean_relative_increase[region] = acc / static_cast<double>(ns);
        rep.max_relative_increase[region] = best;
    }
    return rep;
}

} // namespace risim
