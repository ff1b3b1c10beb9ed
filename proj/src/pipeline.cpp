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

#include "risim/pipeline.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "risim/blocker.hpp"
#include "risim/rng.hpp"
#include "risim/version.hpp"

namespace risim {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("fnv1a64_file: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    return fnv1a64(bytes.data(), bytes.size());
}

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

double to_deg(double rad) { return rad * 180.0 / kPi; }

double amp_db(double amp) { return 20.0 * std::log10(std::max(amp, 1e-150)); }

EstimateRow row_from_mpc(const Mpc& m, int position, RisState state, int id, double total_power_vv) {
    EstimateRow r;
    r.position = position;
    r.state = state;
    r.path_id = id;
    r.delay_ns = m.delay_s * 1e9;
    r.doppler_hz = m.doppler_hz;
    r.aod_az_deg = to_deg(m.departure.azimuth);
    r.aod_el_deg = to_deg(m.departure.elevation);
    r.aoa_az_deg = to_deg(m.arrival.azimuth);
    r.aoa_el_deg = to_deg(m.arrival.elevation);
    r.gamma_vv_db = amp_db(std::abs(m.gamma_vv()));
    r.gamma_vv_arg_deg = to_deg(std::arg(m.gamma_vv()));
    double frac = (total_power_vv > 0.0) ? m.power_vv() / total_power_vv : 0.0;
    r.residual_db = 10.0 * std::log10(std::max(frac, 1e-150));
    r.converged = true;
    return r;
}

struct PositionOutcome {
    MpcSet mpcs;
    std::vector<CapacityStats> caps; // per SNR
    std::vector<EstimateRow> rows;
};

} // namespace

PipelineResult run_pipeline(const Scenario& scenario, const RunOptions& options) {
    Scenario sc = scenario;
    if (options.seed)
        sc.seed = *options.seed;
    if (!options.out_dir.empty())
        sc.out_dir = options.out_dir;
    if (!options.snr_db.empty())
        sc.analysis.snr_db = options.snr_db;
    sc.validate();

    const int n_total = sc.scene.rx_trajectory.n_positions;
    int first = 0, last = n_total - 1;
    if (options.positions) {
        first = options.positions->first;
        last = options.positions->second;
        if (first < 0 || last >= n_total || first > last)
            throw std::invalid_argument("run_pipeline: position range outside the trajectory");
    }

    const bool run_off = options.ris != StateSelection::on;
    const bool run_on = options.ris != StateSelection::off;

    ArrayGeometry txa = sc.tx_array.build(sc.grid.carrier_hz);
    ArrayGeometry rxa = sc.rx_array.build(sc.grid.carrier_hz);
    txa.origin = sc.scene.tx;
    SounderTiming timing = sc.timing();
    const auto rx_positions = trajectory_positions(sc.scene.rx_trajectory);
    const double carrier = sc.grid.carrier_hz;
    const auto& snrs = sc.analysis.snr_db;

    PipelineResult result;
    std::vector<std::array<PositionOutcome, 2>> outcomes;

    std::array<RisConfig, 2> held_config;
    std::array<bool, 2> have_config{false, false};

    for (int p = first; p <= last; ++p) {
        std::array<PositionOutcome, 2> per_state;
        for (int si = 0; si < 2; ++si) {
            RisState state = (si == 1) ? RisState::on : RisState::off;
            if ((state == RisState::on && !run_on) || (state == RisState::off && !run_off))
                continue;
            const char* state_name = (state == RisState::on) ? "ris-on" : "ris-off";
            try {
                const Vec3 rx = rx_positions[static_cast<size_t>(p)];

                // beam configuration, recomputed on the configured cadence
                if (state == RisState::off) {
                    held_config[si] = RisConfig::zeros(sc.scene.ris);
                    have_config[si] = true;
                } else if (!have_config[si] || (p - first) % sc.beam_update_every == 0) {
                    Vec3 est = vision_estimate(sc.scene.vision, rx, sc.scene.ris, mix_seed(sc.seed, p, si, 7));
                    if ((est - sc.scene.ris.center).dot(sc.scene.ris.normal) <= 1e-12)
                        est = rx;
                    held_config[si] =
                        quantize_1bit(ideal_phase_map(sc.scene.ris, sc.scene.tx, est, carrier), sc.scene.ris.phase_states);
                    have_config[si] = true;
                }

                MpcSet raw = scene_to_mpcs(sc.scene, p, state, carrier, sc.materials, mix_seed(sc.seed, p, si, 7),
                                           &held_config[si]);

                MpcSet work;
                std::vector<PathEstimate> ests;
                if (options.estimate) {
                    NoiseModel meas_noise{sc.noise_std, mix_seed(sc.seed, p, si, 1)};
                    Ctf meas = synthesize_ctf(raw, txa, rxa, timing, sc.grid, meas_noise, 1, p);
                    ests = initialize_sic(meas, txa, rxa, timing, sc.estimator);
                    ests = sage_refine(meas, ests, txa, rxa, timing, sc.estimator);
                    work = estimates_to_mpcs(ests, p, state);
                } else {
                    work = raw;
                }

                // virtual blocker / visibility split
                MpcSet final_set = work;
                if (options.nlos_from) {
                    if (p < *options.nlos_from) {
                        final_set.visibility = Visibility::los;
                    } else {
                        if (sc.scene.blocker)
                            final_set = apply_blocker(work, *sc.scene.blocker, sc.scene.tx, rx);
                        std::erase_if(final_set.paths, [](const Mpc& m) { return m.kind == PathKind::los; });
                        final_set.visibility = Visibility::nlos;
                    }
                } else if (sc.scene.blocker) {
                    final_set = apply_blocker(work, *sc.scene.blocker, sc.scene.tx, rx);
                } else {
                    final_set.visibility = final_set.find(PathKind::los) ? Visibility::los : Visibility::nlos;
                }

                // reconstruction and capacity sweep
                NoiseModel recon_noise{sc.noise_std, mix_seed(sc.seed, p, si, 2)};
                Ctf ctf = synthesize_ctf(final_set, txa, rxa, timing, sc.grid, recon_noise, 1, p);
                PositionOutcome& out = per_state[si];
                out.mpcs = final_set;
                out.caps.resize(snrs.size());
                if (ctf.energy() > 0.0) {
                    Ctf norm = normalize_ctf(ctf);
                    for (size_t k = 0; k < snrs.size(); ++k)
                        out.caps[k] = capacity_stats(capacity_per_bin(norm, snrs[k]));
                }

                // estimates.csv rows (post-blocker view)
                if (options.estimate) {
                    int id = 0;
                    for (const auto& e : ests) {
                        if (!e.above_threshold)
                            continue;
                        Mpc m;
                        m.delay_s = e.delay_s;
                        m.doppler_hz = e.doppler_hz;
                        m.departure = e.departure;
                        m.arrival = e.arrival;
                        m.gamma = e.gamma;
                        bool blocked = false;
                        if (options.nlos_from) {
                            blocked = (p >= *options.nlos_from) && sc.scene.blocker &&
                                      mpc_blocked(m, *sc.scene.blocker, sc.scene.tx, rx);
                        } else if (sc.scene.blocker) {
                            blocked = mpc_blocked(m, *sc.scene.blocker, sc.scene.tx, rx);
                        }
                        if (blocked)
                            continue;
                        EstimateRow r = row_from_mpc(m, p, state, id++, work.total_power_vv());
                        r.residual_db = e.power_db;
                        r.converged = e.converged;
                        out.rows.push_back(r);
                    }
                } else {
                    int id = 0;
                    for (const auto& m : final_set.paths)
                        out.rows.push_back(row_from_mpc(m, p, state, id++, final_set.total_power_vv()));
                }
            } catch (const std::exception& e) {
                throw std::runtime_error("position " + std::to_string(p) + ", " + state_name + ": " + e.what());
            }
        }
        outcomes.push_back(std::move(per_state));
        result.positions.push_back(p);
    }

    // visibility per position (from whichever state ran)
    const int vis_src = run_off ? 0 : 1;
    for (const auto& oc : outcomes)
        result.visibility.push_back(oc[vis_src].mpcs.visibility);
    for (auto& oc : outcomes)
        result.mpcs.push_back({std::move(oc[0].mpcs), std::move(oc[1].mpcs)});

    const size_t np = outcomes.size();

    // power ratio series (needs both states)
    if (run_on && run_off) {
        result.ratio_raw.resize(static_cast<Eigen::Index>(np));
        for (size_t i = 0; i < np; ++i)
            result.ratio_raw(static_cast<Eigen::Index>(i)) =
                power_ratio(result.mpcs[i][1], result.mpcs[i][0], sc.analysis.pol);
        int window = std::min<int>(sc.analysis.window, static_cast<int>(np) | 1);
        if (window % 2 == 0)
            --window;
        window = std::max(window, 1);
        result.ratio_smoothed = moving_average<double>(result.ratio_raw, window);
    }

    // capacity report
    {
        std::vector<std::vector<CapacityStats>> on(np), off(np);
        for (size_t i = 0; i < np; ++i) {
            on[i] = run_on ? outcomes[i][1].caps : std::vector<CapacityStats>(snrs.size());
            off[i] = run_off ? outcomes[i][0].caps : std::vector<CapacityStats>(snrs.size());
        }
        result.capacity = region_report(snrs, result.positions, result.visibility, on, off);
    }

    for (const auto& oc : outcomes)
        for (int si : {0, 1})
            for (const auto& r : oc[si].rows)
                result.estimates.push_back(r);

    // ---- outputs ----------------------------------------------------------

    namespace fs = std::filesystem;
    fs::create_directories(sc.out_dir);
    auto open_out = [&](const std::string& name) {
        std::ofstream f(fs::path(sc.out_dir) / name, std::ios::binary);
        if (!f)
            throw std::runtime_error("run_pipeline: cannot write " + name + " in " + sc.out_dir);
        return f;
    };

    {
        std::ofstream f = open_out("estimates.csv");
        f << "position,scenario,path_id,delay_ns,doppler_hz,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg,"
             "gamma_vv_db,gamma_vv_arg_deg,residual_db,converged\n";
        for (const auto& r : result.estimates) {
            f << r.position << ',' << (r.state == RisState::on ? "on" : "off") << ',' << r.path_id << ','
              << fmt(r.delay_ns) << ',' << fmt(r.doppler_hz) << ',' << fmt(r.aod_az_deg) << ',' << fmt(r.aod_el_deg)
              << ',' << fmt(r.aoa_az_deg) << ',' << fmt(r.aoa_el_deg) << ',' << fmt(r.gamma_vv_db) << ','
              << fmt(r.gamma_vv_arg_deg) << ',' << fmt(r.residual_db) << ',' << (r.converged ? 1 : 0) << "\n";
        }
    }
    {
        std::ofstream f = open_out("power_ratio.csv");
        f << "position,raw,smoothed\n";
        if (run_on && run_off)
            for (size_t i = 0; i < np; ++i)
                f << result.positions[i] << ',' << fmt(result.ratio_raw(static_cast<Eigen::Index>(i))) << ','
                  << fmt(result.ratio_smoothed(static_cast<Eigen::Index>(i))) << "\n";
    }
    {
        std::ofstream f = open_out("capacity.csv");
        f << "position,snr_db,mean,std,ratio\n";
        for (size_t i = 0; i < np; ++i) {
            for (size_t k = 0; k < snrs.size(); ++k) {
                const CapacityStats& cs = run_on ? result.capacity.on[i][k] : result.capacity.off[i][k];
                double ratio = (run_on && run_off) ? result.capacity.ratio[i][k]
                                                   : std::numeric_limits<double>::quiet_NaN();
                f << result.positions[i] << ',' << fmt(snrs[k]) << ',' << fmt(cs.mean) << ',' << fmt(cs.stddev) << ','
                  << fmt(ratio) << "\n";
            }
        }
    }
    {
        std::ofstream f = open_out("region_capacity.csv");
        f << "region,state,snr_db,mean,mean_std\n";
        for (int region = 0; region < 2; ++region) {
            if (result.capacity.region_count[region] == 0)
                continue;
            const char* rname = (region == 0) ? "los" : "nlos";
            for (int si : {0, 1}) {
                if ((si == 0 && !run_off) || (si == 1 && !run_on))
                    continue;
                for (size_t k = 0; k < snrs.size(); ++k) {
                    double mean = si ? result.capacity.region_mean_on[region][k]
                                     : result.capacity.region_mean_off[region][k];
                    double mstd = si ? result.capacity.region_mean_std_on[region][k]
                                     : result.capacity.region_mean_std_off[region][k];
                    f << rname << ',' << (si ? "on" : "off") << ',' << fmt(snrs[k]) << ',' << fmt(mean) << ','
                      << fmt(mstd) << "\n";
                }
            }
        }
    }

    result.files = {"estimates.csv", "power_ratio.csv", "capacity.csv", "region_capacity.csv"};

    {
        std::ofstream f = open_out("manifest.csv");
        f << "kind,name,value\n";
        f << "meta,version," << kVersion << "\n";
        std::string canon = serialize_scenario(sc);
        f << "meta,config_hash," << hex64(fnv1a64(canon.data(), canon.size())) << "\n";
        f << "meta,seed," << sc.seed << "\n";
        f << "meta,mode," << (options.estimate ? "estimate" : "oracle") << "\n";
        f << "meta,ris,"
          << (options.ris == StateSelection::both ? "both" : options.ris == StateSelection::on ? "on" : "off") << "\n";
        f << "meta,positions," << first << "-" << last << "\n";
        f << "meta,nlos_from," << (options.nlos_from ? std::to_string(*options.nlos_from) : std::string("none"))
          << "\n";
        std::string snr_str;
        for (size_t k = 0; k < snrs.size(); ++k)
            snr_str += (k ? "," : "") + fmt(snrs[k]);
        f << "meta,snr,\"" << snr_str << "\"\n";
        for (const auto& name : result.files) {
            std::uint64_t h = fnv1a64_file((fs::path(sc.out_dir) / name).string());
            f << "file," << name << "," << hex64(h) << "\n";
        }
    }
    result.files.push_back("manifest.csv");
    return result;
}

} // namespace risim
