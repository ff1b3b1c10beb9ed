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

#include "risim/sage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace risim {

void EstimatorConfig::validate() const {
    if (max_paths < 1 || max_sweeps < 1)
        throw std::invalid_argument("EstimatorConfig: path and sweep budgets must be positive");
    if (!(tolerance > 0.0))
        throw std::invalid_argument("EstimatorConfig: tolerance must be positive");
    if (!(delay_grid_bins > 0.0) || !(azimuth_grid_deg > 0.0) || !(elevation_grid_deg > 0.0))
        throw std::invalid_argument("EstimatorConfig: grid steps must be positive");
    if (!(doppler_span_hz > 0.0) || !(doppler_grid_hz > 0.0))
        throw std::invalid_argument("EstimatorConfig: Doppler search parameters must be positive");
    if (!(detection_threshold_db > 0.0))
        throw std::invalid_argument("EstimatorConfig: detection threshold must be positive (dB)");
}

namespace {

constexpr double kGoldenRatio = 0.61803398874989484820;

// golden-section maximization of a (locally) unimodal objective on [lo, hi]
double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters, double* best_val) {
    double a = lo, b = hi;
    double x1 = b - kGoldenRatio * (b - a);
    double x2 = a + kGoldenRatio * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGoldenRatio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGoldenRatio * (b - a);
            f1 = f(x1);
        }
    }
    double x = (f1 > f2) ? x1 : x2;
    if (best_val)
        *best_val = std::max(f1, f2);
    return x;
}

struct PathParams {
    double tau = 0.0;
    double nu = 0.0;
    Direction dep;
    Direction arr;
    Eigen::Matrix2cd gamma = Eigen::Matrix2cd::Zero();
};

PathParams to_params(const PathEstimate& e) {
    return {e.delay_s, e.doppler_hz, e.departure, e.arrival, e.gamma};
}

void from_params(const PathParams& p, PathEstimate& e) {
    e.delay_s = p.tau;
    e.doppler_hz = p.nu;
    e.departure = p.dep;
    e.arrival = p.arr;
    e.gamma = p.gamma;
}

double tensor_energy(const std::vector<cplx>& v) {
    double e = 0.0;
    for (const auto& x : v)
        e += std::norm(x);
    return e;
}

// Maximum-likelihood engine around one observation tensor. Internally the
// tensor is held frequency-fastest, (s, m_t, m_r, f), so the per-coordinate
// matched-filter reductions stream contiguous memory; one objective
// evaluation inside a scan costs far less than a full tensor pass.
class Engine {
  public:
    Engine(const Ctf& obs, const ArrayGeometry& txa, const ArrayGeometry& rxa, const SounderTiming& tm,
           const EstimatorConfig& cfg)
        : grid_(obs.grid), txa_(txa), rxa_(rxa), tm_(tm), cfg_(cfg) {
        nf_ = obs.grid.n_bins;
        ns_ = obs.n_snapshots;
        ntx_ = obs.n_tx;
        nrx_ = obs.n_rx;
        if (ntx_ != txa.size() || nrx_ != rxa.size())
            throw std::invalid_argument("sage: tensor dimensions do not match the arrays");
        if (tm.n_tx != ntx_ || tm.n_rx != nrx_)
            throw std::invalid_argument("sage: timing channel counts do not match the tensor");
        pairs_ = static_cast<std::size_t>(ntx_) * nrx_;
        slab_ = static_cast<std::size_t>(ns_) * pairs_;
        total_ = static_cast<std::size_t>(nf_) * slab_;
        f0_ = obs.grid.bin_hz(0);
        df_ = obs.grid.spacing_hz();
        fc_ = obs.grid.carrier_hz;
        snapshot_offset_ = obs.snapshot_offset;
        for (int m = 0; m < ntx_; ++m)
            tx_pol_[static_cast<int>(txa.elements[static_cast<size_t>(m)].pol)].push_back(m);
        for (int m = 0; m < nrx_; ++m)
            rx_pol_[static_cast<int>(rxa.elements[static_cast<size_t>(m)].pol)].push_back(m);
        g_t_.resize(static_cast<size_t>(ntx_));
        d_t_.resize(static_cast<size_t>(ntx_));
        g_r_.resize(static_cast<size_t>(nrx_));
        d_r_.resize(static_cast<size_t>(nrx_));
        bandwidth_ = obs.grid.bandwidth_hz;
    }

    std::size_t total() const { return total_; }
    std::size_t slab() const { return slab_; }
    int nf() const { return nf_; }
    double bandwidth() const { return bandwidth_; }

    // (f, s, mt, mr) row-major -> (s, mt, mr, f)
    std::vector<cplx> transpose_in(const std::vector<cplx>& data) const {
        std::vector<cplx> out(total_);
        for (int f = 0; f < nf_; ++f) {
            const cplx* src = data.data() + static_cast<std::size_t>(f) * slab_;
            for (std::size_t i = 0; i < slab_; ++i)
                out[i * nf_ + f] = src[i];
        }
        return out;
    }

    // ---- element projections ---------------------------------------------

    void project_tx(const Direction& d, std::vector<double>& g, std::vector<double>& del) const {
        Vec3 u = txa_.rotation.transpose() * d.unit();
        for (int m = 0; m < ntx_; ++m) {
            const ArrayElement& el = txa_.elements[static_cast<size_t>(m)];
            double ca = u.dot(el.boresight);
            g[static_cast<size_t>(m)] =
                (txa_.pattern_exponent > 0.0) ? ((ca > 0.0) ? std::pow(ca, txa_.pattern_exponent) : 0.0) : 1.0;
            del[static_cast<size_t>(m)] = u.dot(el.position) / kSpeedOfLight;
        }
    }

    void project_rx(const Direction& d, std::vector<double>& g, std::vector<double>& del) const {
        Vec3 u = rxa_.rotation.transpose() * d.unit();
        for (int m = 0; m < nrx_; ++m) {
            const ArrayElement& el = rxa_.elements[static_cast<size_t>(m)];
            double ca = u.dot(el.boresight);
            g[static_cast<size_t>(m)] =
                (rxa_.pattern_exponent > 0.0) ? ((ca > 0.0) ? std::pow(ca, rxa_.pattern_exponent) : 0.0) : 1.0;
            del[static_cast<size_t>(m)] = u.dot(el.position) / kSpeedOfLight;
        }
    }

    // e^{+j 2 pi nu t(s, mt, mr)} over the slab, built from two exponentials
    void doppler_phasors(double nu, std::vector<cplx>& out) const {
        out.resize(slab_);
        cplx step_snap = std::polar(1.0, kTwoPi * nu * tm_.snapshot_time_s);
        cplx step_sw = std::polar(1.0, kTwoPi * nu * tm_.switching_time_s);
        cplx snap_ph = std::polar(1.0, kTwoPi * nu * tm_.snapshot_time_s * snapshot_offset_);
        for (int s = 0; s < ns_; ++s) {
            cplx ph = snap_ph;
            for (std::size_t k = 0; k < pairs_; ++k) {
                std::size_t pair;
                if (tm_.order == SwitchOrder::rx_fastest) {
                    pair = k;
                } else {
                    int mt = static_cast<int>(k % static_cast<std::size_t>(ntx_));
                    int mr = static_cast<int>(k / static_cast<std::size_t>(ntx_));
                    pair = static_cast<std::size_t>(mt) * nrx_ + mr;
                }
                out[static_cast<std::size_t>(s) * pairs_ + pair] = ph;
                ph *= step_sw;
            }
            snap_ph *= step_snap;
        }
    }

    // ---- reductions against a (transposed) tensor -------------------------

    using PolVec = std::array<Eigen::VectorXcd, 4>; // index p*2+q (rx pol, tx pol)

    // G_pq(f) = sum_{s, mt in q, mr in p} X g_t g_r e^{-j2pi f (d_t+d_r)} e^{+j2pi nu t}
    void reduce_delay(const std::vector<cplx>& x, const PathParams& par, PolVec& g_out) {
        project_tx(par.dep, g_t_, d_t_);
        project_rx(par.arr, g_r_, d_r_);
        doppler_phasors(par.nu, dopp_);
        for (int pq = 0; pq < 4; ++pq)
            g_out[pq] = Eigen::VectorXcd::Zero(nf_);
        for (int mt = 0; mt < ntx_; ++mt) {
            int q = static_cast<int>(txa_.elements[static_cast<size_t>(mt)].pol);
            double gt = g_t_[static_cast<size_t>(mt)];
            if (gt == 0.0)
                continue;
            for (int mr = 0; mr < nrx_; ++mr) {
                double w = gt * g_r_[static_cast<size_t>(mr)];
                if (w == 0.0)
                    continue;
                int p = static_cast<int>(rxa_.elements[static_cast<size_t>(mr)].pol);
                Eigen::VectorXcd& g = g_out[p * 2 + q];
                std::size_t pair = static_cast<std::size_t>(mt) * nrx_ + mr;
                double della = d_t_[static_cast<size_t>(mt)] + d_r_[static_cast<size_t>(mr)];
                cplx ph0 = std::polar(w, -kTwoPi * f0_ * della);
                cplx step = std::polar(1.0, -kTwoPi * df_ * della);
                for (int s = 0; s < ns_; ++s) {
                    std::size_t i = static_cast<std::size_t>(s) * pairs_ + pair;
                    const cplx* src = x.data() + i * nf_;
                    cplx phf = ph0 * dopp_[i];
                    for (int f = 0; f < nf_; ++f) {
                        g(f) += src[f] * phf;
                        phf *= step;
                    }
                }
            }
        }
    }

    double obj_from_delay(const PolVec& g, const std::array<double, 4>& norms, double tau) const {
        double obj = 0.0;
        for (int pq = 0; pq < 4; ++pq) {
            if (norms[pq] <= 0.0)
                continue;
            cplx acc{0.0, 0.0};
            cplx ph = std::polar(1.0, kTwoPi * f0_ * tau);
            cplx step = std::polar(1.0, kTwoPi * df_ * tau);
            const Eigen::VectorXcd& gv = g[pq];
            for (int f = 0; f < nf_; ++f) {
                acc += gv(f) * ph;
                ph *= step;
            }
            obj += std::norm(acc) / norms[pq];
        }
        return obj;
    }

    // W_q(f, mr) = sum_{s, mt in q} X g_t e^{+j2pi f (tau - d_t)} e^{+j2pi nu t}
    void reduce_arrival(const std::vector<cplx>& x, const PathParams& par, std::array<Eigen::MatrixXcd, 2>& w_out) {
        project_tx(par.dep, g_t_, d_t_);
        doppler_phasors(par.nu, dopp_);
        for (int q = 0; q < 2; ++q)
            w_out[q] = Eigen::MatrixXcd::Zero(nf_, nrx_);
        for (int mt = 0; mt < ntx_; ++mt) {
            int q = static_cast<int>(txa_.elements[static_cast<size_t>(mt)].pol);
            double gt = g_t_[static_cast<size_t>(mt)];
            if (gt == 0.0)
                continue;
            double della = par.tau - d_t_[static_cast<size_t>(mt)];
            cplx ph0 = std::polar(gt, kTwoPi * f0_ * della);
            cplx step = std::polar(1.0, kTwoPi * df_ * della);
            Eigen::MatrixXcd& w = w_out[q];
            for (int mr = 0; mr < nrx_; ++mr) {
                std::size_t pair = static_cast<std::size_t>(mt) * nrx_ + mr;
                cplx* col = w.col(mr).data();
                for (int s = 0; s < ns_; ++s) {
                    std::size_t i = static_cast<std::size_t>(s) * pairs_ + pair;
                    const cplx* src = x.data() + i * nf_;
                    cplx phf = ph0 * dopp_[i];
                    for (int f = 0; f < nf_; ++f) {
                        col[f] += src[f] * phf;
                        phf *= step;
                    }
                }
            }
        }
    }

    double obj_from_arrival(const std::array<Eigen::MatrixXcd, 2>& w, const std::array<double, 2>& tx_pat_norm,
                            const Direction& cand) {
        project_rx(cand, g_r_, d_r_);
        std::array<double, 2> rx_pat_norm{0.0, 0.0};
        for (int mr = 0; mr < nrx_; ++mr) {
            int p = static_cast<int>(rxa_.elements[static_cast<size_t>(mr)].pol);
            rx_pat_norm[p] += g_r_[static_cast<size_t>(mr)] * g_r_[static_cast<size_t>(mr)];
        }
        double obj = 0.0;
        for (int q = 0; q < 2; ++q) {
            if (tx_pat_norm[q] <= 0.0)
                continue;
            for (int p = 0; p < 2; ++p) {
                if (rx_pat_norm[p] <= 0.0)
                    continue;
                cplx acc{0.0, 0.0};
                for (int mr : rx_pol_[p]) {
                    double gr = g_r_[static_cast<size_t>(mr)];
                    if (gr == 0.0)
                        continue;
                    double della = d_r_[static_cast<size_t>(mr)];
                    cplx ph = std::polar(gr, -kTwoPi * f0_ * della);
                    cplx step = std::polar(1.0, -kTwoPi * df_ * della);
                    const cplx* col = w[q].col(mr).data();
                    for (int f = 0; f < nf_; ++f) {
                        acc += col[f] * ph;
                        ph *= step;
                    }
                }
                double n2 = static_cast<double>(nf_) * ns_ * tx_pat_norm[q] * rx_pat_norm[p];
                obj += std::norm(acc) / n2;
            }
        }
        return obj;
    }

    // V_p(f, mt) = sum_{s, mr in p} X g_r e^{+j2pi f (tau - d_r)} e^{+j2pi nu t}
    void reduce_departure(const std::vector<cplx>& x, const PathParams& par, std::array<Eigen::MatrixXcd, 2>& v_out) {
        project_rx(par.arr, g_r_, d_r_);
        doppler_phasors(par.nu, dopp_);
        for (int p = 0; p < 2; ++p)
            v_out[p] = Eigen::MatrixXcd::Zero(nf_, ntx_);
        for (int mt = 0; mt < ntx_; ++mt) {
            for (int mr = 0; mr < nrx_; ++mr) {
                int p = static_cast<int>(rxa_.elements[static_cast<size_t>(mr)].pol);
                double gr = g_r_[static_cast<size_t>(mr)];
                if (gr == 0.0)
                    continue;
                double della = par.tau - d_r_[static_cast<size_t>(mr)];
                cplx ph0 = std::polar(gr, kTwoPi * f0_ * della);
                cplx step = std::polar(1.0, kTwoPi * df_ * della);
                std::size_t pair = static_cast<std::size_t>(mt) * nrx_ + mr;
                cplx* col = v_out[p].col(mt).data();
                for (int s = 0; s < ns_; ++s) {
                    std::size_t i = static_cast<std::size_t>(s) * pairs_ + pair;
                    const cplx* src = x.data() + i * nf_;
                    cplx phf = ph0 * dopp_[i];
                    for (int f = 0; f < nf_; ++f) {
                        col[f] += src[f] * phf;
                        phf *= step;
                    }
                }
            }
        }
    }

    double obj_from_departure(const std::array<Eigen::MatrixXcd, 2>& v, const std::array<double, 2>& rx_pat_norm,
                              const Direction& cand) {
        project_tx(cand, g_t_, d_t_);
        std::array<double, 2> tx_pat_norm{0.0, 0.0};
        for (int mt = 0; mt < ntx_; ++mt) {
            int q = static_cast<int>(txa_.elements[static_cast<size_t>(mt)].pol);
            tx_pat_norm[q] += g_t_[static_cast<size_t>(mt)] * g_t_[static_cast<size_t>(mt)];
        }
        double obj = 0.0;
        for (int p = 0; p < 2; ++p) {
            if (rx_pat_norm[p] <= 0.0)
                continue;
            for (int q = 0; q < 2; ++q) {
                if (tx_pat_norm[q] <= 0.0)
                    continue;
                cplx acc{0.0, 0.0};
                for (int mt : tx_pol_[q]) {
                    double gt = g_t_[static_cast<size_t>(mt)];
                    if (gt == 0.0)
                        continue;
                    double della = d_t_[static_cast<size_t>(mt)];
                    cplx ph = std::polar(gt, -kTwoPi * f0_ * della);
                    cplx step = std::polar(1.0, -kTwoPi * df_ * della);
                    const cplx* col = v[p].col(mt).data();
                    for (int f = 0; f < nf_; ++f) {
                        acc += col[f] * ph;
                        ph *= step;
                    }
                }
                double n2 = static_cast<double>(nf_) * ns_ * tx_pat_norm[q] * rx_pat_norm[p];
                obj += std::norm(acc) / n2;
            }
        }
        return obj;
    }

    // U(s, mt, mr) = g_t g_r sum_f X e^{+j2pi f tau_eff}
    void reduce_doppler(const std::vector<cplx>& x, const PathParams& par, std::vector<cplx>& u_out,
                        std::array<double, 4>& norms) {
        project_tx(par.dep, g_t_, d_t_);
        project_rx(par.arr, g_r_, d_r_);
        norms = pair_norms();
        u_out.assign(slab_, cplx{0.0, 0.0});
        for (int mt = 0; mt < ntx_; ++mt) {
            double gt = g_t_[static_cast<size_t>(mt)];
            if (gt == 0.0)
                continue;
            for (int mr = 0; mr < nrx_; ++mr) {
                double w = gt * g_r_[static_cast<size_t>(mr)];
                if (w == 0.0)
                    continue;
                std::size_t pair = static_cast<std::size_t>(mt) * nrx_ + mr;
                double tau_eff = par.tau - d_t_[static_cast<size_t>(mt)] - d_r_[static_cast<size_t>(mr)];
                cplx ph0 = std::polar(w, kTwoPi * f0_ * tau_eff);
                cplx step = std::polar(1.0, kTwoPi * df_ * tau_eff);
                for (int s = 0; s < ns_; ++s) {
                    std::size_t i = static_cast<std::size_t>(s) * pairs_ + pair;
                    const cplx* src = x.data() + i * nf_;
                    cplx acc{0.0, 0.0};
                    cplx phf = ph0;
                    for (int f = 0; f < nf_; ++f) {
                        acc += src[f] * phf;
                        phf *= step;
                    }
                    u_out[i] = acc;
                }
            }
        }
    }

    double obj_from_doppler(const std::vector<cplx>& u, const std::array<double, 4>& norms, double nu) {
        doppler_phasors(nu, dopp_);
        std::array<cplx, 4> acc{};
        for (int mt = 0; mt < ntx_; ++mt) {
            int q = static_cast<int>(txa_.elements[static_cast<size_t>(mt)].pol);
            for (int mr = 0; mr < nrx_; ++mr) {
                int p = static_cast<int>(rxa_.elements[static_cast<size_t>(mr)].pol);
                std::size_t pair = static_cast<std::size_t>(mt) * nrx_ + mr;
                for (int s = 0; s < ns_; ++s) {
                    std::size_t i = static_cast<std::size_t>(s) * pairs_ + pair;
                    acc[p * 2 + q] += u[i] * dopp_[i];
                }
            }
        }
        double obj = 0.0;
        for (int pq = 0; pq < 4; ++pq)
            if (norms[pq] > 0.0)
                obj += std::norm(acc[pq]) / norms[pq];
        return obj;
    }

    // exact least-squares polarimetric coefficients against the tensor x
    void gamma_ls(const std::vector<cplx>& x, PathParams& par) {
        PolVec g;
        reduce_delay(x, par, g);
        std::array<double, 4> norms = pair_norms();
        par.gamma.setZero();
        for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) {
                int pq = p * 2 + q;
                if (norms[pq] <= 0.0)
                    continue;
                cplx proj{0.0, 0.0};
                cplx ph = std::polar(1.0, kTwoPi * f0_ * par.tau);
                cplx step = std::polar(1.0, kTwoPi * df_ * par.tau);
                for (int f = 0; f < nf_; ++f) {
                    proj += g[pq](f) * ph;
                    ph *= step;
                }
                par.gamma(p, q) = proj / norms[pq];
            }
        }
    }

    // ||X_pq||^2 for the projections currently loaded in g_t_ / g_r_
    std::array<double, 4> pair_norms() const {
        std::array<double, 2> tn{0.0, 0.0}, rn{0.0, 0.0};
        for (int mt = 0; mt < ntx_; ++mt)
            tn[static_cast<int>(txa_.elements[static_cast<size_t>(mt)].pol)] +=
                g_t_[static_cast<size_t>(mt)] * g_t_[static_cast<size_t>(mt)];
        for (int mr = 0; mr < nrx_; ++mr)
            rn[static_cast<int>(rxa_.elements[static_cast<size_t>(mr)].pol)] +=
                g_r_[static_cast<size_t>(mr)] * g_r_[static_cast<size_t>(mr)];
        std::array<double, 4> out;
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
                out[p * 2 + q] = static_cast<double>(nf_) * ns_ * tn[q] * rn[p];
        return out;
    }

    // noiseless path tensor in the transposed layout
    void synth(const PathParams& par, std::vector<cplx>& out) {
        out.assign(total_, cplx{0.0, 0.0});
        project_tx(par.dep, g_t_, d_t_);
        project_rx(par.arr, g_r_, d_r_);
        doppler_phasors(par.nu, dopp_);
        for (int mt = 0; mt < ntx_; ++mt) {
            int q = static_cast<int>(txa_.elements[static_cast<size_t>(mt)].pol);
            double gt = g_t_[static_cast<size_t>(mt)];
            for (int mr = 0; mr < nrx_; ++mr) {
                int p = static_cast<int>(rxa_.elements[static_cast<size_t>(mr)].pol);
                cplx w = par.gamma(p, q) * gt * g_r_[static_cast<size_t>(mr)];
                if (w == cplx{0.0, 0.0})
                    continue;
                std::size_t pair = static_cast<std::size_t>(mt) * nrx_ + mr;
                double tau_eff = par.tau - d_t_[static_cast<size_t>(mt)] - d_r_[static_cast<size_t>(mr)];
                cplx base0 = w * std::polar(1.0, -kTwoPi * f0_ * tau_eff);
                cplx rho = std::polar(1.0, -kTwoPi * df_ * tau_eff);
                for (int s = 0; s < ns_; ++s) {
                    std::size_t i = static_cast<std::size_t>(s) * pairs_ + pair;
                    cplx phf = base0 * std::conj(dopp_[i]);
                    cplx* dst = out.data() + i * nf_;
                    for (int f = 0; f < nf_; ++f) {
                        dst[f] = phf;
                        phf *= rho;
                    }
                }
            }
        }
    }

    // ---- coordinate updates ------------------------------------------------

    void refine_circuit(const std::vector<cplx>& x, PathParams& par) {
        update_delay(x, par);
        update_departure_azimuth(x, par);
        update_arrival_azimuth(x, par);
        if (cfg_.search_elevation) {
            update_departure_elevation(x, par);
            update_arrival_elevation(x, par);
        }
        if (cfg_.search_doppler)
            update_doppler(x, par);
        gamma_ls(x, par);
    }

    void update_delay(const std::vector<cplx>& x, PathParams& par) {
        PolVec g;
        reduce_delay(x, par, g);
        std::array<double, 4> norms = pair_norms();
        double step = cfg_.delay_grid_bins / bandwidth_;
        auto obj = [&](double tau) { return obj_from_delay(g, norms, tau); };
        par.tau = std::max(0.0, scan_coordinate(obj, par.tau, step, 0.0));
    }

    void update_arrival_azimuth(const std::vector<cplx>& x, PathParams& par) {
        std::array<Eigen::MatrixXcd, 2> w;
        reduce_arrival(x, par, w);
        std::array<double, 2> txn = tx_pattern_norms();
        double step = cfg_.azimuth_grid_deg * kPi / 180.0;
        auto obj = [&](double az) { return obj_from_arrival(w, txn, Direction{wrap_two_pi(az), par.arr.elevation}); };
        par.arr.azimuth = wrap_two_pi(scan_coordinate(obj, par.arr.azimuth, step));
    }

    void update_departure_azimuth(const std::vector<cplx>& x, PathParams& par) {
        std::array<Eigen::MatrixXcd, 2> v;
        reduce_departure(x, par, v);
        std::array<double, 2> rxn = rx_pattern_norms();
        double step = cfg_.azimuth_grid_deg * kPi / 180.0;
        auto obj = [&](double az) { return obj_from_departure(v, rxn, Direction{wrap_two_pi(az), par.dep.elevation}); };
        par.dep.azimuth = wrap_two_pi(scan_coordinate(obj, par.dep.azimuth, step));
    }

    void update_arrival_elevation(const std::vector<cplx>& x, PathParams& par) {
        std::array<Eigen::MatrixXcd, 2> w;
        reduce_arrival(x, par, w);
        std::array<double, 2> txn = tx_pattern_norms();
        double step = cfg_.elevation_grid_deg * kPi / 180.0;
        auto obj = [&](double el) {
            return obj_from_arrival(w, txn, Direction{par.arr.azimuth, std::clamp(el, -0.5 * kPi, 0.5 * kPi)});
        };
        par.arr.elevation = std::clamp(scan_coordinate(obj, par.arr.elevation, step), -0.5 * kPi, 0.5 * kPi);
    }

    void update_departure_elevation(const std::vector<cplx>& x, PathParams& par) {
        std::array<Eigen::MatrixXcd, 2> v;
        reduce_departure(x, par, v);
        std::array<double, 2> rxn = rx_pattern_norms();
        double step = cfg_.elevation_grid_deg * kPi / 180.0;
        auto obj = [&](double el) {
            return obj_from_departure(v, rxn, Direction{par.dep.azimuth, std::clamp(el, -0.5 * kPi, 0.5 * kPi)});
        };
        par.dep.elevation = std::clamp(scan_coordinate(obj, par.dep.elevation, step), -0.5 * kPi, 0.5 * kPi);
    }

    void update_doppler(const std::vector<cplx>& x, PathParams& par) {
        std::vector<cplx> u;
        std::array<double, 4> norms;
        reduce_doppler(x, par, u, norms);
        auto obj = [&](double nu) { return obj_from_doppler(u, norms, nu); };
        par.nu = scan_coordinate(obj, par.nu, cfg_.doppler_grid_hz);
    }

    // ---- initialization searches -------------------------------------------

    // noncoherent delay power profile
    Eigen::VectorXd delay_profile(const std::vector<cplx>& x) {
        Eigen::VectorXd prof = Eigen::VectorXd::Zero(nf_);
        Eigen::FFT<double> fft;
        std::vector<cplx> line(static_cast<size_t>(nf_)), out(static_cast<size_t>(nf_));
        for (std::size_t i = 0; i < slab_; ++i) {
            std::copy(x.begin() + static_cast<std::ptrdiff_t>(i * nf_),
                      x.begin() + static_cast<std::ptrdiff_t>((i + 1) * nf_), line.begin());
            fft.inv(out, line);
            for (int b = 0; b < nf_; ++b)
                prof(b) += std::norm(out[static_cast<size_t>(b)]);
        }
        return prof;
    }

    // carrier-frequency beamforming scans bootstrapping a new path at tau0
    PathParams bootstrap_path(const std::vector<cplx>& x, double tau0) {
        PathParams par;
        par.tau = tau0;

        // slab matched to the delay hypothesis
        std::vector<cplx> c(slab_);
        cplx ph0 = std::polar(1.0, kTwoPi * f0_ * tau0);
        cplx step = std::polar(1.0, kTwoPi * df_ * tau0);
        for (std::size_t i = 0; i < slab_; ++i) {
            const cplx* src = x.data() + i * nf_;
            cplx acc{0.0, 0.0};
            cplx ph = ph0;
            for (int f = 0; f < nf_; ++f) {
                acc += src[f] * ph;
                ph *= step;
            }
            c[i] = acc;
        }

        auto rx_steer = [&](const Direction& d, std::vector<cplx>& a) {
            project_rx(d, g_r_, d_r_);
            a.resize(static_cast<size_t>(nrx_));
            for (int mr = 0; mr < nrx_; ++mr)
                a[static_cast<size_t>(mr)] =
                    std::polar(g_r_[static_cast<size_t>(mr)], kTwoPi * fc_ * d_r_[static_cast<size_t>(mr)]);
        };
        auto tx_steer = [&](const Direction& d, std::vector<cplx>& b) {
            project_tx(d, g_t_, d_t_);
            b.resize(static_cast<size_t>(ntx_));
            for (int mt = 0; mt < ntx_; ++mt)
                b[static_cast<size_t>(mt)] =
                    std::polar(g_t_[static_cast<size_t>(mt)], kTwoPi * fc_ * d_t_[static_cast<size_t>(mt)]);
        };

        // arrival azimuth, noncoherent across snapshots and TX elements
        std::vector<cplx> a;
        int n_az = std::max(4, static_cast<int>(std::round(360.0 / cfg_.azimuth_grid_deg)));
        double best_val = -1.0, best_az = 0.0;
        for (int i = 0; i < n_az; ++i) {
            double az = kTwoPi * i / n_az;
            rx_steer(Direction{az, 0.0}, a);
            double pw = 0.0;
            for (int s = 0; s < ns_; ++s) {
                for (int mt = 0; mt < ntx_; ++mt) {
                    const cplx* row = c.data() + static_cast<std::size_t>(s) * pairs_ +
                                      static_cast<std::size_t>(mt) * nrx_;
                    cplx acc{0.0, 0.0};
                    for (int mr = 0; mr < nrx_; ++mr)
                        acc += row[mr] * std::conj(a[static_cast<size_t>(mr)]);
                    pw += std::norm(acc);
                }
            }
            if (pw > best_val) {
                best_val = pw;
                best_az = az;
            }
        }
        par.arr.azimuth = best_az;

        // departure azimuth, coherent across TX given the arrival steering
        rx_steer(par.arr, a);
        Eigen::MatrixXcd d_mat(ns_, ntx_);
        for (int s = 0; s < ns_; ++s)
            for (int mt = 0; mt < ntx_; ++mt) {
                const cplx* row =
                    c.data() + static_cast<std::size_t>(s) * pairs_ + static_cast<std::size_t>(mt) * nrx_;
                cplx acc{0.0, 0.0};
                for (int mr = 0; mr < nrx_; ++mr)
                    acc += row[mr] * std::conj(a[static_cast<size_t>(mr)]);
                d_mat(s, mt) = acc;
            }
        std::vector<cplx> b;
        best_val = -1.0;
        double best_dep = 0.0;
        for (int i = 0; i < n_az; ++i) {
            double az = kTwoPi * i / n_az;
            tx_steer(Direction{az, 0.0}, b);
            double pw = 0.0;
            for (int s = 0; s < ns_; ++s) {
                cplx acc{0.0, 0.0};
                for (int mt = 0; mt < ntx_; ++mt)
                    acc += d_mat(s, mt) * std::conj(b[static_cast<size_t>(mt)]);
                pw += std::norm(acc);
            }
            if (pw > best_val) {
                best_val = pw;
                best_dep = az;
            }
        }
        par.dep.azimuth = best_dep;

        // coarse Doppler over the configured span
        if (cfg_.search_doppler) {
            std::vector<cplx> u;
            std::array<double, 4> norms;
            reduce_doppler(x, par, u, norms);
            double best_nu = 0.0;
            best_val = -1.0;
            int n_nu = static_cast<int>(std::floor(2.0 * cfg_.doppler_span_hz / cfg_.doppler_grid_hz)) + 1;
            for (int i = 0; i < n_nu; ++i) {
                double nu = -cfg_.doppler_span_hz + i * cfg_.doppler_grid_hz;
                double v = obj_from_doppler(u, norms, nu);
                if (v > best_val) {
                    best_val = v;
                    best_nu = nu;
                }
            }
            par.nu = best_nu;
        }
        return par;
    }

  private:
    std::array<double, 2> tx_pattern_norms() const {
        std::array<double, 2> tn{0.0, 0.0};
        for (int mt = 0; mt < ntx_; ++mt)
            tn[static_cast<int>(txa_.elements[static_cast<size_t>(mt)].pol)] +=
                g_t_[static_cast<size_t>(mt)] * g_t_[static_cast<size_t>(mt)];
        return tn;
    }

    std::array<double, 2> rx_pattern_norms() const {
        std::array<double, 2> rn{0.0, 0.0};
        for (int mr = 0; mr < nrx_; ++mr)
            rn[static_cast<int>(rxa_.elements[static_cast<size_t>(mr)].pol)] +=
                g_r_[static_cast<size_t>(mr)] * g_r_[static_cast<size_t>(mr)];
        return rn;
    }

    // local +/-2 step grid around the current value, then golden polish; the
    // current value stays in the candidate set so the objective never drops
    double scan_coordinate(const std::function<double(double)>& obj, double current, double step,
                           double lower_bound = -std::numeric_limits<double>::infinity()) {
        double best_x = current;
        double best = obj(current);
        for (int j = -2; j <= 2; ++j) {
            if (j == 0)
                continue;
            double xx = current + j * step;
            if (xx < lower_bound)
                continue;
            double v = obj(xx);
            if (v > best) {
                best = v;
                best_x = xx;
            }
        }
        double gv = 0.0;
        double gx = golden_max(obj, std::max(lower_bound, best_x - step), best_x + step, 48, &gv);
        return (gv > best) ? gx : best_x;
    }

    FreqGrid grid_;
    const ArrayGeometry& txa_;
    const ArrayGeometry& rxa_;
    const SounderTiming& tm_;
    const EstimatorConfig& cfg_;
    int nf_, ns_, ntx_, nrx_;
    std::size_t pairs_, slab_, total_;
    double f0_, df_, fc_, bandwidth_;
    int snapshot_offset_ = 0;
    std::array<std::vector<int>, 2> tx_pol_, rx_pol_;
    std::vector<double> g_t_, d_t_, g_r_, d_r_;
    std::vector<cplx> dopp_;
};

} // namespace

std::vector<PathEstimate> initialize_sic(const Ctf& ctf, const ArrayGeometry& tx_array, const ArrayGeometry& rx_array,
                                         const SounderTiming& timing, const EstimatorConfig& cfg) {
    cfg.validate();
    if (ctf.data.empty())
        throw std::invalid_argument("initialize_sic: empty observation");
    Engine eng(ctf, tx_array, rx_array, timing, cfg);

    const double obs_energy = tensor_energy(ctf.data);
    std::vector<PathEstimate> found;
    if (obs_energy <= 0.0)
        return found;

    std::vector<cplx> resid = eng.transpose_in(ctf.data);
    std::vector<cplx> contrib;
    const double thr_lin = std::pow(10.0, cfg.detection_threshold_db / 10.0);
    const double bw = ctf.grid.bandwidth_hz;

    for (int l = 0; l < cfg.max_paths; ++l) {
        Eigen::VectorXd prof = eng.delay_profile(resid);
        std::vector<double> sorted(prof.data(), prof.data() + prof.size());
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
        double floor = sorted[sorted.size() / 2];
        Eigen::Index peak_bin = 0;
        double peak = prof.maxCoeff(&peak_bin);
        if (!(peak > 0.0) || !(peak > floor * thr_lin))
            break;

        double tau0 = static_cast<double>(peak_bin) / bw;
        PathParams par = eng.bootstrap_path(resid, tau0);
        // a local polish before subtracting keeps the cancellation clean
        eng.gamma_ls(resid, par);
        eng.refine_circuit(resid, par);
        eng.synth(par, contrib);

        PathEstimate est;
        from_params(par, est);
        est.converged = false;
        est.above_threshold = true;
        double pe = tensor_energy(contrib);
        est.power_db = 10.0 * std::log10(std::max(pe / obs_energy, 1e-300));
        found.push_back(est);

        for (std::size_t i = 0; i < resid.size(); ++i)
            resid[i] -= contrib[i];
    }
    return found;
}

std::vector<PathEstimate> sage_refine(const Ctf& ctf, std::vector<PathEstimate> estimates,
                                      const ArrayGeometry& tx_array, const ArrayGeometry& rx_array,
                                      const SounderTiming& timing, const EstimatorConfig& cfg) {
    cfg.validate();
    if (estimates.empty())
        return estimates;
    Engine eng(ctf, tx_array, rx_array, timing, cfg);

    const std::size_t n = estimates.size();
    std::vector<std::vector<cplx>> contrib(n);
    std::vector<PathParams> params(n);
    std::vector<cplx> resid = eng.transpose_in(ctf.data);
    for (std::size_t l = 0; l < n; ++l) {
        params[l] = to_params(estimates[l]);
        eng.synth(params[l], contrib[l]);
        for (std::size_t i = 0; i < resid.size(); ++i)
            resid[i] -= contrib[l][i];
    }

    std::vector<cplx> admissible(resid.size());
    bool converged = false;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        double e_before = tensor_energy(resid);
        for (std::size_t l = 0; l < n; ++l) {
            // admissible data for this path: observation minus all others
            for (std::size_t i = 0; i < resid.size(); ++i)
                admissible[i] = resid[i] + contrib[l][i];
            eng.refine_circuit(admissible, params[l]);
            eng.synth(params[l], contrib[l]);
            for (std::size_t i = 0; i < resid.size(); ++i)
                resid[i] = admissible[i] - contrib[l][i];
        }
        double e_after = tensor_energy(resid);
        if (e_before - e_after < cfg.tolerance * e_before) {
            converged = true;
            break;
        }
    }

    const double obs_energy = tensor_energy(ctf.data);
    // residual floor for the final detection flags
    Eigen::VectorXd prof = eng.delay_profile(resid);
    std::vector<double> sorted(prof.data(), prof.data() + prof.size());
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    double floor = sorted[sorted.size() / 2];
    const double thr_lin = std::pow(10.0, cfg.detection_threshold_db / 10.0);

    for (std::size_t l = 0; l < n; ++l) {
        from_params(params[l], estimates[l]);
        double pe = tensor_energy(contrib[l]);
        estimates[l].power_db = 10.0 * std::log10(std::max(pe / std::max(obs_energy, 1e-300), 1e-300));
        estimates[l].converged = converged;
        // concentrated profile peak of this path against the residual floor
        estimates[l].above_threshold = floor > 0.0 ? (pe / ctf.grid.n_bins > floor * thr_lin) : (pe > 0.0);
    }
    return estimates;
}

Ctf synthesize_estimates(const std::vector<PathEstimate>& estimates, const ArrayGeometry& tx_array,
                         const ArrayGeometry& rx_array, const SounderTiming& timing, const FreqGrid& grid,
                         int n_snapshots, int snapshot_offset) {
    MpcSet set;
    for (const auto& e : estimates) {
        Mpc m;
        m.delay_s = e.delay_s;
        m.doppler_hz = e.doppler_hz;
        m.departure = e.departure;
        m.arrival = e.arrival;
        m.gamma = e.gamma;
        set.paths.push_back(m);
    }
    return synthesize_ctf(set, tx_array, rx_array, timing, grid, NoiseModel{}, n_snapshots, snapshot_offset);
}

MpcSet estimates_to_mpcs(const std::vector<PathEstimate>& estimates, int position, RisState state) {
    MpcSet set;
    set.position = position;
    set.state = state;
    for (const auto& e : estimates) {
        if (!e.above_threshold)
            continue;
        Mpc m;
        m.delay_s = e.delay_s;
        m.doppler_hz = e.doppler_hz;
        m.departure = e.departure;
        m.arrival = e.arrival;
        m.gamma = e.gamma;
        m.kind = PathKind::scatterer; // provenance unknown to the estimator
        set.paths.push_back(m);
    }
    return set;
}

double residual_energy(const Ctf& ctf, const std::vector<PathEstimate>& estimates, const ArrayGeometry& tx_array,
                       const ArrayGeometry& rx_array, const SounderTiming& timing) {
    std::vector<cplx> resid = ctf.data;
    std::vector<cplx> buf(ctf.data.size());
    for (const auto& e : estimates) {
        Mpc m;
        m.delay_s = e.delay_s;
        m.doppler_hz = e.doppler_hz;
        m.departure = e.departure;
        m.arrival = e.arrival;
        m.gamma = e.gamma;
        std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
        accumulate_path(buf, m, tx_array, rx_array, timing, ctf.grid, ctf.n_snapshots, ctf.snapshot_offset);
        for (std::size_t i = 0; i < resid.size(); ++i)
            resid[i] -= buf[i];
    }
    return tensor_energy(resid);
}

} // namespace risim
