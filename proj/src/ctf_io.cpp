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

#include "risim/ctf_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace risim {

namespace {

// The build targets little-endian hosts; the on-disk layout is fixed.
void put_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

double get_f64(std::istream& in) {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

} // namespace

void save_ctf(const Ctf& ctf, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_ctf: cannot open " + path);
    put_u64(out, kCtfMagic);
    put_u64(out, static_cast<std::uint64_t>(ctf.grid.n_bins));
    put_u64(out, static_cast<std::uint64_t>(ctf.n_snapshots));
    put_u64(out, static_cast<std::uint64_t>(ctf.n_tx));
    put_u64(out, static_cast<std::uint64_t>(ctf.n_rx));
    put_u64(out, ctf.grid.kind == GridKind::periodic ? 1 : 0);
    put_u64(out, static_cast<std::uint64_t>(ctf.snapshot_offset));
    put_f64(out, ctf.grid.carrier_hz);
    put_f64(out, ctf.grid.bandwidth_hz);
    for (const auto& v : ctf.data) {
        put_f64(out, v.real());
        put_f64(out, v.imag());
    }
    if (!out)
        throw std::runtime_error("save_ctf: write failed for " + path);
}

Ctf load_ctf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_ctf: cannot open " + path);
    if (get_u64(in) != kCtfMagic)
        throw std::runtime_error("load_ctf: bad magic in " + path);
    Ctf ctf;
    ctf.grid.n_bins = static_cast<int>(get_u64(in));
    ctf.n_snapshots = static_cast<int>(get_u64(in));
    ctf.n_tx = static_cast<int>(get_u64(in));
    ctf.n_rx = static_cast<int>(get_u64(in));
    ctf.grid.kind = get_u64(in) ? GridKind::periodic : GridKind::endpoint;
    ctf.snapshot_offset = static_cast<int>(get_u64(in));
    ctf.grid.carrier_hz = get_f64(in);
    ctf.grid.bandwidth_hz = get_f64(in);
    if (!in)
        throw std::runtime_error("load_ctf: truncated header in " + path);
    std::size_t n = static_cast<std::size_t>(ctf.grid.n_bins) * ctf.n_snapshots * ctf.n_tx * ctf.n_rx;
    ctf.data.resize(n);
    for (auto& v : ctf.data) {
        double re = get_f64(in);
        double im = get_f64(in);
        v = {re, im};
    }
    if (!in)
        throw std::runtime_error("load_ctf: truncated payload in " + path);
    return ctf;
}

} // namespace risim
