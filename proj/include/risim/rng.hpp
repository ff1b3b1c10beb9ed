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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace risim {

// Deterministic RNG used everywhere in the project. Distribution transforms
// are hand-rolled so that streams are reproducible independent of the
// standard library implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return (gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // standard normal via Box-Muller (cosine branch only)
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // circularly-symmetric complex normal with E|z|^2 = 1
    std::complex<double> gaussian_complex() {
        double re = gaussian();
        double im = gaussian();
        return {re * 0.7071067811865475244, im * 0.7071067811865475244};
    }

    // uniform integer in [0, bound)
    std::uint64_t integer(std::uint64_t bound) {
        return gen_() % bound;
    }

  private:
    std::mt19937_64 gen_;
};

// splitmix64 finalizer; used to derive independent sub-seeds
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix_seed(base);
    h = mix_seed(h ^ mix_seed(a));
    h = mix_seed(h ^ mix_seed(b));
    h = mix_seed(h ^ mix_seed(c));
    return h;
}

} // namespace risim
