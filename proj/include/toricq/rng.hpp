// Copyright 2026 The toricq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TORICQ_RNG_HPP
#define TORICQ_RNG_HPP

#include <cstdint>
#include <random>

namespace toricq {

// SplitMix64 finalizer. Used to derive well-separated seeds for independent
// streams from a (seed, stream id) pair.
inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return mix64(mix64(seed) ^ mix64(stream + 0x632BE59BD9B4E019ULL));
}

// Seeded 64-bit Mersenne Twister with platform-independent helpers. The
// standard distributions are implementation-defined, so uniform draws are
// produced here directly from the raw 64-bit output.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed = 0) : engine_(seed) {
    }
    Rng(uint64_t seed, uint64_t stream) : engine_(derive_seed(seed, stream)) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return ~result_type{0};
    }
    result_type operator()() {
        return engine_();
    }

    // Uniform in [0, 1) with 53 bits of resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Lemire's rejection method, unbiased.
    uint64_t below(uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
        uint64_t low = static_cast<uint64_t>(m);
        if (low < n) {
            uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace toricq

#endif
