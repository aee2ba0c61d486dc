/*
   Copyright 2026 The fpclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace fpclab::numerics {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al. counter-based generator).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Deterministic random stream addressed by (master_seed, stream_id).
///
/// The master seed is the Philox key and the stream id occupies the upper
/// half of the counter, so every (seed, id) pair owns a disjoint 2^64-block
/// sequence. Streams are cheap to construct; create one per trial.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64() {
        if (available_ == 0) refill();
        return buffer_[2 - available_--];
    }
    /// Uniform on the open interval (0, 1): 53 random bits centred in their cell.
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    void refill();

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0;
};

inline double sample_uniform(RandomStream& stream) { return stream.uniform(); }
/// Unit-mean exponential, -ln(U).
inline double sample_exponential(RandomStream& stream) { return -std::log(stream.uniform()); }
/// Poisson draw: inversion below mean 10, PTRS transformed rejection above.
std::uint64_t sample_poisson(RandomStream& stream, double mean);

}  // namespace fpclab::numerics
