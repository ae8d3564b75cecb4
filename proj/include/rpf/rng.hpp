/*
   Copyright 2026 The rpf-lab Authors

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

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3"). All variates are produced by code in this
// file, not by <random> distributions, so streams are bit-identical across
// standard library implementations.

#pragma once

#include <array>
#include <cstdint>

namespace rpf {

/// SplitMix64 finalizer; used to derive stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Key for replica `index` of master seed `seed`.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept;

using PhiloxBlock = std::array<std::uint32_t, 4>;

/// One Philox4x32-10 block for a 64-bit key and 128-bit counter (hi, lo).
PhiloxBlock philox4x32(std::uint64_t key, std::uint64_t counter_hi,
                       std::uint64_t counter_lo) noexcept;

/// Map 53 random bits to the open interval (0, 1).
inline double to_unit_open(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Sequential view of one Philox stream.
///
/// The stream is identified by `key`; `domain` separates independent uses of
/// the same key (it becomes the high counter word).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t domain = 0) noexcept
        : key_(key), domain_(domain) {}

    std::uint64_t next_u64() noexcept;
    double uniform() noexcept { return to_unit_open(next_u64()); }
    double normal() noexcept;
    /// Gamma(shape, scale 1), Marsaglia-Tsang with the shape < 1 boost.
    double gamma(double shape) noexcept;
    /// Chi variate with `dof` degrees of freedom (any dof > 0).
    double chi(double dof) noexcept;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t domain_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Standard normal addressed by (key, a, b); no sequential state.
double normal_at(std::uint64_t key, std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace rpf
