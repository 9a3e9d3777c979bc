// Copyright 2026 The rbdephase Authors
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

#ifndef RBDEPHASE_RNG_H
#define RBDEPHASE_RNG_H

#include <cstdint>
#include <string_view>

namespace rbdephase {

/// Counter-based generator: the n-th output of stream (seed, stream) is a
/// fixed function of (seed, stream, n), so sequences are reproducible on
/// any platform and independent streams can be handed to parallel workers
/// without shared state. Output n is the SplitMix64 finalizer applied to
/// key + (n + 1) * golden_gamma, where key mixes seed and stream.
class CounterRng {
   public:
    static constexpr std::string_view kAlgorithm = "splitmix64-counter/1";

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform integer in [0, n). Unbiased (Lemire's rejection method).
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal via the Box-Muller transform; draws are produced in
    /// pairs and the second one is cached.
    double normal();

    std::uint64_t counter() const {
        return counter_;
    }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for sub-task (a, b) of a computation seeded with seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace rbdephase

#endif  // RBDEPHASE_RNG_H
