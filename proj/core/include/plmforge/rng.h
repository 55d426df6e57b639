// Copyright 2026 The plmforge Authors
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

#ifndef PLMFORGE_RNG_H
#define PLMFORGE_RNG_H

#include <cstdint>
#include <random>
#include <string_view>

namespace plmforge {

/// Seeded, splittable random source. Every randomized operation takes one of
/// these explicitly; there is no ambient generator.
class Rng {
   public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64();
    bool bit();
    /// Uniform integer in [0, n). Requires n > 0.
    uint64_t below(uint64_t n);
    /// Uniform double in [0, 1).
    double uniform();
    double normal();

    /// Independent child stream. Advances this generator by one draw.
    Rng split();
    /// Child stream keyed by a label. Does not advance this generator.
    Rng fork(std::string_view label) const;

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

}  // namespace plmforge

#endif
