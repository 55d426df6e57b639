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

#include "plmforge/rng.h"

#include "plmforge/errors.h"

namespace plmforge {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {
}

uint64_t Rng::next_u64() {
    return engine_();
}

bool Rng::bit() {
    return engine_() >> 63;
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) {
        throw ParameterError("Rng::below(0)");
    }
    // Rejection keeps the draw exactly uniform.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    while (true) {
        uint64_t v = engine_();
        if (v < limit) {
            return v % n;
        }
    }
}

double Rng::uniform() {
    return (engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

Rng Rng::split() {
    return Rng(splitmix64(engine_() ^ 0xA5A5A5A5A5A5A5A5ull));
}

Rng Rng::fork(std::string_view label) const {
    uint64_t h = 0xCBF29CE484222325ull;
    for (char c : label) {
        h = (h ^ (uint8_t)c) * 0x100000001B3ull;
    }
    return Rng(splitmix64(seed_ ^ splitmix64(h)));
}

}  // namespace plmforge
