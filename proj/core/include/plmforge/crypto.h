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

#ifndef PLMFORGE_CRYPTO_H
#define PLMFORGE_CRYPTO_H

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "plmforge/bitvec.h"
#include "plmforge/rng.h"

namespace plmforge {

using Bytes = std::vector<uint8_t>;

/// Concatenates fields, each prefixed by its byte length as 2 big-endian bytes.
Bytes encode_fields(const std::vector<Bytes> &fields);
/// A bit string as a field: 2 big-endian bytes of bit length, then the packed bits.
Bytes bits_field(const BitVec &v);
Bytes uint_field(uint64_t value);

/// HMAC-SHA256 keyed PRF truncated to kappa output bits.
struct PrfKey {
    Bytes key;
    int kappa = 32;

    static PrfKey generate(int kappa, Rng &rng);
};

BitVec prf_eval(const PrfKey &k, std::span<const uint8_t> input);
/// Label input (j, r, 𝕚, s) in the tuple encoding.
Bytes label_input(int j, bool r, const BitVec &i, std::span<const uint8_t> s);

/// Verification key of the token test double. It carries the MAC key, so it is a
/// stand-in for the interface only and offers no unforgeability.
struct VerificationKey {
    size_t message_bits = 0;
    Bytes mac_key;
};

/// One-time signing token. Move-only; signing flips `spent` exactly once.
class TokenHandle {
   public:
    TokenHandle(uint64_t id, Bytes mac_key, size_t message_bits);
    TokenHandle(TokenHandle &&) noexcept = default;
    TokenHandle &operator=(TokenHandle &&) noexcept = default;
    TokenHandle(const TokenHandle &) = delete;
    TokenHandle &operator=(const TokenHandle &) = delete;

    uint64_t id() const {
        return id_;
    }
    bool spent() const {
        return spent_->load();
    }
    /// Throws OneTimeUseError on a second call.
    Bytes sign(const BitVec &m);

   private:
    uint64_t id_;
    Bytes mac_key_;
    size_t message_bits_;
    std::unique_ptr<std::atomic<bool>> spent_;
};

std::pair<VerificationKey, TokenHandle> token_gen(size_t message_bits, Rng &rng);
Bytes token_sign(const BitVec &m, TokenHandle &t);
bool token_ver(const VerificationKey &vk, const BitVec &m, std::span<const uint8_t> s);

}  // namespace plmforge

#endif
