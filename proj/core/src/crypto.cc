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

#include "plmforge/crypto.h"

#include <openssl/crypto.h>
#include <openssl/evp.h>

#include "plmforge/errors.h"

namespace plmforge {

namespace {

Bytes hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> data) {
    uint8_t out[32];
    size_t out_len = 0;
    char digest[] = "SHA256";
    if (EVP_Q_mac(nullptr, "HMAC", nullptr, digest, nullptr, key.data(), key.size(), data.data(), data.size(), out,
                  sizeof(out), &out_len) == nullptr ||
        out_len != sizeof(out)) {
        throw InternalError("HMAC-SHA256 failed");
    }
    return Bytes(out, out + out_len);
}

Bytes random_bytes(size_t n, Rng &rng) {
    Bytes b(n);
    for (auto &x : b) {
        x = (uint8_t)rng.below(256);
    }
    return b;
}

Bytes token_message(const BitVec &m) {
    return encode_fields({Bytes{'t', 'o', 'k'}, bits_field(m)});
}

}  // namespace

Bytes encode_fields(const std::vector<Bytes> &fields) {
    Bytes out;
    for (const auto &f : fields) {
        if (f.size() > 0xffff) {
            throw ParameterError("field longer than 65535 bytes");
        }
        out.push_back((uint8_t)(f.size() >> 8));
        out.push_back((uint8_t)(f.size() & 0xff));
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

Bytes bits_field(const BitVec &v) {
    if (v.size() > 0xffff) {
        throw ParameterError("bit string too long to encode");
    }
    Bytes out{(uint8_t)(v.size() >> 8), (uint8_t)(v.size() & 0xff)};
    Bytes packed = v.to_bytes();
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

Bytes uint_field(uint64_t value) {
    Bytes out(8);
    for (int k = 7; k >= 0; k--) {
        out[k] = (uint8_t)(value & 0xff);
        value >>= 8;
    }
    return out;
}

PrfKey PrfKey::generate(int kappa, Rng &rng) {
    if (kappa < 16 || kappa > 256) {
        throw ParameterError("kappa must lie in [16, 256]");
    }
    return PrfKey{random_bytes(32, rng), kappa};
}

BitVec prf_eval(const PrfKey &k, std::span<const uint8_t> input) {
    if (k.kappa < 16 || k.kappa > 256) {
        throw ParameterError("kappa must lie in [16, 256]");
    }
    Bytes mac = hmac_sha256(k.key, input);
    BitVec out(k.kappa);
    for (int b = 0; b < k.kappa; b++) {
        out.set(b, (mac[b / 8] >> (7 - b % 8)) & 1);
    }
    return out;
}

Bytes label_input(int j, bool r, const BitVec &i, std::span<const uint8_t> s) {
    return encode_fields({uint_field((uint64_t)j), Bytes{(uint8_t)r}, bits_field(i), Bytes(s.begin(), s.end())});
}

TokenHandle::TokenHandle(uint64_t id, Bytes mac_key, size_t message_bits)
    : id_(id),
      mac_key_(std::move(mac_key)),
      message_bits_(message_bits),
      spent_(std::make_unique<std::atomic<bool>>(false)) {
}

Bytes TokenHandle::sign(const BitVec &m) {
    if (!spent_) {
        throw OneTimeUseError("token handle was moved from");
    }
    if (m.size() != message_bits_) {
        throw ParameterError("token message has the wrong length");
    }
    if (spent_->exchange(true)) {
        throw OneTimeUseError("token " + std::to_string(id_) + " has already signed a message");
    }
    return hmac_sha256(mac_key_, token_message(m));
}

std::pair<VerificationKey, TokenHandle> token_gen(size_t message_bits, Rng &rng) {
    Bytes key = random_bytes(32, rng);
    uint64_t id = rng.next_u64();
    return {VerificationKey{message_bits, key}, TokenHandle(id, key, message_bits)};
}

Bytes token_sign(const BitVec &m, TokenHandle &t) {
    return t.sign(m);
}

bool token_ver(const VerificationKey &vk, const BitVec &m, std::span<const uint8_t> s) {
    if (m.size() != vk.message_bits || s.size() != 32) {
        return false;
    }
    Bytes want = hmac_sha256(vk.mac_key, token_message(m));
    return CRYPTO_memcmp(want.data(), s.data(), 32) == 0;
}

}  // namespace plmforge
