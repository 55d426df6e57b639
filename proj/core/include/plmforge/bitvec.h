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

#ifndef PLMFORGE_BITVEC_H
#define PLMFORGE_BITVEC_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace plmforge {

/// Fixed-length vector over GF(2).
///
/// Bit 0 is the leftmost character of the printed form. Bits are packed
/// most-significant-first inside each 64-bit word, so comparing words in order
/// is the same as comparing the printed strings lexicographically.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t len);

    /// Parses a string of '0' and '1'. Throws ParameterError otherwise.
    static BitVec from_string(std::string_view text);
    /// The `len` low bits of `value`, with bit 0 taken from the most significant one.
    static BitVec from_uint(uint64_t value, size_t len);

    size_t size() const {
        return len_;
    }
    bool empty() const {
        return len_ == 0;
    }

    bool get(size_t k) const {
        return (words_[k >> 6] >> (63 - (k & 63))) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (63 - (k & 63));
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (63 - (k & 63));
    }
    bool operator[](size_t k) const {
        return get(k);
    }

    /// Inverse of from_uint. Requires size() <= 64.
    uint64_t to_uint() const;

    BitVec &operator^=(const BitVec &other);
    friend BitVec operator^(BitVec a, const BitVec &b) {
        a ^= b;
        return a;
    }
    BitVec &operator&=(const BitVec &other);

    /// Inner product mod 2.
    bool dot(const BitVec &other) const;
    bool is_zero() const;
    size_t popcount() const;
    /// Index of the first set bit, or size() when zero.
    size_t first_one() const;

    BitVec slice(size_t start, size_t count) const;
    BitVec concat(const BitVec &tail) const;
    void append(bool bit);

    std::string str() const;
    std::vector<uint8_t> to_bytes() const;

    bool operator==(const BitVec &other) const = default;
    /// Orders by length, then lexicographically.
    std::strong_ordering operator<=>(const BitVec &other) const;

    size_t hash() const;

   private:
    void check_same_size(const BitVec &other, const char *op) const;

    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

struct BitVecHash {
    size_t operator()(const BitVec &v) const {
        return v.hash();
    }
};

/// A classical value followed by its status bit. `bottom` set means the value is ⊥
/// and the payload bits carry no information.
struct StatusWord {
    BitVec value;
    bool bottom = false;

    static StatusWord bot(size_t width) {
        return StatusWord{BitVec(width), true};
    }
    /// Payload with the status bit appended at the end.
    BitVec packed() const;
    std::string str() const;
    bool operator==(const StatusWord &other) const = default;
};

}  // namespace plmforge

#endif
