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

#include "plmforge/bitvec.h"

#include <bit>

#include "plmforge/errors.h"

namespace plmforge {

BitVec::BitVec(size_t len) : len_(len), words_((len + 63) / 64, 0) {
}

BitVec BitVec::from_string(std::string_view text) {
    BitVec out(text.size());
    for (size_t k = 0; k < text.size(); k++) {
        if (text[k] == '1') {
            out.set(k, true);
        } else if (text[k] != '0') {
            throw ParameterError("bit string contains '" + std::string(1, text[k]) + "'");
        }
    }
    return out;
}

BitVec BitVec::from_uint(uint64_t value, size_t len) {
    if (len > 64) {
        throw ParameterError("from_uint supports at most 64 bits");
    }
    BitVec out(len);
    if (len > 0) {
        out.words_[0] = value << (64 - len);
        if (len < 64) {
            out.words_[0] &= ~uint64_t{0} << (64 - len);
        }
    }
    return out;
}

uint64_t BitVec::to_uint() const {
    if (len_ > 64) {
        throw ParameterError("to_uint supports at most 64 bits");
    }
    if (len_ == 0) {
        return 0;
    }
    return words_[0] >> (64 - len_);
}

void BitVec::check_same_size(const BitVec &other, const char *op) const {
    if (other.len_ != len_) {
        throw ParameterError(std::string(op) + " of bit vectors with lengths " + std::to_string(len_) + " and " +
                             std::to_string(other.len_));
    }
}

BitVec &BitVec::operator^=(const BitVec &other) {
    check_same_size(other, "xor");
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVec &BitVec::operator&=(const BitVec &other) {
    check_same_size(other, "and");
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

bool BitVec::dot(const BitVec &other) const {
    check_same_size(other, "dot");
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

bool BitVec::is_zero() const {
    for (uint64_t w : words_) {
        if (w) {
            return false;
        }
    }
    return true;
}

size_t BitVec::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

size_t BitVec::first_one() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return w * 64 + std::countl_zero(words_[w]);
        }
    }
    return len_;
}

BitVec BitVec::slice(size_t start, size_t count) const {
    if (start + count > len_) {
        throw ParameterError("slice out of range");
    }
    BitVec out(count);
    for (size_t k = 0; k < count; k++) {
        out.set(k, get(start + k));
    }
    return out;
}

BitVec BitVec::concat(const BitVec &tail) const {
    BitVec out(len_ + tail.len_);
    for (size_t k = 0; k < len_; k++) {
        out.set(k, get(k));
    }
    for (size_t k = 0; k < tail.len_; k++) {
        out.set(len_ + k, tail.get(k));
    }
    return out;
}

void BitVec::append(bool bit) {
    if ((len_ & 63) == 0) {
        words_.push_back(0);
    }
    len_++;
    set(len_ - 1, bit);
}

std::string BitVec::str() const {
    std::string out(len_, '0');
    for (size_t k = 0; k < len_; k++) {
        if (get(k)) {
            out[k] = '1';
        }
    }
    return out;
}

std::vector<uint8_t> BitVec::to_bytes() const {
    std::vector<uint8_t> out((len_ + 7) / 8, 0);
    for (size_t k = 0; k < len_; k++) {
        if (get(k)) {
            out[k >> 3] |= uint8_t(0x80 >> (k & 7));
        }
    }
    return out;
}

std::strong_ordering BitVec::operator<=>(const BitVec &other) const {
    if (auto c = len_ <=> other.len_; c != 0) {
        return c;
    }
    for (size_t w = 0; w < words_.size(); w++) {
        if (auto c = words_[w] <=> other.words_[w]; c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

size_t BitVec::hash() const {
    uint64_t h = 0x9E3779B97F4A7C15ull ^ len_;
    for (uint64_t w : words_) {
        h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return (size_t)h;
}

BitVec StatusWord::packed() const {
    BitVec out = value;
    out.append(bottom);
    return out;
}

std::string StatusWord::str() const {
    return bottom ? "⊥" : value.str();
}

}  // namespace plmforge
