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

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

namespace {

Bytes text(const std::string &s) {
    return Bytes(s.begin(), s.end());
}

}  // namespace

TEST(Prf, hmac_sha256_known_answer) {
    // RFC 4231 test case 2, first 64 bits: 5bdcc146bf60754e.
    PrfKey k{text("Jefe"), 64};
    BitVec out = prf_eval(k, text("what do ya want for nothing?"));
    EXPECT_EQ(out.to_uint(), 0x5bdcc146bf60754eull);
}

TEST(Prf, truncation_is_a_prefix) {
    Rng rng(41);
    PrfKey k = PrfKey::generate(256, rng);
    PrfKey short_k{k.key, 32};
    Bytes in = label_input(3, true, BitVec::from_string("0110"), text("sig"));
    EXPECT_EQ(prf_eval(short_k, in), prf_eval(k, in).slice(0, 32));
    EXPECT_THROW(PrfKey::generate(8, rng), ParameterError);
}

TEST(Prf, label_inputs_are_injective_on_field_boundaries) {
    BitVec i = BitVec::from_string("01");
    EXPECT_NE(label_input(1, false, i, text("ab")), label_input(1, true, i, text("ab")));
    EXPECT_NE(label_input(1, false, i, text("ab")), label_input(2, false, i, text("ab")));
    // Length prefixes separate ("0", "1" + s) from ("01", s).
    EXPECT_NE(encode_fields({text("a"), text("bc")}), encode_fields({text("ab"), text("c")}));
    EXPECT_EQ(bits_field(BitVec::from_string("101")), (Bytes{0, 3, 0xA0}));
    EXPECT_EQ(uint_field(258), (Bytes{0, 0, 0, 0, 0, 0, 1, 2}));
}

TEST(Token, signs_once_and_verifies) {
    Rng rng(42);
    auto [vk, token] = token_gen(4, rng);
    BitVec m = BitVec::from_string("1010");
    Bytes s = token_sign(m, token);
    EXPECT_TRUE(token.spent());
    EXPECT_TRUE(token_ver(vk, m, s));
    EXPECT_FALSE(token_ver(vk, BitVec::from_string("1011"), s));
    Bytes bad = s;
    bad[0] ^= 1;
    EXPECT_FALSE(token_ver(vk, m, bad));
    EXPECT_THROW(token_sign(m, token), OneTimeUseError);
}

TEST(Token, moved_from_handle_cannot_sign) {
    Rng rng(43);
    auto [vk, token] = token_gen(2, rng);
    TokenHandle other = std::move(token);
    EXPECT_THROW(token.sign(BitVec(2)), OneTimeUseError);
    EXPECT_NO_THROW(other.sign(BitVec(2)));
}
