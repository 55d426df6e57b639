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

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

TEST(BitVec, string_round_trip) {
    BitVec v = BitVec::from_string("1011001");
    EXPECT_EQ(v.size(), 7u);
    EXPECT_EQ(v.str(), "1011001");
    EXPECT_TRUE(v[0]);
    EXPECT_FALSE(v[1]);
    EXPECT_THROW(BitVec::from_string("10a"), ParameterError);
}

TEST(BitVec, uint_is_big_endian) {
    BitVec v = BitVec::from_uint(6, 4);
    EXPECT_EQ(v.str(), "0110");
    EXPECT_EQ(v.to_uint(), 6u);
}

TEST(BitVec, crosses_word_boundary) {
    BitVec v(130);
    v.set(63, true);
    v.set(64, true);
    v.set(129, true);
    EXPECT_EQ(v.popcount(), 3u);
    EXPECT_EQ(v.first_one(), 63u);
    BitVec s = v.slice(60, 8);
    EXPECT_EQ(s.str(), "00011000");
    BitVec w = v;
    w.flip(129);
    EXPECT_EQ((v ^ w).first_one(), 129u);
}

TEST(BitVec, dot_and_concat) {
    BitVec a = BitVec::from_string("1101");
    BitVec b = BitVec::from_string("1011");
    EXPECT_EQ(a.dot(b), false);  // 1 + 0 + 0 + 1
    EXPECT_EQ(a.concat(b).str(), "11011011");
    BitVec c = a;
    c.append(true);
    EXPECT_EQ(c.str(), "11011");
    EXPECT_THROW(a ^= BitVec(3), ParameterError);
}

TEST(BitVec, ordering_is_length_then_lexicographic) {
    EXPECT_LT(BitVec::from_string("11"), BitVec::from_string("000"));
    EXPECT_LT(BitVec::from_string("010"), BitVec::from_string("100"));
}

TEST(BitVec, status_word_packs_status_last) {
    StatusWord ok{BitVec::from_string("10"), false};
    EXPECT_EQ(ok.packed().str(), "100");
    EXPECT_EQ(StatusWord::bot(2).packed().str(), "001");
}
