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

#include "plmforge/classical_fn.h"

#include <gtest/gtest.h>

using namespace plmforge;
using F = ClassicalFn;

TEST(ClassicalFn, leaves_and_indexing) {
    BitVec v = BitVec::from_string("01");
    BitVec i = BitVec::from_string("1");
    BitVec r = BitVec::from_string("10");
    FnEnv env{&v, &i, &r};
    EXPECT_FALSE(F::select(0).eval(env));
    EXPECT_TRUE(F::select(1).eval(env));
    EXPECT_TRUE(F::input(0).eval(env));
    // Outcomes are numbered from 1.
    EXPECT_TRUE(F::outcome(1).eval(env));
    EXPECT_FALSE(F::outcome(2).eval(env));
}

TEST(ClassicalFn, truth_tables_of_operators) {
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            for (int c = 0; c < 2; c++) {
                BitVec v(3);
                v.set(0, a);
                v.set(1, b);
                v.set(2, c);
                FnEnv env{&v, nullptr, nullptr};
                EXPECT_EQ((F::select(0) ^ F::select(1)).eval(env), (bool)(a ^ b));
                EXPECT_EQ((F::select(0) & F::select(1)).eval(env), (bool)(a & b));
                EXPECT_EQ(F::mux(F::select(0), F::select(1), F::select(2)).eval(env), (bool)(a ? b : c));
            }
        }
    }
}

TEST(ClassicalFn, constants_fold) {
    F f = F::constant(true) ^ F::constant(true);
    EXPECT_TRUE(f.is_const());
    EXPECT_FALSE(f.const_value());
    EXPECT_TRUE((F::select(3) & F::constant(false)).is_const());
}

TEST(ClassicalFn, json_round_trip) {
    F f = F::mux(F::outcome(2), F::select(0) ^ F::input(1), F::select(4) & F::outcome(1));
    F g = F::from_json(f.to_json());
    EXPECT_EQ(f, g);
    EXPECT_EQ(g.max_select(), 4);
    EXPECT_EQ(g.max_outcome(), 2);
}

TEST(ClassicalFn, bottom_propagates) {
    StatusWord v{BitVec::from_string("1"), false};
    StatusWord bot = StatusWord::bot(1);
    F f = F::select(0) ^ F::input(0);
    EXPECT_TRUE(f.eval_status(&v, &bot, nullptr).bottom);
    StatusWord i{BitVec::from_string("1"), false};
    StatusWord ok = f.eval_status(&v, &i, nullptr);
    EXPECT_FALSE(ok.bottom);
    EXPECT_FALSE(ok.value[0]);
}

TEST(ClassicalFn, substitute_relabels_leaves) {
    F f = F::select(0) ^ F::outcome(1);
    F g = f.substitute([](int k) { return F::select(k + 5); }, nullptr, [](int) { return F::constant(true); });
    BitVec v(6);
    v.set(5, true);
    FnEnv env{&v, nullptr, nullptr};
    EXPECT_FALSE(g.eval(env));
}
