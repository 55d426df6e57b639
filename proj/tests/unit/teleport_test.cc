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

#include "plmforge/teleport.h"

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

TEST(Teleport, every_branch_delivers_the_message) {
    Rng rng(31);
    StateVector psi = StateVector::random(1, rng);
    // Wires: message, left half, right half.
    StateVector start = tensor(psi, epr_pairs(1));
    std::vector<int> msg{0}, left{1}, right{2};
    for (uint64_t label = 0; label < 4; label++) {
        Pauli p = Pauli::from_label(BitVec::from_uint(label, 2));
        StateVector s = start;
        EXPECT_NEAR(tp_send_forced(s, msg, left, p), 0.25, 1e-12);
        tp_recv(p, s, right);
        std::vector<int> gone{0, 1};
        project_out(s, gone, p.label());
        EXPECT_NEAR(fidelity(s, psi), 1, 1e-12);
    }
}

TEST(Teleport, unitary_form_is_inverted_by_dag) {
    Rng rng(32);
    StateVector s = StateVector::random(4, rng);
    StateVector t = s;
    std::vector<int> m{0, 1}, l{2, 3};
    tp_unitary(t, m, l);
    tp_unitary_dag(t, m, l);
    EXPECT_NEAR(fidelity(s, t), 1, 1e-12);
}

TEST(Teleport, rejects_overlapping_wires) {
    StateVector s(2);
    std::vector<int> a{0}, b{0};
    EXPECT_THROW(tp_unitary(s, a, b), ParameterError);
}
