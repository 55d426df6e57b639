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

#include "plmforge/cipher_register.h"

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

namespace {

/// Random gate sequence applied both to a factored state and to a dense copy.
void run_random_gates(FactorState &fs, StateVector &dense, const std::vector<int> &ids, Rng &rng, int count) {
    const Gate one[] = {Gate::H, Gate::S, Gate::T, Gate::X, Gate::Z};
    int n = (int)ids.size();
    for (int k = 0; k < count; k++) {
        if (rng.bit()) {
            int a = (int)rng.below(n);
            int b = (int)rng.below(n - 1);
            b += b >= a;
            fs.apply_gate(Gate::CNOT, {ids[a], ids[b]});
            dense.apply_gate(Gate::CNOT, {a, b});
        } else {
            Gate g = one[rng.below(5)];
            int a = (int)rng.below(n);
            fs.apply_gate(g, {ids[a]});
            dense.apply_gate(g, {a});
        }
    }
}

}  // namespace

TEST(FactorState, starts_as_product_and_merges_on_entangling_gates) {
    FactorState fs;
    Rng rng(71);
    std::vector<int> a = fs.add(StateVector::random(1, rng));
    std::vector<int> b = fs.add(StateVector::random(2, rng));
    std::vector<int> c = fs.add(StateVector(1));
    EXPECT_EQ(fs.num_factors(), 3);
    EXPECT_EQ(fs.total_qubits(), 4);
    fs.apply_gate(Gate::H, {a[0]});
    EXPECT_EQ(fs.num_factors(), 3);
    fs.apply_gate(Gate::CNOT, {a[0], c[0]});
    EXPECT_EQ(fs.num_factors(), 2);
    EXPECT_EQ(fs.factor_of(a[0]), fs.factor_of(c[0]));
    EXPECT_NE(fs.factor_of(a[0]), fs.factor_of(b[0]));
    EXPECT_EQ(fs.peak_factor_qubits(), 2);
}

TEST(FactorState, matches_dense_simulation) {
    Rng rng(72);
    for (int trial = 0; trial < 10; trial++) {
        FactorState fs;
        StateVector p = StateVector::random(2, rng);
        StateVector q = StateVector::random(1, rng);
        StateVector r = StateVector::random(2, rng);
        std::vector<int> ids;
        for (const StateVector *s : {&p, &q, &r}) {
            for (int id : fs.add(*s)) {
                ids.push_back(id);
            }
        }
        StateVector dense = tensor(tensor(p, q), r);
        run_random_gates(fs, dense, ids, rng, 12);
        EXPECT_NEAR(fidelity(fs.assemble(ids), dense), 1, 1e-12);
    }
}

TEST(FactorState, assemble_respects_requested_order) {
    FactorState fs;
    std::vector<int> a = fs.add(StateVector::basis(BitVec::from_string("10")));
    std::vector<int> b = fs.add(StateVector::basis(BitVec::from_string("1")));
    std::vector<int> order{b[0], a[1], a[0]};
    StateVector s = fs.assemble(order);
    EXPECT_NEAR(std::abs(s.amps()[BitVec::from_string("101").to_uint()]), 1, 1e-15);
    std::vector<int> partial{a[0]};
    EXPECT_THROW(fs.assemble(partial), std::exception);
}

TEST(FactorState, measure_out_removes_wires_and_keeps_partner) {
    Rng rng(73);
    for (int trial = 0; trial < 8; trial++) {
        FactorState fs;
        std::vector<int> ids = fs.add(epr_pairs(1));
        std::vector<int> first{ids[0]};
        BitVec got = fs.measure_out(first, rng);
        EXPECT_FALSE(fs.holds(ids[0]));
        EXPECT_TRUE(fs.holds(ids[1]));
        std::vector<int> rest{ids[1]};
        EXPECT_EQ(fs.measure(rest, rng), got);
        EXPECT_EQ(fs.total_qubits(), 1);
    }
}

TEST(FactorState, circuit_application_on_ids) {
    Rng rng(74);
    Circuit c = parse_circuit("qubits 2\ncin 1\nH 0\nCNOT 0 1\ncX 1 @0\n");
    FactorState fs;
    std::vector<int> x = fs.add(StateVector(1));
    std::vector<int> y = fs.add(StateVector(1));
    std::vector<int> ids{y[0], x[0]};
    fs.apply_circuit(c, ids, BitVec::from_string("1"));
    StateVector dense(2);
    dense.h(0);
    dense.cnot(0, 1);
    dense.apply_gate(Gate::X, {1});
    EXPECT_NEAR(fidelity(fs.assemble(ids), dense), 1, 1e-12);
}

TEST(FactorState, merge_respects_qubit_cap) {
    int old = qubit_cap();
    set_qubit_cap(4);
    FactorState fs;
    std::vector<int> a = fs.add(StateVector(3));
    std::vector<int> b = fs.add(StateVector(2));
    std::vector<int> both{a[0], b[0]};
    EXPECT_THROW(fs.merge(both), ResourceError);
    set_qubit_cap(old);
}
