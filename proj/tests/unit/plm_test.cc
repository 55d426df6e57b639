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

#include "plmforge/plm.h"

#include <cmath>

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

TEST(PlmCompile, hadamard_program_shape) {
    PLMProgram p = compile(parse_circuit("qubits 1\nH 0\nmeasure 0\n"));
    EXPECT_EQ(p.t(), 3);
    EXPECT_EQ(p.plm_width, 2);
    EXPECT_EQ(p.num_wires, 3);
    EXPECT_EQ(p.n_out, 1);
}

TEST(PlmCompile, identity_program_reads_its_wire) {
    PLMProgram p = compile(parse_circuit("qubits 1\nmeasure 0\n"));
    EXPECT_EQ(p.t(), 1);
    Rng rng(61);
    StateVector one = StateVector::basis(BitVec::from_string("1"));
    for (int k = 0; k < 5; k++) {
        EXPECT_EQ(execute_plm(p, BitVec(0), one, nullptr, rng).y.str(), "1");
    }
    EXPECT_EQ(eval_output(p, BitVec(0), BitVec::from_string("1")).str(), "1");
}

TEST(PlmCompile, t_program_has_four_gadget_rounds) {
    PLMProgram p = compile(parse_circuit("qubits 1\nT 0\nmeasure 0\n"));
    EXPECT_EQ(p.t(), 5);
    ASSERT_EQ(p.gadgets.size(), 1u);
    EXPECT_EQ(p.gadgets[0].kind, GadgetKind::T);
    // Rounds 2 and 3 branch on r_1 xor x_i.
    EXPECT_EQ(p.instructions[1].f.op(), ClassicalFn::Op::Mux);
    EXPECT_EQ(p.instructions[2].f.op(), ClassicalFn::Op::Mux);
}

TEST(PlmCompile, hadamard_program_samples_fairly) {
    PLMProgram p = compile(parse_circuit("qubits 1\nH 0\nmeasure 0\n"));
    Rng rng(62);
    const int runs = 10000;
    int ones = 0;
    for (int k = 0; k < runs; k++) {
        ones += execute_plm(p, BitVec(0), StateVector(1), nullptr, rng).y[0];
    }
    EXPECT_LE(std::abs(ones - runs / 2.0), 3 * std::sqrt(runs * 0.25));
}

TEST(PlmCompile, th_distribution_matches_direct) {
    Circuit c = parse_circuit("qubits 1\nH 0\nT 0\nH 0\nmeasure 0\n");
    PLMProgram p = compile(c);
    auto d1 = plm_distribution(p, BitVec(0), StateVector(1));
    auto d2 = direct_distribution(c, BitVec(0), StateVector(1), StateVector());
    // cos^2(pi/8) for outcome 0.
    EXPECT_NEAR(d2[BitVec::from_string("0")], std::pow(std::cos(M_PI / 8), 2), 1e-12);
    for (const auto &[y, pr] : d2) {
        EXPECT_NEAR(d1[y], pr, 1e-12);
    }
}

TEST(PlmCompile, phi_basis_gives_its_outcomes) {
    PLMProgram p = compile(parse_circuit("qubits 2\ncin 1\nH 0\nCNOT 0 1\ncZ 1 @0\nmeasure 0 1\n"));
    Rng rng(63);
    for (int k = 0; k < 6; k++) {
        BitVec i = BitVec::from_uint(rng.below(2), 1);
        BitVec r = BitVec::from_uint(rng.below(uint64_t{1} << p.t()), p.t());
        StateVector phi = phi_basis_state(p, i, r);
        int seen = 0;
        enumerate_branches(p, i, phi, [&](const BitVec &got, const StateVector &post) {
            EXPECT_EQ(got, r);
            EXPECT_NEAR(post.norm_squared(), 1, 1e-10);
            seen++;
        });
        EXPECT_EQ(seen, 1);
    }
}

TEST(PlmCompile, json_round_trip) {
    PLMProgram p = compile(parse_circuit("qubits 2\ncin 1\nH 0\nT 1\nCNOT 0 1\ncX 0 @0\nmeasure 1\n"));
    EXPECT_EQ(plm_from_json(plm_to_json(p)), p);
}

TEST(PlmCompile, rejects_unlowerable_gates) {
    EXPECT_THROW(compile(parse_circuit("qubits 1\ncin 1\ncH 0 @0\nmeasure 0\n")), CompileError);
    EXPECT_THROW(compile(parse_circuit("qubits 1\nU 0\nmeasure 0\n")), CompileError);
}

TEST(PlmChecks, small_programs_are_projective) {
    Rng rng(64);
    PLMProgram p = compile(parse_circuit("qubits 1\ncin 1\nH 0\nT 0\ncX 0 @0\nmeasure 0\n"));
    for (uint64_t iv = 0; iv < 2; iv++) {
        BitVec i = BitVec::from_uint(iv, 1);
        EXPECT_TRUE(projectivity_check(p, i, rng).pass);
        EXPECT_TRUE(completeness_check(p, i).pass);
    }
}

TEST(PlmWrap, obfuscation_wrapper_teleports_out) {
    Circuit q = parse_circuit("qubits 1\nH 0\n");
    Circuit w = wrap_for_obfuscation(q, 1);
    EXPECT_EQ(w.n_q, 2);
    EXPECT_EQ(w.n_c, 2);
    EXPECT_EQ(w.measure, (std::vector<int>{0, 1}));
    EXPECT_EQ(w.gates.size(), 5u);
    EXPECT_THROW(wrap_for_obfuscation(q, 2), ParameterError);
}

TEST(PlmCompile, round_count_is_linear_in_lowered_gates) {
    for (const char *text : {"qubits 1\nH 0\nmeasure 0\n", "qubits 1\nS 0\nT 0\nmeasure 0\n",
                             "qubits 2\nH 0\nCNOT 0 1\nSWAP 0 1\nX 1\nmeasure 0 1\n"}) {
        Circuit c = parse_circuit(text);
        int lowered = 0;
        for (const GateApp &app : c.gates) {
            lowered += app.gate == Gate::S ? 2 : (app.gate == Gate::H || app.gate == Gate::T || app.gate == Gate::CNOT);
        }
        PLMProgram p = compile(c);
        EXPECT_LE(p.t(), 4 * lowered + (int)c.measure.size()) << text;
    }
}
