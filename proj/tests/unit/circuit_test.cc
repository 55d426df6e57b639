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

#include "plmforge/circuit.h"

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

TEST(Circuit, parse_and_render_round_trip) {
    const char *text = "qubits 2\ncin 1\naux 1\nH 0\nCNOT 0 2\ncX 1 @0\nT 1\nmeasure 0 1\n";
    Circuit c = parse_circuit(text);
    EXPECT_EQ(c.n_q, 2);
    EXPECT_EQ(c.n_c, 1);
    EXPECT_EQ(c.aux, 1);
    ASSERT_EQ(c.gates.size(), 4u);
    EXPECT_EQ(c.gates[2].cbit, 0);
    EXPECT_EQ(parse_circuit(render_circuit(c)), c);
    EXPECT_EQ(circuit_from_json(circuit_to_json(c)), c);
}

TEST(Circuit, parse_errors_carry_line_numbers) {
    try {
        parse_circuit("qubits 1\nH 0\nCNOT 0 5\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line, 3);
    }
    EXPECT_THROW(parse_circuit("H 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 1\nmeasure 0\nH 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 1\nFOO 0\n"), ParseError);
}

TEST(Circuit, classical_control_fires_on_set_bit) {
    Circuit c = parse_circuit("qubits 1\ncin 1\ncX 0 @0\n");
    StateVector s(1);
    apply_circuit(s, c, BitVec::from_string("0"));
    EXPECT_NEAR(std::norm(s.amps()[0]), 1, 1e-15);
    apply_circuit(s, c, BitVec::from_string("1"));
    EXPECT_NEAR(std::norm(s.amps()[1]), 1, 1e-15);
}

TEST(Circuit, inverse_undoes) {
    Rng rng(9);
    Circuit c = parse_circuit("qubits 2\nH 0\nT 0\nS 1\nCNOT 0 1\nSWAP 0 1\n");
    StateVector s = StateVector::random(2, rng);
    StateVector t = s;
    apply_circuit(t, c, BitVec(0));
    apply_circuit(t, inverse_circuit(c), BitVec(0));
    EXPECT_NEAR(fidelity(s, t), 1, 1e-12);
}

TEST(Circuit, direct_distribution_of_bell_circuit) {
    Circuit c = parse_circuit("qubits 2\nH 0\nCNOT 0 1\nmeasure 0 1\n");
    auto d = direct_distribution(c, BitVec(0), StateVector(2), StateVector());
    EXPECT_NEAR(d[BitVec::from_string("00")], 0.5, 1e-12);
    EXPECT_NEAR(d[BitVec::from_string("11")], 0.5, 1e-12);
    EXPECT_NEAR(d[BitVec::from_string("01")], 0, 1e-12);
}

TEST(CircuitRewrite, controlled_gates_match_block_matrices) {
    // Each controlled form equals |0><0| (x) I + |1><1| (x) G, checked on random states.
    Rng rng(10);
    const char *bodies[] = {"qubits 2\nX 0\n", "qubits 2\nZ 0\n", "qubits 2\nH 0\n",
                            "qubits 2\nS 1\n", "qubits 2\nCNOT 0 1\n", "qubits 2\nSWAP 0 1\n"};
    for (const char *body : bodies) {
        Circuit g = parse_circuit(body);
        Circuit ctrl;
        ctrl.n_q = 3;
        std::vector<int> map{1, 2};
        append_controlled(ctrl, g, 0, map);
        for (int trial = 0; trial < 4; trial++) {
            StateVector s = StateVector::random(3, rng);
            StateVector got = s;
            apply_circuit(got, ctrl, BitVec(0));
            // Branch-wise reference: apply G to the control-1 half only.
            StateVector one = s;
            std::vector<int> cw{0};
            double p1 = project_out(one, cw, BitVec::from_string("1"));
            StateVector zero = s;
            double p0 = project_out(zero, cw, BitVec::from_string("0"));
            apply_circuit(one, g, BitVec(0));
            std::vector<cplx> amps(8);
            for (size_t a = 0; a < 4; a++) {
                amps[a] = zero.amps()[a] * std::sqrt(p0);
                amps[4 + a] = one.amps()[a] * std::sqrt(p1);
            }
            StateVector want = StateVector::from_amplitudes(amps);
            EXPECT_NEAR(std::abs(inner_product(want, got)), 1, 1e-10) << body;
        }
    }
    Circuit t = parse_circuit("qubits 1\nT 0\n");
    Circuit out;
    out.n_q = 2;
    std::vector<int> m{1};
    EXPECT_THROW(append_controlled(out, t, 0, m), ParameterError);
}

TEST(CircuitRewrite, ctrl_swap_sandwich_conjugates_a) {
    Rng rng(11);
    Circuit inner = parse_circuit("qubits 1\nH 0\nS 0\n");
    Circuit a = parse_circuit("qubits 2\nCNOT 0 1\n");
    Circuit sw = ctrl_swap_sandwich(inner, a);
    // Wires: control, B, C, D.
    ASSERT_EQ(sw.n_q, 4);
    for (int trial = 0; trial < 4; trial++) {
        StateVector rest = StateVector::random(3, rng);
        for (int ctl = 0; ctl < 2; ctl++) {
            StateVector s = tensor(StateVector::basis(BitVec::from_uint(ctl, 1)), rest);
            StateVector got = s;
            apply_circuit(got, sw, BitVec(0));
            StateVector want = s;
            if (ctl) {
                // U^dag A_{B,D} U on B.
                want.h(1);
                want.s(1);
                want.cnot(1, 3);
                want.s_dag(1);
                want.h(1);
            }
            EXPECT_NEAR(fidelity(got, want), 1, 1e-10);
        }
    }
}
