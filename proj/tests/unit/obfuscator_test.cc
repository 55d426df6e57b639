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

#include "plmforge/obfuscator.h"

#include <set>

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

namespace {

StateVector expected_output(const Circuit &u, const StateVector &in) {
    StateVector want = in;
    std::vector<int> wires;
    for (int w = 0; w < u.n_q; w++) {
        wires.push_back(w);
    }
    apply_circuit(want, u, BitVec(0), wires);
    return want;
}

}  // namespace

TEST(CoherentOracle, xors_the_oracle_value_into_the_answer_register) {
    Rng rng(81);
    StateVector s = tensor(StateVector::random(3, rng), StateVector(2));
    auto f = [](const BitVec &x) {
        return BitVec::from_uint((x.to_uint() * 3 + 1) & 3, 2);
    };
    std::vector<int> in{0, 1, 2}, out{3, 4};
    StateVector got = s;
    coherent_oracle_apply(got, f, in, out);
    for (uint64_t x = 0; x < 8; x++) {
        uint64_t y = f(BitVec::from_uint(x, 3)).to_uint();
        EXPECT_EQ(got.amps()[x * 4 + y], s.amps()[x * 4]);
    }
    std::vector<int> clash{2, 3};
    EXPECT_THROW(coherent_oracle_apply(got, f, in, clash), ParameterError);
}

TEST(Obfuscator, hadamard_package_width) {
    Rng rng(82);
    ObfuscationPackage pkg = qobf(parse_circuit("qubits 1\nH 0\n"), StateVector(0), ObfParams{}, rng);
    EXPECT_EQ(pkg.n, 1);
    EXPECT_EQ(pkg.v_tilde_width(), pkg.plm->num_wires * 3);
    EXPECT_EQ(pkg.v_tilde_width(), 30);
    EXPECT_EQ(pkg.t(), pkg.plm->t());
}

TEST(Obfuscator, first_round_answers_with_a_label) {
    Rng rng(83);
    ObfuscationPackage pkg = qobf(parse_circuit("qubits 1\nH 0\n"), StateVector(0), ObfParams{}, rng);
    BitVec i = BitVec::from_string("01");
    Bytes sig = pkg.token->sign(i);
    std::set<std::string> seen;
    for (int k = 0; k < 12; k++) {
        FactorState world = pkg.state;
        StatusWord w = pkg.oracle->round(world, pkg.v_tilde, pkg.instructions[0], 1, i, sig, {}, rng, nullptr);
        EXPECT_FALSE(w.bottom);
        EXPECT_EQ((int)w.value.size(), pkg.kappa);
        seen.insert(w.value.str());
    }
    // One label per value of r_1.
    EXPECT_LE(seen.size(), 2u);
}

TEST(Obfuscator, bad_signature_gives_bottom) {
    Rng rng(84);
    ObfuscationPackage pkg = qobf(parse_circuit("qubits 1\nH 0\n"), StateVector(0), ObfParams{}, rng);
    BitVec i = BitVec::from_string("10");
    Bytes sig = pkg.token->sign(i);
    sig[0] ^= 1;
    FactorState world = pkg.state;
    StatusWord w = pkg.oracle->round(world, pkg.v_tilde, pkg.instructions[0], 1, i, sig, {}, rng, nullptr);
    EXPECT_TRUE(w.bottom);
    BitVec other = BitVec::from_string("11");
    EXPECT_TRUE(oracle_f(pkg, 1, BitVec(pkg.v_tilde_width()), other, sig, {}).bottom);
}

TEST(Obfuscator, forged_label_gives_bottom) {
    Rng rng(85);
    ObfuscationPackage pkg = qobf(parse_circuit("qubits 1\nH 0\n"), StateVector(0), ObfParams{}, rng);
    BitVec i = BitVec::from_string("00");
    Bytes sig = pkg.token->sign(i);
    FactorState world = pkg.state;
    std::vector<BitVec> labels{BitVec(pkg.kappa)};
    StatusWord w = pkg.oracle->round(world, pkg.v_tilde, pkg.instructions[1], 2, i, sig, labels, rng, nullptr);
    EXPECT_TRUE(w.bottom);
}

TEST(Obfuscator, package_is_single_use) {
    Rng rng(86);
    Circuit u = parse_circuit("qubits 1\nX 0\n");
    ObfuscationPackage pkg = qobf(u, StateVector(0), ObfParams{}, rng);
    StateVector in = StateVector::random(2, rng);
    qeval(pkg, in, rng);
    EXPECT_THROW(qeval(pkg, in, rng), OneTimeUseError);
}

TEST(Obfuscator, evaluates_small_programs_with_an_entangled_reference) {
    Rng rng(87);
    for (const char *text : {"qubits 1\nH 0\n", "qubits 1\nT 0\n", "qubits 1\nS 0\nH 0\n"}) {
        Circuit u = parse_circuit(text);
        ObfuscationPackage pkg = qobf(u, StateVector(0), ObfParams{}, rng);
        StateVector in = StateVector::random(2, rng);
        QEvalResult r = qeval(pkg, in, rng);
        EXPECT_EQ(r.bottom_events, 0) << text;
        EXPECT_NEAR(fidelity(r.output, expected_output(u, in)), 1, 1e-9) << text;
        EXPECT_EQ((int)r.transcript.size(), pkg.t());
    }
}

TEST(Obfuscator, two_qubit_program) {
    Rng rng(88);
    int old = qubit_cap();
    set_qubit_cap(26);
    Circuit u = parse_circuit("qubits 2\nCNOT 0 1\n");
    ObfuscationPackage pkg = qobf(u, StateVector(0), ObfParams{}, rng);
    StateVector in = StateVector::random(2, rng);
    QEvalResult r = qeval(pkg, in, rng);
    set_qubit_cap(old);
    EXPECT_NEAR(fidelity(r.output, expected_output(u, in)), 1, 1e-9);
    EXPECT_LE(r.peak_qubits, 26);
}

TEST(Obfuscator, simulated_package_has_the_same_behaviour) {
    Rng rng(89);
    Circuit u = parse_circuit("qubits 1\nT 0\nH 0\n");
    ObfuscationPackage pkg = qobf(u, StateVector(0), ObfParams{}, rng);
    PackageShape shape = package_shape(pkg);
    ObfuscationPackage sim = sim_package(shape, make_sim_unitary(u), rng);
    EXPECT_EQ(sim.v_tilde_width(), pkg.v_tilde_width());
    EXPECT_EQ(sim.t(), pkg.t());
    StateVector in = StateVector::random(2, rng);
    QEvalResult r = qeval(sim, in, rng);
    EXPECT_EQ(r.bottom_events, 0);
    EXPECT_NEAR(fidelity(r.output, expected_output(u, in)), 1, 1e-9);
}

TEST(Obfuscator, dense_and_factorized_rounds_agree) {
    // A one-round program: the answer register is small enough to hold coherently.
    auto plm = std::make_shared<const PLMProgram>(compile(parse_circuit("qubits 1\nmeasure 0\n")));
    ASSERT_EQ(plm->t(), 1);
    Rng rng(90);
    StateVector psi = StateVector::random(1, rng);
    auto [vk, token] = token_gen(0, rng);
    Bytes sig = token.sign(BitVec(0));
    AnswerDist dists[2];
    for (int dense = 0; dense < 2; dense++) {
        Rng key_rng(91);
        ObfParams params;
        params.dense = dense;
        std::vector<PlainFactor> plain{PlainFactor{psi, {0}}};
        AuthenticatedPlm a = authenticate_plm(plm, plain, vk, params, key_rng);
        StatusWord w = a.oracle->round(a.state, a.v_tilde, a.instructions[0], 1, BitVec(0), sig, {}, key_rng,
                                       &dists[dense]);
        EXPECT_FALSE(w.bottom);
    }
    double p1 = std::norm(psi.amps()[1]);
    for (const AnswerDist &d : dists) {
        EXPECT_NEAR(d.at(BitVec::from_string("00")), 1 - p1, 1e-10);
        EXPECT_NEAR(d.at(BitVec::from_string("10")), p1, 1e-10);
    }
}

TEST(Obfuscator, output_label_distribution_is_exact_and_uniform) {
    Rng rng(92);
    Circuit u = parse_circuit("qubits 1\nT 0\nH 0\n");
    ObfuscationPackage pkg = qobf(u, StateVector(0), ObfParams{}, rng);
    StateVector in = StateVector::random(2, rng);
    QEvalResult r = qeval(pkg, in, rng, true);
    ASSERT_EQ((int)r.answer_dists.size(), pkg.t());
    ASSERT_EQ(r.final_dist.size(), 4u);
    double total = 0;
    for (const auto &[label, pr] : r.final_dist) {
        EXPECT_FALSE(label[label.size() - 1]);
        EXPECT_NEAR(pr, 0.25, 1e-10);
        total += pr;
    }
    EXPECT_NEAR(total, 1, 1e-12);
    EXPECT_GT(r.final_dist.count(r.transcript.back().packed()), 0u);
    // The last round alone leaves only its own read random.
    EXPECT_LE(r.answer_dists.back().size(), 2u);
}
