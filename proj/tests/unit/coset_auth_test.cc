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

#include "plmforge/coset_auth.h"

#include <cmath>

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

namespace {

std::vector<int> iota(int n) {
    std::vector<int> w(n);
    for (int k = 0; k < n; k++) {
        w[k] = k;
    }
    return w;
}

}  // namespace

TEST(CosetAuth, keygen_invariants) {
    Rng rng(51);
    for (int lambda = 1; lambda <= 3; lambda++) {
        AuthKey k = keygen(lambda, 2, rng);
        EXPECT_EQ(k.block(), 2 * lambda + 1);
        EXPECT_EQ((int)k.S.dim(), lambda);
        EXPECT_FALSE(k.S.contains(k.delta));
        EXPECT_TRUE(k.delta_hat.dot(k.delta));
        EXPECT_TRUE(k.S.orthogonal_complement().contains(k.delta_hat));
        EXPECT_FALSE(k.s_hat.contains(k.delta_hat));
        EXPECT_EQ(AuthKey::from_json(k.to_json()), k);
    }
}

TEST(CosetAuth, enc_matches_hand_built_codeword) {
    Rng rng(52);
    AuthKey k = keygen(1, 1, rng);
    StateVector psi = StateVector::random(1, rng);
    StateVector got = enc(k, psi, iota(1));
    double norm = 1 / std::sqrt(2.0);
    for (uint64_t c = 0; c < 8; c++) {
        BitVec cv = BitVec::from_uint(c, 3);
        BitVec u = cv ^ k.x[0];
        // X^x Z^z |u> = (-1)^{z.u} |u + x>.
        double phase = k.z[0].dot(u) ? -1 : 1;
        cplx want = 0;
        if (k.S.contains(u)) {
            want += phase * norm * psi.amps()[0];
        }
        if (k.S.contains(u ^ k.delta)) {
            want += phase * norm * psi.amps()[1];
        }
        EXPECT_NEAR(std::abs(got.amps()[c] - want), 0, 1e-12) << cv.str();
    }
}

TEST(CosetAuth, hadamard_side_decodes_x_basis) {
    Rng rng(53);
    for (int lambda = 1; lambda <= 2; lambda++) {
        AuthKey k = keygen(lambda, 1, rng);
        for (int sign = 0; sign < 2; sign++) {
            StateVector psi(1);
            if (sign) {
                psi.x(0);
            }
            psi.h(0);
            StateVector c = enc(k, psi, iota(1));
            BitVec theta = BitVec::from_string("1");
            auto [tt, gt] = eval_lift(lambda, theta, {});
            OutcomeFn f = [&](const BitVec &bits) {
                StatusWord w = dec(k, theta, {}, bits);
                return w.value.concat(BitVec::from_uint(w.bottom, 1));
            };
            auto d = measure_fn_distribution(c, MeasSpec{f, tt, gt}, iota(c.num_qubits()));
            BitVec want(2);
            want.set(0, sign);
            EXPECT_NEAR(d[want], 1, 1e-12);
        }
    }
}

TEST(CosetAuth, transversal_cnot_with_pad_update) {
    Rng rng(54);
    AuthKey k = keygen(1, 2, rng);
    StateVector psi = StateVector::random(2, rng);
    LinearGate g{{0, 1}};
    auto [theta_t, g_t] = eval_lift(1, BitVec(2), g);
    EXPECT_EQ(g_t, (LinearGate{{0, 3}, {1, 4}, {2, 5}}));
    StateVector c = enc(k, psi, iota(2));
    c.apply_linear(g_t, iota(6));
    StateVector moved = psi;
    moved.cnot(0, 1);
    auto [z, x] = updated_pads(k, g);
    AuthKey k2 = AuthKey::make(1, 2, k.S, k.delta, x, z);
    EXPECT_NEAR(fidelity(c, enc(k2, moved, iota(2))), 1, 1e-12);
}

TEST(CosetAuth, dec_rejects_outside_both_cosets) {
    Rng rng(55);
    AuthKey k = keygen(1, 1, rng);
    int valid = 0;
    for (uint64_t c = 0; c < 8; c++) {
        int m = dec_block(k, false, k.z[0], k.x[0], BitVec::from_uint(c, 3));
        valid += m >= 0;
    }
    // |S| = 2 vectors per coset, two cosets.
    EXPECT_EQ(valid, 4);
}

TEST(CosetAuth, enc_blocks_replace_their_wire) {
    Rng rng(56);
    AuthKey k = keygen(1, 1, rng);
    StateVector psi = StateVector::random(2, rng);
    std::vector<int> wires{1};
    StateVector c = enc(k, psi, wires);
    EXPECT_EQ(c.num_qubits(), 4);
    // Wire 0 is untouched: its reduced state is unchanged.
    std::vector<int> keep{0};
    auto a = reduced_density(psi, keep), b = reduced_density(c, keep);
    for (size_t e = 0; e < 4; e++) {
        EXPECT_NEAR(std::abs(a[e] - b[e]), 0, 1e-12);
    }
}

TEST(CosetAuth, key_update_switches_pads) {
    Rng rng(57);
    AuthKey k = keygen(2, 1, rng);
    Pauli p{BitVec::from_string("1"), BitVec::from_string("1")};
    AuthKey m = pauli_key_update(k, p);
    EXPECT_EQ(m.x[0], k.x[0] ^ k.delta);
    EXPECT_EQ(m.z[0], k.z[0] ^ k.delta_hat);
    StateVector psi = StateVector::random(1, rng);
    StateVector moved = psi;
    moved.apply_pauli(p, iota(1));
    EXPECT_NEAR(fidelity(enc(m, psi, iota(1)), enc(k, moved, iota(1))), 1, 1e-10);
}
