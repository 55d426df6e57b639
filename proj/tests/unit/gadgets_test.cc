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

#include "plmforge/gadgets.h"

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

// The gadget circuits are rebuilt here gate by gate, with the frame rules written
// out by hand, and the library's frame functions must agree with both.

namespace {

BitVec bit(bool b) {
    return BitVec::from_uint(b, 1);
}

double reduced_fidelity(const StateVector &s, int wire, const StateVector &want) {
    std::vector<int> keep{wire};
    auto rho = reduced_density(s, keep);
    cplx acc = 0;
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            acc += std::conj(want.amps()[a]) * rho[a * 2 + b] * want.amps()[b];
        }
    }
    return acc.real();
}

StateVector with_frame(StateVector psi, const std::vector<std::pair<bool, bool>> &zx) {
    for (size_t q = 0; q < zx.size(); q++) {
        if (zx[q].first) {
            psi.z((int)q);
        }
        if (zx[q].second) {
            psi.x((int)q);
        }
    }
    return psi;
}

const MeasSpec kRead{[](const BitVec &b) { return b; }, BitVec(), {}};

}  // namespace

TEST(GadgetFrames, hadamard_frame_rule) {
    Rng rng(21);
    const Gadget &g = gadget_for(GadgetKind::H);
    for (int fr = 0; fr < 4; fr++) {
        bool z = fr & 1, x = fr >> 1;
        StateVector psi = StateVector::random(1, rng);
        StateVector magic(2);
        magic.h(0);
        magic.h(1);
        magic.cz(0, 1);
        StateVector want = psi;
        want.h(0);
        for (int c = 0; c < 4; c++) {
            bool c0 = c >> 1, c1 = c & 1;
            StateVector s = tensor(with_frame(psi, {{z, x}}), magic);
            s.cnot(0, 1);
            s.h(0);
            std::vector<int> w{0, 1};
            BitVec lab(2);
            lab.set(0, c0);
            lab.set(1, c1);
            double p = project_out(s, w, lab);
            ASSERT_NEAR(p, 0.25, 1e-12);
            // Hand rule: X^(z^c0) Z^(x^c1) H psi remains.
            bool xk = z ^ c0, zk = x ^ c1;
            BitVec frame(2);
            frame.set(0, z);
            frame.set(1, x);
            auto lib = eval_output_frames(g, frame, lab);
            ASSERT_EQ(lib.size(), 1u);
            EXPECT_EQ(lib[0].first, zk);
            EXPECT_EQ(lib[0].second, xk);
            if (xk) {
                s.x(0);
            }
            if (zk) {
                s.z(0);
            }
            EXPECT_NEAR(fidelity(s, want), 1, 1e-10);
        }
    }
}

TEST(GadgetFrames, cnot_frame_rule) {
    Rng rng(22);
    const Gadget &g = gadget_for(GadgetKind::CNOT);
    for (int fr = 0; fr < 16; fr++) {
        bool zi = fr & 1, xi = fr >> 1 & 1, zj = fr >> 2 & 1, xj = fr >> 3 & 1;
        StateVector psi = StateVector::random(2, rng);
        StateVector want = psi;
        want.cnot(0, 1);
        // EPR pairs (k, m) and (l, s), laid out as k l m s.
        StateVector magic = epr_pairs(2);
        for (int c = 0; c < 16; c++) {
            StateVector s = tensor(with_frame(psi, {{zi, xi}, {zj, xj}}), magic);
            s.cnot(0, 1);
            s.cnot(0, 2);
            s.cnot(1, 3);
            s.h(0);
            s.h(1);
            std::vector<int> w{0, 1, 2, 3};
            BitVec lab = BitVec::from_uint(c, 4);
            if (project_out(s, w, lab) < 1e-12) {
                continue;
            }
            bool c0 = lab[0], c1 = lab[1], c2 = lab[2], c3 = lab[3];
            bool xm = xi ^ c2, zm = zi ^ zj ^ c0, xs = xi ^ xj ^ c3, zs = zj ^ c1;
            BitVec frame(4);
            frame.set(0, zi);
            frame.set(1, xi);
            frame.set(2, zj);
            frame.set(3, xj);
            auto lib = eval_output_frames(g, frame, lab);
            ASSERT_EQ(lib.size(), 2u);
            EXPECT_EQ(lib[0], std::make_pair(zm, xm));
            EXPECT_EQ(lib[1], std::make_pair(zs, xs));
            if (xm) {
                s.x(0);
            }
            if (zm) {
                s.z(0);
            }
            if (xs) {
                s.x(1);
            }
            if (zs) {
                s.z(1);
            }
            EXPECT_NEAR(fidelity(s, want), 1, 1e-10);
        }
    }
}

TEST(GadgetFrames, t_frame_rule) {
    Rng rng(23);
    const Gadget &g = gadget_for(GadgetKind::T);
    for (int fr = 0; fr < 4; fr++) {
        bool z = fr & 1, x = fr >> 1;
        StateVector psi = StateVector::random(1, rng);
        StateVector want = psi;
        want.t(0);
        StateVector pt(1);
        pt.h(0);
        pt.t(0);
        StateVector ps(1);
        ps.h(0);
        ps.s_dag(0);
        // Wires i, j (phi_T), k (phi_Sdag), l and m (EPR).
        StateVector start = tensor(tensor(tensor(with_frame(psi, {{z, x}}), pt), ps), epr_pairs(1));
        for (int c = 0; c < 16; c++) {
            BitVec lab = BitVec::from_uint(c, 4);
            bool c0 = lab[0], c1 = lab[1], c2 = lab[2], c3 = lab[3];
            StateVector s = start;
            s.cnot(1, 0);
            std::vector<int> wi{0};
            if (project_fn(s, kRead, wi, bit(c0)) < 1e-12) {
                continue;
            }
            bool a = c0 ^ x;
            std::vector<int> jk{1, 2};
            MeasSpec d1{[a](const BitVec &b) { return bit(a ? (b[0] ^ b[1]) : b[1]); }, BitVec(), {}};
            if (project_fn(s, d1, jk, bit(c1)) < 1e-12) {
                continue;
            }
            s.cnot(1, 3);
            s.h(1);
            s.h(2);
            MeasSpec d2{[a](const BitVec &b) { return bit(a ? (b[0] ^ b[1]) : b[0]); }, BitVec(), {}};
            if (project_fn(s, d2, jk, bit(c2)) < 1e-12) {
                continue;
            }
            std::vector<int> wl{3};
            if (project_fn(s, kRead, wl, bit(c3)) < 1e-12) {
                continue;
            }
            bool xm = c0 ^ x ^ c3;
            bool zm = z ^ (a & c1) ^ c2;
            BitVec frame(2);
            frame.set(0, z);
            frame.set(1, x);
            auto lib = eval_output_frames(g, frame, lab);
            ASSERT_EQ(lib.size(), 1u);
            EXPECT_EQ(lib[0], std::make_pair(zm, xm));
            if (xm) {
                s.x(4);
            }
            if (zm) {
                s.z(4);
            }
            EXPECT_NEAR(reduced_fidelity(s, 4, want), 1, 1e-10);
        }
    }
}

TEST(Gadgets, library_run_matches_ideal_gate) {
    Rng rng(24);
    for (GadgetKind kind : {GadgetKind::H, GadgetKind::CNOT, GadgetKind::T}) {
        const Gadget &g = gadget_for(kind);
        StateVector magic(g.magic.width);
        apply_circuit(magic, g.magic.prep, BitVec(0));
        for (int trial = 0; trial < 10; trial++) {
            StateVector psi = StateVector::random(g.num_inputs, rng);
            StateVector s = tensor(psi, magic);
            BitVec frame(2 * g.num_inputs);
            BitVec r = run_gadget_steps(g, s, frame, rng);
            auto fr = eval_output_frames(g, frame, r);
            for (size_t q = 0; q < fr.size(); q++) {
                if (fr[q].second) {
                    s.x(g.outputs[q]);
                }
                if (fr[q].first) {
                    s.z(g.outputs[q]);
                }
            }
            StateVector want = psi;
            if (kind == GadgetKind::H) {
                want.h(0);
            } else if (kind == GadgetKind::CNOT) {
                want.cnot(0, 1);
            } else {
                want.t(0);
            }
            std::vector<int> out(g.outputs.begin(), g.outputs.end());
            StateVector got = permute_wires(s, [&] {
                // Bring the output wires to the front, in order.
                std::vector<int> perm(s.num_qubits());
                int next = (int)out.size();
                for (int q = 0; q < s.num_qubits(); q++) {
                    auto it = std::find(out.begin(), out.end(), q);
                    perm[q] = it != out.end() ? (int)(it - out.begin()) : next++;
                }
                return perm;
            }());
            std::vector<int> keep(out.size());
            for (size_t k = 0; k < out.size(); k++) {
                keep[k] = (int)k;
            }
            auto rho = reduced_density(got, keep);
            cplx acc = 0;
            size_t d = want.dim();
            for (size_t a = 0; a < d; a++) {
                for (size_t b = 0; b < d; b++) {
                    acc += std::conj(want.amps()[a]) * rho[a * d + b] * want.amps()[b];
                }
            }
            EXPECT_NEAR(acc.real(), 1, 1e-10) << gadget_name(kind);
        }
    }
}

TEST(Gadgets, basis_states_give_their_labels) {
    for (GadgetKind kind : {GadgetKind::H, GadgetKind::CNOT, GadgetKind::T}) {
        const Gadget &g = gadget_for(kind);
        size_t k = g.measured.size();
        for (uint64_t label = 0; label < (uint64_t{1} << k); label++) {
            BitVec lab = BitVec::from_uint(label, k);
            StateVector s = basis_state(kind, lab);
            EXPECT_NEAR(run_gadget_forced(g, s, BitVec(2 * g.num_inputs), lab), 1, 1e-10);
        }
    }
    EXPECT_THROW(basis_state(GadgetKind::H, BitVec(3)), ParameterError);
}
