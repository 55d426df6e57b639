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

#include "plmforge/statevec.h"

#include <cmath>

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

namespace {

using Mat2 = std::array<cplx, 4>;
const double r2 = 1 / std::sqrt(2.0);

/// Independent dense application of a one-qubit matrix, by index arithmetic.
std::vector<cplx> apply_dense(const std::vector<cplx> &v, int n, int q, const Mat2 &m) {
    std::vector<cplx> out(v.size());
    for (size_t a = 0; a < v.size(); a++) {
        int bit = (a >> (n - 1 - q)) & 1;
        size_t a0 = a & ~(size_t{1} << (n - 1 - q));
        size_t a1 = a0 | (size_t{1} << (n - 1 - q));
        out[a] = m[bit * 2] * v[a0] + m[bit * 2 + 1] * v[a1];
    }
    return out;
}

void expect_near(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    ASSERT_EQ(a.size(), b.size());
    for (size_t k = 0; k < a.size(); k++) {
        EXPECT_NEAR(std::abs(a[k] - b[k]), 0, 1e-12) << "index " << k;
    }
}

}  // namespace

TEST(StateVector, one_qubit_gates_match_matrices) {
    Rng rng(1);
    cplx i(0, 1);
    const std::pair<Gate, Mat2> cases[] = {
        {Gate::X, {0, 1, 1, 0}},
        {Gate::Z, {1, 0, 0, -1}},
        {Gate::H, {r2, r2, r2, -r2}},
        {Gate::S, {1, 0, 0, i}},
        {Gate::T, {1, 0, 0, std::exp(i * M_PI / 4.0)}},
    };
    for (const auto &[g, m] : cases) {
        for (int q = 0; q < 3; q++) {
            StateVector s = StateVector::random(3, rng);
            std::vector<cplx> want = apply_dense(s.amps(), 3, q, m);
            s.apply_gate(g, {q});
            expect_near(s.amps(), want);
        }
    }
}

TEST(StateVector, qubit_zero_is_most_significant) {
    StateVector s(3);
    s.x(0);
    EXPECT_NEAR(std::abs(s.amp(BitVec::from_string("100"))), 1, 1e-15);
    s.cnot(0, 2);
    EXPECT_NEAR(std::abs(s.amp(BitVec::from_string("101"))), 1, 1e-15);
    s.swap(1, 2);
    EXPECT_NEAR(std::abs(s.amp(BitVec::from_string("110"))), 1, 1e-15);
}

TEST(StateVector, pauli_convention_x_after_z) {
    // P_(z,x) = X^x Z^z on |+>: Z|+> = |->, X|-> = -|->.
    StateVector s(1);
    s.h(0);
    std::vector<int> w{0};
    s.apply_pauli(Pauli{BitVec::from_string("1"), BitVec::from_string("1")}, w);
    EXPECT_NEAR(s.amps()[0].real(), -r2, 1e-15);
    EXPECT_NEAR(s.amps()[1].real(), r2, 1e-15);
    s.apply_pauli_dag(Pauli{BitVec::from_string("1"), BitVec::from_string("1")}, w);
    EXPECT_NEAR(s.amps()[0].real(), r2, 1e-15);
}

TEST(StateVector, grouped_measurement_matches_manual_conjugation) {
    Rng rng(2);
    for (int trial = 0; trial < 20; trial++) {
        StateVector s = StateVector::random(3, rng);
        BitVec theta = BitVec::from_uint(rng.below(8), 3);
        LinearGate g{{0, 2}};
        // f = parity of all bits.
        MeasSpec spec{[](const BitVec &b) { return BitVec::from_uint(b.popcount() & 1, 1); }, theta, g};
        std::vector<int> wires{0, 1, 2};
        auto dist = measure_fn_distribution(s, spec, wires);

        StateVector c = s;
        c.cnot(0, 2);
        for (int q = 0; q < 3; q++) {
            if (theta[q]) {
                c.h(q);
            }
        }
        double p1 = 0;
        for (size_t a = 0; a < c.dim(); a++) {
            if (__builtin_popcountll(a) & 1) {
                p1 += std::norm(c.amps()[a]);
            }
        }
        EXPECT_NEAR(dist[BitVec::from_string("1")], p1, 1e-12);
        EXPECT_NEAR(dist[BitVec::from_string("0")], 1 - p1, 1e-12);

        StateVector post = s;
        double p = project_fn(post, spec, wires, BitVec::from_string("1"));
        EXPECT_NEAR(p, p1, 1e-12);
        EXPECT_NEAR(post.norm_squared(), 1, 1e-12);
        EXPECT_NEAR(measure_fn_distribution(post, spec, wires)[BitVec::from_string("1")], 1, 1e-12);
    }
}

TEST(StateVector, measure_out_removes_wires) {
    Rng rng(3);
    StateVector s = epr_pairs(1);
    std::vector<int> w{0};
    BitVec b = measure_out(s, w, rng);
    EXPECT_EQ(s.num_qubits(), 1);
    EXPECT_NEAR(std::norm(s.amps()[b[0]]), 1, 1e-12);
}

TEST(StateVector, reduced_density_of_bell_pair_is_maximally_mixed) {
    StateVector s = epr_pairs(1);
    std::vector<int> keep{1};
    auto rho = reduced_density(s, keep);
    EXPECT_NEAR(rho[0].real(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(rho[1]), 0, 1e-15);
    EXPECT_NEAR(rho[3].real(), 0.5, 1e-15);
}

TEST(StateVector, trace_distance_of_orthogonal_pure_states) {
    std::vector<cplx> a{1, 0}, b{0, 1};
    EXPECT_NEAR(pure_trace_distance(a, b), 1, 1e-15);
    // |0><0| vs |+><+|: distance sqrt(1 - 1/2).
    std::vector<cplx> rho{1, 0, 0, 0}, sigma{0.5, 0.5, 0.5, 0.5};
    EXPECT_NEAR(trace_distance(rho, sigma, 2), std::sqrt(0.5), 1e-12);
}

TEST(StateVector, permute_moves_old_qubit_to_perm_entry) {
    StateVector s = StateVector::basis(BitVec::from_string("100"));
    std::vector<int> perm{2, 0, 1};
    StateVector p = permute_wires(s, perm);
    EXPECT_NEAR(std::abs(p.amp(BitVec::from_string("001"))), 1, 1e-15);
}

TEST(StateVector, cap_is_enforced) {
    int old = qubit_cap();
    set_qubit_cap(4);
    EXPECT_THROW(StateVector(5), ResourceError);
    set_qubit_cap(old);
}

TEST(StateVector, t_on_plus) {
    StateVector s(1);
    s.h(0);
    s.t(0);
    EXPECT_NEAR(std::abs(s.amps()[0] - r2), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.amps()[1] - r2 * std::exp(cplx(0, M_PI / 4))), 0, 1e-15);
}

TEST(StateVector, parity_of_bell_pair_is_even) {
    StateVector s = epr_pairs(1);
    MeasSpec spec{[](const BitVec &b) { return BitVec::from_uint(b[0] ^ b[1], 1); }, BitVec(2), {}};
    std::vector<int> w{0, 1};
    EXPECT_NEAR(measure_fn_distribution(s, spec, w)[BitVec::from_string("0")], 1, 1e-15);
}

TEST(StateVector, hadamard_basis_read_of_plus) {
    StateVector s(1);
    s.h(0);
    MeasSpec spec{[](const BitVec &b) { return b; }, BitVec::from_string("1"), {}};
    std::vector<int> w{0};
    EXPECT_NEAR(measure_fn_distribution(s, spec, w)[BitVec::from_string("0")], 1, 1e-15);
}

TEST(StateVector, long_linear_gate_matches_cnot_sequence) {
    Rng rng(31);
    for (int trial = 0; trial < 5; trial++) {
        StateVector s = StateVector::random(11, rng);
        std::vector<int> wires{9, 0, 4, 7, 2, 10};
        LinearGate g;
        for (int k = 0; k < 7; k++) {
            int c = (int)rng.below(6);
            int t = (int)rng.below(5);
            t += t >= c;
            g.emplace_back(c, t);
        }
        StateVector a = s, b = s;
        a.apply_linear(g, wires);
        for (auto [c, t] : g) {
            b.cnot(wires[c], wires[t]);
        }
        EXPECT_NEAR(fidelity(a, b), 1, 1e-12);
        a.apply_linear(g, wires, true);
        EXPECT_NEAR(fidelity(a, s), 1, 1e-12);
    }
}
