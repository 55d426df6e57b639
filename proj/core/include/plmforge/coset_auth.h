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

#ifndef PLMFORGE_COSET_AUTH_H
#define PLMFORGE_COSET_AUTH_H

#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "plmforge/bitvec.h"
#include "plmforge/f2_linalg.h"
#include "plmforge/rng.h"
#include "plmforge/statevec.h"

namespace plmforge {

/// Key of the coset authentication code over blocks of 2 lambda + 1 qubits.
///
/// S has dimension lambda and Delta lies outside it. The Hadamard-side data is derived:
/// s_hat = (S + Delta)^perp, and delta_hat is the lexicographically least vector of
/// S^perp outside s_hat, so <delta_hat, Delta> = 1.
struct AuthKey {
    int lambda = 0;
    int n = 0;
    Subspace S;
    BitVec delta;
    std::vector<BitVec> x;
    std::vector<BitVec> z;

    Subspace s_delta;
    Subspace s_hat;
    BitVec delta_hat;

    int block() const {
        return 2 * lambda + 1;
    }

    /// Validates the fields and fills in the derived ones.
    static AuthKey make(int lambda, int n, Subspace S, BitVec delta, std::vector<BitVec> x, std::vector<BitVec> z);

    nlohmann::json to_json() const;
    static AuthKey from_json(const nlohmann::json &j);
    bool operator==(const AuthKey &other) const;
};

AuthKey keygen(int lambda, int n, Rng &rng);

/// Replaces each listed wire by a block: sum_b a_b |b> -> sum_b a_b X^x Z^z |S + b Delta>.
/// Wire logical_wires[k] uses the pads of key block key_blocks[k] (k when omitted).
/// Blocks take the place of their wire; other wires keep their relative order.
StateVector enc(const AuthKey &key, const StateVector &s, std::span<const int> logical_wires);
StateVector enc(const AuthKey &key, const StateVector &s, std::span<const int> logical_wires,
                std::span<const int> key_blocks);

/// Normalized |S + v> on one block, before padding.
StateVector coset_state(const Subspace &S, const BitVec &v);

/// Transversal lift of (theta, G) on n logical wires to n blocks laid out consecutively.
std::pair<BitVec, LinearGate> eval_lift(int lambda, const BitVec &theta, const LinearGate &g);

/// Pads after G: CNOT(i, j) maps ((z_i, x_i), (z_j, x_j)) to ((z_i ^ z_j, x_i), (z_j, x_i ^ x_j)).
std::pair<std::vector<BitVec>, std::vector<BitVec>> updated_pads(const AuthKey &key, const LinearGate &g);

/// Decodes a standard-basis outcome c of all n blocks measured after H^theta~ G~.
/// Returns ⊥ when any block lies outside both valid cosets.
StatusWord dec(const AuthKey &key, const BitVec &theta, const LinearGate &g, const BitVec &c);
/// Decodes one block with explicit pads; returns -1 for ⊥.
int dec_block(const AuthKey &key, bool theta, const BitVec &z_pad, const BitVec &x_pad, const BitVec &c);
bool ver(const AuthKey &key, const BitVec &theta, const LinearGate &g, const BitVec &c);

/// The key k_P with x_i ^= u_i Delta and z_i ^= v_i delta_hat for P = X^u Z^v, so that
/// Enc_{k_P} = Enc_k o P up to global phase.
AuthKey pauli_key_update(const AuthKey &key, const Pauli &p);

}  // namespace plmforge

#endif
