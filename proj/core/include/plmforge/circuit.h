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

#ifndef PLMFORGE_CIRCUIT_H
#define PLMFORGE_CIRCUIT_H

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "plmforge/bitvec.h"
#include "plmforge/gates.h"
#include "plmforge/rng.h"
#include "plmforge/statevec.h"

namespace plmforge {

struct GateApp {
    Gate gate;
    std::vector<int> wires;
    /// Classical input bit gating this gate, or -1 when unconditional.
    int cbit = -1;

    bool controlled() const {
        return cbit >= 0;
    }
    bool operator==(const GateApp &other) const = default;
};

/// Gate list over wires [0, n_q) (inputs) followed by [n_q, n_q + aux) (ancillas).
struct Circuit {
    int n_q = 0;
    int n_c = 0;
    int aux = 0;
    std::vector<GateApp> gates;
    /// Wires measured in the standard basis at the end; empty for unitary-output circuits.
    std::vector<int> measure;

    int width() const {
        return n_q + aux;
    }
    void append(Gate g, std::vector<int> wires, int cbit = -1) {
        gates.push_back(GateApp{g, std::move(wires), cbit});
    }
    bool has_oracle_calls() const;
    /// Throws ParameterError describing the first structural problem.
    void validate() const;
    bool operator==(const Circuit &other) const = default;
};

/// Line format: `qubits N`, `cin K`, `aux M`, gate lines such as `H 0`, `CNOT 0 1`,
/// `cX 0 @1` (classically controlled), `U 0 1` / `Udag 0 1` (opaque oracle calls),
/// and a final `measure w...`. `#` starts a comment. Throws ParseError.
Circuit parse_circuit(std::string_view text);
std::string render_circuit(const Circuit &c);
nlohmann::json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const nlohmann::json &j);

/// Implements opaque U / Udag calls on the given wires.
using OracleImpl = std::function<void(StateVector &s, std::span<const int> wires, bool dagger)>;

/// Applies c's gates to s, reading circuit wire w from s's wire wire_map[w].
/// Classically-controlled gates fire when cin has the control bit set.
void apply_circuit(StateVector &s, const Circuit &c, const BitVec &cin, std::span<const int> wire_map,
                   const OracleImpl *oracle = nullptr);
/// Same, with the identity wire map.
void apply_circuit(StateVector &s, const Circuit &c, const BitVec &cin, const OracleImpl *oracle = nullptr);

struct RunOutput {
    StateVector state;
    std::optional<BitVec> measured;
};

/// Reference semantics: gates on (input tensor aux), then the final measurement.
/// A zero-qubit aux stands for |0...0> on the circuit's ancillas.
RunOutput run_direct(const Circuit &c, const BitVec &cin, const StateVector &input, const StateVector &aux, Rng &rng,
                     const OracleImpl *oracle = nullptr);

/// Exact distribution of the final measurement of c on (input tensor aux).
std::map<BitVec, double> direct_distribution(const Circuit &c, const BitVec &cin, const StateVector &input,
                                             const StateVector &aux);

/// Inverse circuit. S^dag and T^dag are expressed as S^3 and T^7. Rejects measurements.
Circuit inverse_circuit(const Circuit &c);

/// Replaces every opaque call U on register R by
/// (G_1^dag...G_k^dag) SWAP_{B,R} (G_k...G_1) SWAP_{B,R}, and every Udag by
/// SWAP_{B,R} (G_1^dag...G_k^dag) SWAP_{B,R} (G_k...G_1), where G_1..G_k are the gates of
/// `inner` (n inputs on B, inner ancillas on E). New ancillas are appended after
/// outer's: first E, then B.
Circuit rewrite_oracle_program(const Circuit &outer, const Circuit &inner, int n);

/// Controlled version of a circuit on wire `control`, built from exact Clifford+T
/// decompositions. Supports X, Z, H, S, CNOT, SWAP; T has no exact ancilla-free
/// controlled form and is rejected. `control` must be a wire index of the returned
/// circuit's coordinate system; `wire_map` places the original wires.
void append_controlled(Circuit &out, const Circuit &c, int control, std::span<const int> wire_map);

/// Builds ctrl-(U^dag A U) from ctrl-(U^dag SWAP U) and ctrl-A.
/// Wires: 0 control, then B (n target wires U acts on), then C (n workspace wires),
/// then D (the extra wires of A, which acts on (C, D)), then inner's ancillas.
/// On control 1 the circuit applies U^dag_B A_{B,D} U_B and leaves C unchanged.
Circuit ctrl_swap_sandwich(const Circuit &inner, const Circuit &a);

/// Randomized equality check up to global phase on Haar product inputs over all wires.
bool unitary_equivalent_up_to_phase(const Circuit &c1, const Circuit &c2, int trials, Rng &rng);

}  // namespace plmforge

#endif
