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

#include <vector>

#include "plmforge/errors.h"

namespace plmforge {

namespace {

void check_lists(const StateVector &s, std::span<const int> msg, std::span<const int> left) {
    if (msg.size() != left.size()) {
        throw ParameterError("teleportation needs equally many message and EPR wires");
    }
    for (int m : msg) {
        for (int l : left) {
            if (m == l) {
                throw ParameterError("message and EPR wire lists overlap at wire " + std::to_string(m));
            }
        }
    }
    for (int w : msg) {
        if (w < 0 || w >= s.num_qubits()) {
            throw ParameterError("teleportation wire out of range");
        }
    }
    for (int w : left) {
        if (w < 0 || w >= s.num_qubits()) {
            throw ParameterError("teleportation wire out of range");
        }
    }
}

const MeasSpec &identity_spec() {
    static const MeasSpec spec{[](const BitVec &b) { return b; }, BitVec(), {}};
    return spec;
}

}  // namespace

void tp_unitary(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires) {
    check_lists(s, msg_wires, left_wires);
    for (size_t k = 0; k < msg_wires.size(); k++) {
        s.cnot(msg_wires[k], left_wires[k]);
    }
    for (int m : msg_wires) {
        s.h(m);
    }
}

void tp_unitary_dag(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires) {
    check_lists(s, msg_wires, left_wires);
    for (int m : msg_wires) {
        s.h(m);
    }
    for (size_t k = 0; k < msg_wires.size(); k++) {
        s.cnot(msg_wires[k], left_wires[k]);
    }
}

Pauli tp_send(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires, Rng &rng) {
    tp_unitary(s, msg_wires, left_wires);
    BitVec z = measure_fn(s, identity_spec(), msg_wires, rng).outcome;
    BitVec x = measure_fn(s, identity_spec(), left_wires, rng).outcome;
    return Pauli{z, x};
}

double tp_send_forced(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires,
                      const Pauli &outcome) {
    tp_unitary(s, msg_wires, left_wires);
    double pz = project_fn(s, identity_spec(), msg_wires, outcome.z);
    if (pz == 0) {
        return 0;
    }
    return pz * project_fn(s, identity_spec(), left_wires, outcome.x);
}

void tp_recv(const Pauli &outcome, StateVector &s, std::span<const int> recv_wires) {
    s.apply_pauli_dag(outcome, recv_wires);
}

}  // namespace plmforge
