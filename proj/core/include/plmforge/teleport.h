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

#ifndef PLMFORGE_TELEPORT_H
#define PLMFORGE_TELEPORT_H

#include <span>

#include "plmforge/rng.h"
#include "plmforge/statevec.h"

namespace plmforge {

/// TP = H^{(x)n}_M CNOT_{M,L}, applied coherently.
void tp_unitary(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires);
void tp_unitary_dag(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires);

/// Teleports the message through the EPR halves on left_wires: applies TP, then
/// measures M (giving z) and L (giving x) in the standard basis. The partner halves
/// then hold P_(z,x) applied to the message. Measured wires stay in the state, collapsed.
Pauli tp_send(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires, Rng &rng);

/// Post-selection harness: forces the outcome and returns its probability.
double tp_send_forced(StateVector &s, std::span<const int> msg_wires, std::span<const int> left_wires,
                      const Pauli &outcome);

/// Applies P_(z,x)^dag on the receiving wires.
void tp_recv(const Pauli &outcome, StateVector &s, std::span<const int> recv_wires);

}  // namespace plmforge

#endif
