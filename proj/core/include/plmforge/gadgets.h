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

#ifndef PLMFORGE_GADGETS_H
#define PLMFORGE_GADGETS_H

#include <string_view>
#include <vector>

#include "plmforge/circuit.h"
#include "plmforge/classical_fn.h"
#include "plmforge/statevec.h"

namespace plmforge {

enum class GadgetKind { H, CNOT, T };

std::string_view gadget_name(GadgetKind kind);

/// Resource state consumed by a gadget, with a circuit preparing it from |0...0>.
struct MagicState {
    GadgetKind kind;
    int width;
    Circuit prep;
};

/// One adaptive measurement of a gadget. Before measuring, `cnots` are appended to
/// the running linear gate and the theta bits of `theta_on` are set.
///
/// All indices are gadget-local: wires are numbered inputs first, then magic wires.
/// `measure` reads select(local wire), in(frame bit) and r(k), the k-th outcome of
/// this gadget counted from 1. Frame bits of input q are in(2q) = z_q and in(2q+1) = x_q.
struct GadgetStep {
    LinearGate cnots;
    std::vector<int> theta_on;
    ClassicalFn measure;
};

/// Pauli frame X^x Z^z carried by a wire.
struct WireFrame {
    ClassicalFn z;
    ClassicalFn x;
};

struct Gadget {
    GadgetKind kind;
    MagicState magic;
    int num_inputs;
    int width;
    /// Local wires that end up measured; always the prefix [0, measured.size()).
    std::vector<int> measured;
    /// outputs[q] is the local wire that carries logical input q afterwards.
    std::vector<int> outputs;
    std::vector<GadgetStep> steps;
    /// Frames of the output wires as functions of the incoming frames and outcomes.
    std::vector<WireFrame> output_frames;
};

const Gadget &gadget_for(GadgetKind kind);

/// Deterministic-outcome basis element for the gadget's measured wires.
///
/// H: (|0,c1> + (-1)^c0 |1,~c1>)/sqrt2 on (i, j). CNOT: G^dag H^theta |c> on (i, j, k, l).
/// T: CNOT_{j->i}(|c0> (x) Phi^(c0 xor flip)_{c1 c2 c3}) on (i, j, k, l), where
/// Phi^(0) = |c1>_k (x) (|0,c3> + (-1)^c2 |1,~c3>)/sqrt2 on (j, l) and
/// Phi^(1) = (|0,c1,c3> + (-1)^c2 |1,~c1,~c3>)/sqrt2 on (j, k, l).
/// `flip` is the incoming x-frame bit of the T gadget's input and is ignored otherwise.
StateVector basis_state(GadgetKind kind, const BitVec &labels, bool flip = false);

/// Runs the gadget's measurement sequence on a local state (inputs, then magic wires).
/// `frame` holds the incoming frame bits (2 per input). Returns the outcomes.
BitVec run_gadget_steps(const Gadget &g, StateVector &s, const BitVec &frame, Rng &rng);
/// Post-selected variant: forces `outcomes` and returns their joint probability.
double run_gadget_forced(const Gadget &g, StateVector &s, const BitVec &frame, const BitVec &outcomes);
/// Evaluates output_frames for concrete incoming frames and outcomes.
std::vector<std::pair<bool, bool>> eval_output_frames(const Gadget &g, const BitVec &frame, const BitVec &outcomes);

}  // namespace plmforge

#endif
