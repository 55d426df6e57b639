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

#ifndef PLMFORGE_PLM_H
#define PLMFORGE_PLM_H

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plmforge/bitvec.h"
#include "plmforge/circuit.h"
#include "plmforge/classical_fn.h"
#include "plmforge/gadgets.h"
#include "plmforge/rng.h"
#include "plmforge/statevec.h"

namespace plmforge {

/// One adaptive measurement M[f_j, theta_j, G_j] over the whole V register.
/// f reads select(w) for V wire w, in(k) and r(k). G_j is the first `num_cnots`
/// entries of the program's CNOT list.
struct PlmInstruction {
    ClassicalFn f;
    BitVec theta;
    size_t num_cnots = 0;
};

/// Where a gadget landed: its measured V wires (gadget-local order) and the
/// 1-based index of its first outcome. For T gadgets `flip` is the incoming x-frame
/// of the input wire at emission time.
struct GadgetRecord {
    GadgetKind kind;
    std::vector<int> wires;
    int first_outcome = 0;
    ClassicalFn flip;
};

/// Standard-basis read of a live wire at the end of the program.
struct FinalRead {
    int logical = 0;
    int wire = 0;
    int outcome = 0;
};

/// V = (circuit wires, magic wires). The circuit's ancillas count as inputs: callers
/// supply them (usually |0>) as part of the input state.
struct PLMProgram {
    int n_q = 0;
    int n_c = 0;
    int n_out = 0;
    int num_wires = 0;
    int plm_width = 0;
    /// Prepares psi_PLM on the magic wires, indexed from 0.
    Circuit aux_prep;
    /// G_t. Every G_j is a prefix.
    LinearGate cnots;
    std::vector<PlmInstruction> instructions;
    std::vector<ClassicalFn> g;
    /// Final Pauli frame of each logical wire.
    std::vector<WireFrame> h;
    /// Logical wire -> V wire currently carrying it.
    std::vector<int> remap;
    std::vector<GadgetRecord> gadgets;
    std::vector<FinalRead> finals;

    int t() const {
        return (int)instructions.size();
    }
    /// G_j for 1-based j.
    LinearGate gate(int j) const;
    StateVector plm_state() const;
    bool operator==(const PLMProgram &other) const;
};

/// Compiles a circuit over {X, Z, H, S, T, CNOT, SWAP} with classically controlled X
/// and Z. Every live wire is read out at the end, output wires first, so the program
/// measures all of V. Throws CompileError on gates outside that set.
PLMProgram compile(const Circuit &q);

nlohmann::json plm_to_json(const PLMProgram &p);
PLMProgram plm_from_json(const nlohmann::json &j);

/// V register holding (input's first n_q qubits, psi_PLM or aux_override, input's remaining
/// qubits). Wires past num_wires act as a reference system the program never touches.
StateVector plm_initial_state(const PLMProgram &p, const StateVector &input,
                              const StateVector *aux_override = nullptr);

/// The measurement of instruction j (1-based) with 𝕚 and r_1..r_{j-1} bound.
MeasSpec instruction_spec(const PLMProgram &p, int j, const BitVec &i, const BitVec &r_prefix);
/// Measured wire list for instructions: all of V.
std::vector<int> v_wires(const PLMProgram &p);

BitVec eval_output(const PLMProgram &p, const BitVec &i, const BitVec &r);

struct PlmRun {
    BitVec y;
    BitVec r;
    StateVector post;
};

PlmRun execute_plm(const PLMProgram &p, const BitVec &i, const StateVector &input, const StateVector *aux_override,
                   Rng &rng);

/// Called once per outcome sequence whose branch weight exceeds `cutoff`. `post` is the
/// unnormalized projected state, so its squared norm is the branch probability.
using BranchVisitor = std::function<void(const BitVec &r, const StateVector &post)>;
void enumerate_branches(const PLMProgram &p, const BitVec &i, const StateVector &v_state, const BranchVisitor &visit,
                        double cutoff = 1e-14);

/// Exact output distribution by branch enumeration.
std::map<BitVec, double> plm_distribution(const PLMProgram &p, const BitVec &i, const StateVector &input);

/// |Phi_{i,r}> on the V register.
StateVector phi_basis_state(const PLMProgram &p, const BitVec &i, const BitVec &r);

struct CheckReport {
    bool pass = false;
    double max_distance = 0;
    size_t cases = 0;
    bool exhaustive = false;
    std::string detail;
};

/// Compares the product of instruction projectors with |Phi><Phi| on random states,
/// over every r when t <= 10 and over 64 executed r otherwise.
CheckReport projectivity_check(const PLMProgram &p, const BitVec &i, Rng &rng, int num_states = 5,
                               double tolerance = 1e-8);

/// Applies sum_y X^y (x) sum_{g(i,r)=y} |Phi_{i,r}><Phi_{i,r}| (I (x) psi_PLM) and
/// sum_y X^y (x) U^dag (|y><y| (x) I) U (x) psi_PLM to random states on
/// (Y, circuit wires, reference) and compares the reduced states on (Y, reference).
/// Only the V register differs between the two images (the program leaves the gadget
/// basis states behind, the circuit leaves the rotated input next to psi_PLM), so the
/// comparison traces it out; with a reference as large as the input this pins the
/// operator on the input down to an isometry on V. Needs t <= 10 and a circuit whose
/// final measurement is the program's output.
CheckReport output_projector_identity_check(const PLMProgram &p, const Circuit &q, const BitVec &i, Rng &rng,
                                            int num_states = 10, double tolerance = 1e-8);

/// sum_r |Phi_{i,r}><Phi_{i,r}| = I, checked entrywise for t <= 8.
CheckReport completeness_check(const PLMProgram &p, const BitVec &i, double tolerance = 1e-10);

/// The circuit the obfuscator compiles for an n-qubit unitary q (ancillas allowed):
/// wires (V_in, V_out) plus q's ancillas, 2n classical inputs holding 𝕚 = (z || x).
/// It undoes P_𝕚 on V_in, runs q on (V_in, ancillas), then teleports V_in through
/// (V_in, V_out) coherently and measures V_in then V_out.
Circuit wrap_for_obfuscation(const Circuit &q, int n);

}  // namespace plmforge

#endif
