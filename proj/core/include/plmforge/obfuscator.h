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

#ifndef PLMFORGE_OBFUSCATOR_H
#define PLMFORGE_OBFUSCATOR_H

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "plmforge/cipher_register.h"
#include "plmforge/circuit.h"
#include "plmforge/coset_auth.h"
#include "plmforge/crypto.h"
#include "plmforge/plm.h"

namespace plmforge {

struct ObfParams {
    int lambda = 1;
    int kappa = 32;
    /// Keep Ṽ as one dense factor and run every query literally through
    /// coherent_oracle_apply. Only feasible for tiny programs.
    bool dense = false;
};

/// The evaluator's Clifford H^theta~ G~ for one round, on Ṽ positions.
struct PublicInstruction {
    BitVec theta;
    LinearGate g;
};

/// Applies |x>|y> -> |x>|y xor F(x)> with x read from in_wires and y on out_wires.
void coherent_oracle_apply(StateVector &s, const std::function<BitVec(const BitVec &)> &oracle,
                           std::span<const int> in_wires, std::span<const int> out_wires);

/// Outcome distribution keyed by packed answers (value followed by the status bit).
using AnswerDist = std::map<BitVec, double>;

/// Quantum-accessible classical oracle as seen by the evaluator.
class Oracle {
   public:
    virtual ~Oracle() = default;

    virtual int t() const = 0;
    /// Width of F's value at round j (the status bit excluded).
    virtual int output_bits(int j) const = 0;

    /// One round: apply H^theta~ G~ on Ṽ, query F(j, Ṽ, 𝕚, s, l_1..l_{j-1}, 0, ...) coherently
    /// into a fresh answer register, measure that register, and undo the Clifford.
    /// Implementations realize this as the grouped measurement M[F(j, ., ...), theta~, G~],
    /// which is the same operation. When `dist` is set it receives the exact distribution
    /// of the packed answer given the state before the round.
    virtual StatusWord round(FactorState &world, std::span<const int> v_tilde, const PublicInstruction &pub, int j,
                             const BitVec &i, std::span<const uint8_t> s, const std::vector<BitVec> &labels,
                             Rng &rng, AnswerDist *dist) = 0;

    /// Exact distribution of the round-t answer given the state before round j, for
    /// oracles that can resolve rounds j..t as one joint measurement. Returns false
    /// when they cannot at this j. Does not change the state.
    virtual bool final_answer_distribution(const FactorState &world, std::span<const int> v_tilde, int j,
                                           const BitVec &i, std::span<const uint8_t> s,
                                           const std::vector<BitVec> &labels, AnswerDist &out) const {
        (void)world, (void)v_tilde, (void)j, (void)i, (void)s, (void)labels, (void)out;
        return false;
    }
};

/// The oracle F of the construction: decode Ṽ under (theta_j, G_j), verify the token,
/// recover r_1..r_{j-1} from the labels, evaluate f_j, and answer with the label
/// H(j, r_j, 𝕚, s) or, at j = t, with g(𝕚, r).
class OracleF : public Oracle {
   public:
    OracleF(AuthKey key, VerificationKey vk, PrfKey prf, std::shared_ptr<const PLMProgram> plm, bool dense);

    int t() const override;
    int output_bits(int j) const override;

    /// F on a standard-basis value of all of Ṽ.
    StatusWord query(int j, const BitVec &v_tilde, const BitVec &i, std::span<const uint8_t> s,
                     const std::vector<BitVec> &labels) const;

    StatusWord round(FactorState &world, std::span<const int> v_tilde, const PublicInstruction &pub, int j,
                     const BitVec &i, std::span<const uint8_t> s, const std::vector<BitVec> &labels, Rng &rng,
                     AnswerDist *dist) override;

    /// Supported at the first of the trailing final-read rounds.
    bool final_answer_distribution(const FactorState &world, std::span<const int> v_tilde, int j, const BitVec &i,
                                   std::span<const uint8_t> s, const std::vector<BitVec> &labels,
                                   AnswerDist &out) const override;

    /// Number of classical evaluations of f_j performed so far.
    uint64_t evaluations() const {
        return evaluations_;
    }

   private:
    /// r_1..r_{j-1}, or nullopt for ⊥ (bad token or unmatched labels).
    std::optional<BitVec> recover(int j, const BitVec &i, std::span<const uint8_t> s,
                                  const std::vector<BitVec> &labels) const;
    const BitVec &label(int j, bool r, const BitVec &i, std::span<const uint8_t> s) const;
    StatusWord answer(int j, const BitVec &v, const BitVec &i, std::span<const uint8_t> s, const BitVec &r) const;
    StatusWord round_dense(FactorState &world, std::span<const int> v_tilde, const PublicInstruction &pub, int j,
                           const BitVec &i, std::span<const uint8_t> s, const std::vector<BitVec> &labels, Rng &rng,
                           AnswerDist *dist);

    AuthKey key_;
    VerificationKey vk_;
    PrfKey prf_;
    std::shared_ptr<const PLMProgram> plm_;
    bool dense_;
    /// Pads after G_j, per round.
    std::vector<std::pair<std::vector<BitVec>, std::vector<BitVec>>> pads_;
    /// V wires each round reads: the measured wires of its gadget, or the wire of a final read.
    std::vector<std::vector<int>> support_;
    /// First round of the trailing block of single-wire final reads, or 0 if none.
    int tail_start_ = 0;
    mutable std::unordered_map<std::string, bool> token_ok_;
    mutable std::unordered_map<std::string, BitVec> labels_;
    mutable uint64_t evaluations_ = 0;
};

/// Ṽ plus its oracle, without the teleportation plumbing.
struct AuthenticatedPlm {
    FactorState state;
    /// Physical ids of Ṽ, block by block in V order.
    std::vector<int> v_tilde;
    std::vector<PublicInstruction> instructions;
    /// Round after which each V wire's block is product with the rest and can be
    /// measured away; 0 for never.
    std::vector<int> dead_after;
    std::shared_ptr<OracleF> oracle;
    std::shared_ptr<const PLMProgram> plm;
    AuthKey key;
};

/// One independent factor of the plaintext V register. v_wire[q] is the V wire held by
/// qubit q, or -1 for a qubit that stays outside Ṽ (such as a public EPR half).
struct PlainFactor {
    StateVector state;
    std::vector<int> v_wire;
};

/// Encodes the plaintext V register under a fresh key and builds F around the
/// verification key. `extra_ids` receives, per factor, the ids of its unencoded qubits.
AuthenticatedPlm authenticate_plm(std::shared_ptr<const PLMProgram> plm, const std::vector<PlainFactor> &plaintext,
                                  const VerificationKey &vk, const ObfParams &params, Rng &rng,
                                  std::vector<std::vector<int>> *extra_ids = nullptr);

/// Physical ids of the blocks of the listed V wires.
std::vector<int> block_ids(std::span<const int> v_tilde, int block, std::span<const int> v_wires);

struct RoundsResult {
    std::vector<StatusWord> transcript;
    int bottom_events = 0;
    /// Per round, filled only when requested.
    std::vector<AnswerDist> answer_dists;
    /// With record_dists: the round-t answer's distribution from the earliest round the
    /// oracle can resolve it, else the last entry of answer_dists.
    AnswerDist final_dist;
};

/// Runs rounds 1..t against `oracle`, measuring away dead blocks as it goes.
/// Stops at the first ⊥.
RoundsResult run_rounds(FactorState &world, std::span<const int> v_tilde, int block,
                        const std::vector<PublicInstruction> &instructions, const std::vector<int> &dead_after,
                        Oracle &oracle, const BitVec &i, std::span<const uint8_t> s, Rng &rng,
                        bool record_dists = false);

/// Output of QObf. Single use: qeval consumes it.
struct ObfuscationPackage {
    FactorState state;
    std::vector<int> v_tilde;
    std::vector<int> epr_in_pub;
    std::vector<int> epr_out_pub;
    int n = 0;
    int m = 0;
    int lambda = 1;
    int kappa = 32;
    std::vector<PublicInstruction> instructions;
    std::vector<int> dead_after;
    std::optional<TokenHandle> token;
    std::shared_ptr<Oracle> oracle;
    /// Test introspection only; an evaluator has no business reading these.
    std::shared_ptr<const PLMProgram> plm;
    std::optional<AuthKey> key;
    bool consumed = false;

    int t() const {
        return (int)instructions.size();
    }
    int v_tilde_width() const {
        return (int)v_tilde.size();
    }
};

/// Obfuscates the n-qubit unitary circuit u with ancilla state psi_aux (u.aux qubits).
ObfuscationPackage qobf(const Circuit &u, const StateVector &psi_aux, const ObfParams &params, Rng &rng);

/// F of a real package evaluated classically.
StatusWord oracle_f(const ObfuscationPackage &pkg, int j, const BitVec &v_tilde, const BitVec &i,
                    std::span<const uint8_t> s, const std::vector<BitVec> &labels);

struct QEvalResult {
    /// Output register followed by the input's reference qubits.
    StateVector output;
    BitVec i;
    std::vector<StatusWord> transcript;
    int bottom_events = 0;
    int peak_qubits = 0;
    /// With record_dists: the exact distribution of 𝕚 before the teleportation
    /// measurement, and of each round's answer given everything before it.
    std::map<BitVec, double> i_dist;
    std::vector<AnswerDist> answer_dists;
    /// The output label's distribution, as in RoundsResult::final_dist.
    AnswerDist final_dist;
};

/// Evaluates on rho_in, whose first pkg.n qubits are the input and whose remaining
/// qubits are a reference system carried through untouched. Throws ProtocolFailure
/// when F answers ⊥ and OneTimeUseError on a consumed package.
QEvalResult qeval(ObfuscationPackage &pkg, const StateVector &rho_in, Rng &rng, bool record_dists = false);

/// Black-box ctrl-(U^dag (TP^dag Write TP) U) of the simulator: applies U on s_in,
/// TP on (s_in, s_out), measures both in the standard basis, and undoes TP and U.
/// Returns the written value (z || x); `dist`, when set, receives its exact distribution.
using SimUnitaryOracle = std::function<BitVec(FactorState &world, std::span<const int> s_in,
                                              std::span<const int> s_out, Rng &rng, std::map<BitVec, double> *dist)>;

/// Instantiates the black box from the true circuit (no ancillas).
SimUnitaryOracle make_sim_unitary(const Circuit &u);

/// Public shape a simulator needs to mimic a package: widths and the public rounds.
struct PackageShape {
    int n = 0;
    int m = 0;
    int num_v = 0;
    int lambda = 1;
    int kappa = 32;
    std::vector<PublicInstruction> instructions;
};

PackageShape package_shape(const ObfuscationPackage &pkg);

/// The simulator: Ṽ = Enc_k(0...0), labels H(j, 0, 𝕚, s), and a final round that
/// routes the input through the black box on its private EPR halves.
ObfuscationPackage sim_package(const PackageShape &shape, SimUnitaryOracle u_oracle, Rng &rng);

}  // namespace plmforge

#endif
