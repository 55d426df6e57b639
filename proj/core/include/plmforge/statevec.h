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

#ifndef PLMFORGE_STATEVEC_H
#define PLMFORGE_STATEVEC_H

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plmforge/bitvec.h"
#include "plmforge/gates.h"
#include "plmforge/rng.h"

namespace plmforge {

using cplx = std::complex<double>;

/// Largest number of qubits a StateVector may hold. Defaults to 22.
int qubit_cap();
void set_qubit_cap(int cap);

/// P_(z,x) = X^x Z^z.
struct Pauli {
    BitVec z;
    BitVec x;

    static Pauli identity(size_t n) {
        return Pauli{BitVec(n), BitVec(n)};
    }
    size_t size() const {
        return z.size();
    }
    /// Splits a packed label (z || x).
    static Pauli from_label(const BitVec &zx);
    BitVec label() const {
        return z.concat(x);
    }
};

/// A product of CNOT gates, (control, target), applied in list order.
using LinearGate = std::vector<std::pair<int, int>>;

/// Classical outcome function evaluated on the measured bits, listed in wire order.
using OutcomeFn = std::function<BitVec(const BitVec &bits)>;

/// The measurement M[f, theta, G] = { G^dag H^theta (sum_{f(x)=y} |x><x|) H^theta G }_y.
/// theta and the CNOT indices in g_gate are relative to the measured wire list.
struct MeasSpec {
    OutcomeFn f;
    BitVec theta;
    LinearGate g_gate;
};

struct Register {
    std::string name;
    int start;
    int size;
};

/// Dense pure state. Qubit 0 is the most significant bit of the amplitude index.
class StateVector {
   public:
    /// The zero-qubit state with amplitude 1.
    StateVector();
    /// |0...0> on num_qubits qubits.
    explicit StateVector(int num_qubits);

    static StateVector basis(const BitVec &label);
    /// Takes amplitudes as given; they must be normalized within 1e-9.
    static StateVector from_amplitudes(std::vector<cplx> amps);
    /// Haar-random pure state.
    static StateVector random(int num_qubits, Rng &rng);
    /// Tensor product of independent Haar-random single-qubit states.
    static StateVector random_product(int num_qubits, Rng &rng);

    int num_qubits() const {
        return n_;
    }
    size_t dim() const {
        return amps_.size();
    }
    const std::vector<cplx> &amps() const {
        return amps_;
    }
    std::vector<cplx> &mutable_amps() {
        return amps_;
    }
    cplx amp(const BitVec &label) const;
    uint64_t mask(int q) const {
        return uint64_t{1} << (n_ - 1 - q);
    }

    void apply_gate(Gate g, std::span<const int> wires);
    void apply_gate(Gate g, std::initializer_list<int> wires) {
        apply_gate(g, std::span<const int>(wires.begin(), wires.size()));
    }
    void x(int q);
    void z(int q);
    void h(int q);
    void s(int q);
    void s_dag(int q);
    void t(int q);
    void t_dag(int q);
    void cnot(int control, int target);
    void cz(int a, int b);
    void swap(int a, int b);
    /// Row-major 2x2 matrix on one qubit.
    void apply_1q(const std::array<cplx, 4> &m, int q);
    void scale(cplx factor);

    /// X^x Z^z on the listed wires.
    void apply_pauli(const Pauli &p, std::span<const int> wires);
    /// (X^x Z^z)^dag = Z^z X^x on the listed wires.
    void apply_pauli_dag(const Pauli &p, std::span<const int> wires);
    /// G (or G^dag) with indices taken through `wires`.
    void apply_linear(const LinearGate &g, std::span<const int> wires, bool inverse = false);
    /// H on every listed wire whose theta bit is set.
    void apply_h_mask(const BitVec &theta, std::span<const int> wires);

    double norm_squared() const;
    void normalize();

    void set_registers(std::vector<Register> regs);
    const std::vector<Register> &registers() const {
        return registers_;
    }
    std::vector<int> register_wires(const std::string &name) const;

    /// One line per amplitude above 1e-12: "<bits> re imag".
    std::string dump() const;

   private:
    void check_wire(int q) const;
    void check_distinct(int a, int b) const;

    int n_;
    std::vector<cplx> amps_;
    std::vector<Register> registers_;
};

struct MeasureResult {
    BitVec outcome;
    double prob;
};

/// Samples M[f, theta, G] on the listed wires, collapses the state, and returns the outcome.
/// When `dist` is set it receives the full outcome distribution before the collapse.
MeasureResult measure_fn(StateVector &s, const MeasSpec &spec, std::span<const int> wires, Rng &rng,
                         std::map<BitVec, double> *dist = nullptr);
/// Full outcome distribution of M[f, theta, G], without collapsing.
std::map<BitVec, double> measure_fn_distribution(const StateVector &s, const MeasSpec &spec,
                                                 std::span<const int> wires);
/// Applies the projector for `outcome` without renormalizing; returns the squared norm kept.
double apply_projector(StateVector &s, const MeasSpec &spec, std::span<const int> wires, const BitVec &outcome);
/// Post-selects `outcome` and renormalizes when possible; returns its probability.
double project_fn(StateVector &s, const MeasSpec &spec, std::span<const int> wires, const BitVec &outcome);

/// Measures the listed wires in the standard basis and removes them from the state.
BitVec measure_out(StateVector &s, std::span<const int> wires, Rng &rng);
/// Post-selects the listed wires on `bits` and removes them; returns the probability.
double project_out(StateVector &s, std::span<const int> wires, const BitVec &bits);

/// n EPR pairs; qubit i is paired with qubit n + i.
StateVector epr_pairs(int n);

cplx inner_product(const StateVector &a, const StateVector &b);
/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);
/// Trace distance between |a><a| and |b><b| for possibly unnormalized a, b.
double pure_trace_distance(const std::vector<cplx> &a, const std::vector<cplx> &b);

/// Trace distance between two density matrices given row-major with dimension `dim`.
double trace_distance(const std::vector<cplx> &rho, const std::vector<cplx> &sigma, size_t dim);

/// a on the leading qubits, b after.
StateVector tensor(const StateVector &a, const StateVector &b);
/// Old qubit q moves to position perm[q].
StateVector permute_wires(const StateVector &s, std::span<const int> perm);

/// Reduced density matrix on `keep` (row-major, dimension 2^|keep|).
std::vector<cplx> reduced_density(const StateVector &s, std::span<const int> keep);

/// Selects the listed bits of a basis index, first listed wire first.
inline uint64_t gather_bits(uint64_t index, int num_qubits, std::span<const int> wires) {
    uint64_t out = 0;
    for (int w : wires) {
        out = (out << 1) | ((index >> (num_qubits - 1 - w)) & 1);
    }
    return out;
}

}  // namespace plmforge

#endif
