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

#ifndef PLMFORGE_CIPHER_REGISTER_H
#define PLMFORGE_CIPHER_REGISTER_H

#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "plmforge/circuit.h"
#include "plmforge/rng.h"
#include "plmforge/statevec.h"

namespace plmforge {

/// A pure state kept as a tensor product of independent factors. Wires carry
/// stable integer ids; operations touching several factors merge them first, so
/// the represented state is always exact and factors only grow when entangled.
class FactorState {
   public:
    /// Adds s as a new factor on fresh ids, returned in s's wire order.
    std::vector<int> add(StateVector s);

    bool holds(int id) const {
        return where_.count(id) > 0;
    }
    /// Merges the factors holding `ids`; returns the merged factor's key.
    int merge(std::span<const int> ids);
    void merge_all();

    StateVector &factor(int key);
    const std::vector<int> &factor_ids(int key) const;
    int factor_of(int id) const;
    /// Local positions of ids inside one factor.
    std::vector<int> local(int key, std::span<const int> ids) const;

    void apply_gate(Gate g, std::span<const int> ids);
    void apply_gate(Gate g, std::initializer_list<int> ids) {
        apply_gate(g, std::span<const int>(ids.begin(), ids.size()));
    }
    /// Applies c with circuit wire w on id ids[w].
    void apply_circuit(const Circuit &c, std::span<const int> ids, const BitVec &cin);

    /// Standard-basis measurement that keeps the wires (collapsed).
    BitVec measure(std::span<const int> ids, Rng &rng);
    /// Standard-basis measurement that removes the wires.
    BitVec measure_out(std::span<const int> ids, Rng &rng);

    int num_factors() const {
        return (int)factors_.size();
    }
    int total_qubits() const;
    /// Largest factor seen so far.
    int peak_factor_qubits() const {
        return peak_;
    }
    std::vector<int> live_ids() const;

    /// The full state with wires in `order`, which must list every live id once.
    StateVector assemble(std::span<const int> order) const;

   private:
    struct Factor {
        StateVector state;
        std::vector<int> ids;
    };
    void reindex(int key);
    void track_peak(int n);

    std::map<int, Factor> factors_;
    std::unordered_map<int, int> where_;
    int next_id_ = 0;
    int next_key_ = 0;
    int peak_ = 0;
};

}  // namespace plmforge

#endif
