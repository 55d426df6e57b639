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

#include "plmforge/cipher_register.h"

#include <algorithm>
#include <numeric>

#include "plmforge/errors.h"

namespace plmforge {

std::vector<int> FactorState::add(StateVector s) {
    std::vector<int> ids(s.num_qubits());
    std::iota(ids.begin(), ids.end(), next_id_);
    next_id_ += s.num_qubits();
    if (ids.empty()) {
        return ids;
    }
    int key = next_key_++;
    track_peak(s.num_qubits());
    factors_.emplace(key, Factor{std::move(s), ids});
    reindex(key);
    return ids;
}

void FactorState::reindex(int key) {
    const auto &ids = factors_.at(key).ids;
    for (int id : ids) {
        where_[id] = key;
    }
}

void FactorState::track_peak(int n) {
    peak_ = std::max(peak_, n);
}

int FactorState::factor_of(int id) const {
    auto it = where_.find(id);
    if (it == where_.end()) {
        throw ParameterError("wire id " + std::to_string(id) + " is not live");
    }
    return it->second;
}

StateVector &FactorState::factor(int key) {
    return factors_.at(key).state;
}

const std::vector<int> &FactorState::factor_ids(int key) const {
    return factors_.at(key).ids;
}

std::vector<int> FactorState::local(int key, std::span<const int> ids) const {
    const auto &fids = factors_.at(key).ids;
    std::vector<int> out;
    out.reserve(ids.size());
    for (int id : ids) {
        auto it = std::find(fids.begin(), fids.end(), id);
        if (it == fids.end()) {
            throw ParameterError("wire id " + std::to_string(id) + " is not in the factor");
        }
        out.push_back((int)(it - fids.begin()));
    }
    return out;
}

int FactorState::merge(std::span<const int> ids) {
    std::vector<int> keys;
    for (int id : ids) {
        int k = factor_of(id);
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            keys.push_back(k);
        }
    }
    if (keys.empty()) {
        throw ParameterError("merge needs at least one wire");
    }
    if (keys.size() == 1) {
        return keys[0];
    }
    int total = 0;
    for (int k : keys) {
        total += factors_.at(k).state.num_qubits();
    }
    if (total > qubit_cap()) {
        throw ResourceError("merging factors needs " + std::to_string(total) + " qubits, cap is " +
                            std::to_string(qubit_cap()));
    }
    Factor merged = std::move(factors_.at(keys[0]));
    factors_.erase(keys[0]);
    for (size_t a = 1; a < keys.size(); a++) {
        Factor &f = factors_.at(keys[a]);
        merged.state = tensor(merged.state, f.state);
        merged.ids.insert(merged.ids.end(), f.ids.begin(), f.ids.end());
        factors_.erase(keys[a]);
    }
    int key = next_key_++;
    track_peak(merged.state.num_qubits());
    factors_.emplace(key, std::move(merged));
    reindex(key);
    return key;
}

void FactorState::merge_all() {
    std::vector<int> ids = live_ids();
    if (!ids.empty()) {
        merge(ids);
    }
}

void FactorState::apply_gate(Gate g, std::span<const int> ids) {
    int key = merge(ids);
    std::vector<int> loc = local(key, ids);
    factor(key).apply_gate(g, loc);
}

void FactorState::apply_circuit(const Circuit &c, std::span<const int> ids, const BitVec &cin) {
    if ((int)ids.size() != c.width()) {
        throw ParameterError("circuit width does not match the wire list");
    }
    if (ids.empty()) {
        return;
    }
    int key = merge(ids);
    std::vector<int> loc = local(key, ids);
    plmforge::apply_circuit(factor(key), c, cin, loc);
}

BitVec FactorState::measure(std::span<const int> ids, Rng &rng) {
    BitVec out(ids.size());
    // Factors are independent, so each one is measured on its own wires.
    std::map<int, std::vector<size_t>> by_factor;
    for (size_t a = 0; a < ids.size(); a++) {
        by_factor[factor_of(ids[a])].push_back(a);
    }
    for (const auto &[key, positions] : by_factor) {
        std::vector<int> sub;
        for (size_t a : positions) {
            sub.push_back(ids[a]);
        }
        std::vector<int> loc = local(key, sub);
        StateVector &s = factor(key);
        MeasSpec spec{[](const BitVec &v) { return v; }, BitVec(loc.size()), {}};
        BitVec bits = measure_fn(s, spec, loc, rng).outcome;
        for (size_t b = 0; b < positions.size(); b++) {
            out.set(positions[b], bits[b]);
        }
    }
    return out;
}

BitVec FactorState::measure_out(std::span<const int> ids, Rng &rng) {
    BitVec out(ids.size());
    std::map<int, std::vector<size_t>> by_factor;
    for (size_t a = 0; a < ids.size(); a++) {
        by_factor[factor_of(ids[a])].push_back(a);
    }
    for (const auto &[key, positions] : by_factor) {
        std::vector<int> sub;
        for (size_t a : positions) {
            sub.push_back(ids[a]);
        }
        std::vector<int> loc = local(key, sub);
        Factor &f = factors_.at(key);
        BitVec bits = plmforge::measure_out(f.state, loc, rng);
        for (size_t b = 0; b < positions.size(); b++) {
            out.set(positions[b], bits[b]);
        }
        for (int id : sub) {
            where_.erase(id);
            f.ids.erase(std::find(f.ids.begin(), f.ids.end(), id));
        }
        if (f.ids.empty()) {
            factors_.erase(key);
        }
    }
    return out;
}

int FactorState::total_qubits() const {
    int n = 0;
    for (const auto &[key, f] : factors_) {
        n += f.state.num_qubits();
    }
    return n;
}

std::vector<int> FactorState::live_ids() const {
    std::vector<int> ids;
    for (const auto &[key, f] : factors_) {
        ids.insert(ids.end(), f.ids.begin(), f.ids.end());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

StateVector FactorState::assemble(std::span<const int> order) const {
    if (order.size() != where_.size()) {
        throw ParameterError("assemble needs every live wire exactly once");
    }
    StateVector s;
    std::vector<int> ids;
    for (const auto &[key, f] : factors_) {
        s = tensor(s, f.state);
        ids.insert(ids.end(), f.ids.begin(), f.ids.end());
    }
    std::unordered_map<int, int> target;
    for (size_t a = 0; a < order.size(); a++) {
        target[order[a]] = (int)a;
    }
    std::vector<int> perm(ids.size());
    for (size_t a = 0; a < ids.size(); a++) {
        auto it = target.find(ids[a]);
        if (it == target.end()) {
            throw ParameterError("assemble order misses a live wire");
        }
        perm[a] = it->second;
    }
    return permute_wires(s, perm);
}

}  // namespace plmforge
