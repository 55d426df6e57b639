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

#include "plmforge/statevec.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "plmforge/errors.h"

namespace plmforge {

namespace {

std::atomic<int> g_qubit_cap{22};

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_cap(int n) {
    if (n > g_qubit_cap.load()) {
        throw ResourceError("state of " + std::to_string(n) + " qubits exceeds the qubit cap of " +
                            std::to_string(g_qubit_cap.load()));
    }
}

void check_wire_list(int n, std::span<const int> wires) {
    uint64_t seen_small = 0;
    for (size_t a = 0; a < wires.size(); a++) {
        int w = wires[a];
        if (w < 0 || w >= n) {
            throw ParameterError("wire " + std::to_string(w) + " out of range for " + std::to_string(n) + " qubits");
        }
        if (w < 64) {
            if (seen_small >> w & 1) {
                throw ParameterError("wire " + std::to_string(w) + " listed twice");
            }
            seen_small |= uint64_t{1} << w;
        }
    }
}

void conjugate(StateVector &s, const MeasSpec &spec, std::span<const int> wires) {
    s.apply_linear(spec.g_gate, wires);
    s.apply_h_mask(spec.theta, wires);
}

void unconjugate(StateVector &s, const MeasSpec &spec, std::span<const int> wires) {
    s.apply_h_mask(spec.theta, wires);
    s.apply_linear(spec.g_gate, wires, true);
}

// Groups the nonzero amplitudes of s by outcome value. Outcomes are ordered
// lexicographically; label[i] is the outcome id of amplitude i, or -1 when it is zero.
struct Grouping {
    std::vector<BitVec> outcomes;
    std::vector<double> weights;
    std::vector<int32_t> label;
};

Grouping group_by_outcome(const StateVector &s, const OutcomeFn &f, std::span<const int> wires) {
    if (wires.size() > 64) {
        throw ParameterError("measure_fn supports at most 64 measured wires");
    }
    int n = s.num_qubits();
    size_t w = wires.size();
    bool dense_cache = w <= 20;
    std::vector<int32_t> cache(dense_cache ? (size_t{1} << w) : 0, -1);
    std::unordered_map<uint64_t, int32_t> sparse_cache;

    std::map<BitVec, int32_t> ids;
    std::vector<BitVec> raw;
    std::vector<double> raw_weights;
    std::vector<int32_t> label(s.dim(), -1);
    const auto &amps = s.amps();
    for (size_t i = 0; i < amps.size(); i++) {
        double p = std::norm(amps[i]);
        if (p == 0) {
            continue;
        }
        uint64_t pattern = gather_bits(i, n, wires);
        int32_t id;
        if (dense_cache && cache[pattern] >= 0) {
            id = cache[pattern];
        } else if (!dense_cache && sparse_cache.count(pattern)) {
            id = sparse_cache[pattern];
        } else {
            BitVec y = f(BitVec::from_uint(pattern, w));
            auto it = ids.find(y);
            if (it == ids.end()) {
                it = ids.emplace(y, (int32_t)raw.size()).first;
                raw.push_back(y);
                raw_weights.push_back(0);
            }
            id = it->second;
            if (dense_cache) {
                cache[pattern] = id;
            } else {
                sparse_cache[pattern] = id;
            }
        }
        label[i] = id;
        raw_weights[id] += p;
    }

    // Renumber so ids follow lexicographic order.
    std::vector<int32_t> remap(raw.size());
    Grouping out;
    for (const auto &[y, id] : ids) {
        remap[id] = (int32_t)out.outcomes.size();
        out.outcomes.push_back(y);
        out.weights.push_back(raw_weights[id]);
    }
    for (auto &l : label) {
        if (l >= 0) {
            l = remap[l];
        }
    }
    out.label = std::move(label);
    return out;
}

size_t sample_index(const std::vector<double> &weights, Rng &rng) {
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (!(total > 0)) {
        throw InternalError("sampling from an all-zero distribution");
    }
    double u = rng.uniform() * total;
    double acc = 0;
    size_t last_positive = 0;
    for (size_t k = 0; k < weights.size(); k++) {
        if (weights[k] > 0) {
            last_positive = k;
        }
        acc += weights[k];
        if (u < acc && weights[k] > 0) {
            return k;
        }
    }
    return last_positive;
}

void keep_label(StateVector &s, const Grouping &g, int32_t keep) {
    auto &amps = s.mutable_amps();
    for (size_t i = 0; i < amps.size(); i++) {
        if (g.label[i] != keep) {
            amps[i] = 0;
        }
    }
}

}  // namespace

int qubit_cap() {
    return g_qubit_cap.load();
}

void set_qubit_cap(int cap) {
    if (cap < 1 || cap > 40) {
        throw ParameterError("qubit cap must lie in [1, 40]");
    }
    g_qubit_cap.store(cap);
}

Pauli Pauli::from_label(const BitVec &zx) {
    if (zx.size() % 2 != 0) {
        throw ParameterError("Pauli label must have even length");
    }
    size_t n = zx.size() / 2;
    return Pauli{zx.slice(0, n), zx.slice(n, n)};
}

StateVector::StateVector() : n_(0), amps_(1, cplx(1, 0)) {
}

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 0) {
        throw ParameterError("negative qubit count");
    }
    check_cap(num_qubits);
    amps_.assign(size_t{1} << num_qubits, cplx(0, 0));
    amps_[0] = 1;
}

StateVector StateVector::basis(const BitVec &label) {
    if (label.size() > 63) {
        throw ResourceError("basis label too long");
    }
    StateVector s((int)label.size());
    s.amps_[0] = 0;
    s.amps_[label.to_uint()] = 1;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps) {
    size_t d = amps.size();
    if (d == 0 || (d & (d - 1)) != 0) {
        throw ParameterError("amplitude count must be a power of two");
    }
    int n = std::countr_zero(d);
    check_cap(n);
    StateVector s;
    s.n_ = n;
    s.amps_ = std::move(amps);
    if (std::abs(s.norm_squared() - 1) > 1e-9) {
        throw ParameterError("amplitudes are not normalized");
    }
    return s;
}

StateVector StateVector::random(int num_qubits, Rng &rng) {
    StateVector s(num_qubits);
    for (auto &a : s.amps_) {
        double re = rng.normal();
        double im = rng.normal();
        a = cplx(re, im);
    }
    s.normalize();
    return s;
}

StateVector StateVector::random_product(int num_qubits, Rng &rng) {
    StateVector out;
    for (int q = 0; q < num_qubits; q++) {
        out = tensor(out, random(1, rng));
    }
    return out;
}

cplx StateVector::amp(const BitVec &label) const {
    if ((int)label.size() != n_) {
        throw ParameterError("label length does not match qubit count");
    }
    return amps_[label.to_uint()];
}

void StateVector::check_wire(int q) const {
    if (q < 0 || q >= n_) {
        throw ParameterError("wire " + std::to_string(q) + " out of range for " + std::to_string(n_) + " qubits");
    }
}

void StateVector::check_distinct(int a, int b) const {
    check_wire(a);
    check_wire(b);
    if (a == b) {
        throw ParameterError("two-qubit gate on a repeated wire " + std::to_string(a));
    }
}

void StateVector::apply_gate(Gate g, std::span<const int> wires) {
    int arity = gate_arity(g);
    if (arity == 0) {
        throw ParameterError("opaque gate " + std::string(gate_name(g)) + " has no state-vector action");
    }
    if ((int)wires.size() != arity) {
        throw ParameterError("gate " + std::string(gate_name(g)) + " expects " + std::to_string(arity) + " wires, got " +
                             std::to_string(wires.size()));
    }
    switch (g) {
        case Gate::X:
            x(wires[0]);
            break;
        case Gate::Z:
            z(wires[0]);
            break;
        case Gate::H:
            h(wires[0]);
            break;
        case Gate::S:
            s(wires[0]);
            break;
        case Gate::T:
            t(wires[0]);
            break;
        case Gate::CNOT:
            cnot(wires[0], wires[1]);
            break;
        case Gate::SWAP:
            swap(wires[0], wires[1]);
            break;
        default:
            throw InternalError("unhandled gate");
    }
}

void StateVector::x(int q) {
    check_wire(q);
    uint64_t m = mask(q);
    for (size_t base = 0; base < amps_.size(); base += 2 * m) {
        for (size_t i = base; i < base + m; i++) {
            std::swap(amps_[i], amps_[i | m]);
        }
    }
}

void StateVector::z(int q) {
    check_wire(q);
    uint64_t m = mask(q);
    for (size_t base = m; base < amps_.size(); base += 2 * m) {
        for (size_t i = base; i < base + m; i++) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::h(int q) {
    check_wire(q);
    uint64_t m = mask(q);
    for (size_t base = 0; base < amps_.size(); base += 2 * m) {
        for (size_t i = base; i < base + m; i++) {
            cplx a = amps_[i];
            cplx b = amps_[i | m];
            amps_[i] = (a + b) * kInvSqrt2;
            amps_[i | m] = (a - b) * kInvSqrt2;
        }
    }
}

void StateVector::apply_1q(const std::array<cplx, 4> &u, int q) {
    check_wire(q);
    uint64_t m = mask(q);
    for (size_t base = 0; base < amps_.size(); base += 2 * m) {
        for (size_t i = base; i < base + m; i++) {
            cplx a = amps_[i];
            cplx b = amps_[i | m];
            amps_[i] = u[0] * a + u[1] * b;
            amps_[i | m] = u[2] * a + u[3] * b;
        }
    }
}

void StateVector::s(int q) {
    apply_1q({1, 0, 0, cplx(0, 1)}, q);
}

void StateVector::s_dag(int q) {
    apply_1q({1, 0, 0, cplx(0, -1)}, q);
}

void StateVector::t(int q) {
    apply_1q({1, 0, 0, cplx(kInvSqrt2, kInvSqrt2)}, q);
}

void StateVector::t_dag(int q) {
    apply_1q({1, 0, 0, cplx(kInvSqrt2, -kInvSqrt2)}, q);
}

void StateVector::cnot(int control, int target) {
    check_distinct(control, target);
    uint64_t cm = mask(control);
    uint64_t tm = mask(target);
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & cm) && !(i & tm)) {
            std::swap(amps_[i], amps_[i | tm]);
        }
    }
}

void StateVector::cz(int a, int b) {
    check_distinct(a, b);
    uint64_t both = mask(a) | mask(b);
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & both) == both) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::swap(int a, int b) {
    check_distinct(a, b);
    uint64_t am = mask(a);
    uint64_t bm = mask(b);
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & am) && !(i & bm)) {
            std::swap(amps_[i], amps_[(i ^ am) | bm]);
        }
    }
}

void StateVector::scale(cplx factor) {
    for (auto &a : amps_) {
        a *= factor;
    }
}

void StateVector::apply_pauli(const Pauli &p, std::span<const int> wires) {
    if (p.z.size() != wires.size() || p.x.size() != wires.size()) {
        throw ParameterError("Pauli width does not match wire count");
    }
    for (size_t k = 0; k < wires.size(); k++) {
        if (p.z[k]) {
            z(wires[k]);
        }
        if (p.x[k]) {
            x(wires[k]);
        }
    }
}

void StateVector::apply_pauli_dag(const Pauli &p, std::span<const int> wires) {
    if (p.z.size() != wires.size() || p.x.size() != wires.size()) {
        throw ParameterError("Pauli width does not match wire count");
    }
    for (size_t k = 0; k < wires.size(); k++) {
        if (p.x[k]) {
            x(wires[k]);
        }
        if (p.z[k]) {
            z(wires[k]);
        }
    }
}

void StateVector::apply_linear(const LinearGate &g, std::span<const int> wires, bool inverse) {
    auto at = [&](int k) {
        if (k < 0 || (size_t)k >= wires.size()) {
            throw ParameterError("linear gate index " + std::to_string(k) + " outside the measured wires");
        }
        return wires[k];
    };
    if (g.size() <= 2) {
        if (!inverse) {
            for (const auto &[c, t] : g) {
                cnot(at(c), at(t));
            }
        } else {
            for (auto it = g.rbegin(); it != g.rend(); ++it) {
                cnot(at(it->first), at(it->second));
            }
        }
        return;
    }
    // Longer CNOT circuits act as one basis permutation: track where each wire's
    // basis bit goes, then move every amplitude once using per-byte lookup tables.
    std::vector<uint64_t> image(n_);
    for (int q = 0; q < n_; q++) {
        image[q] = mask(q);
    }
    auto step = [&](int c, int t) {
        check_distinct(c, t);
        for (uint64_t &v : image) {
            if (v & mask(c)) {
                v ^= mask(t);
            }
        }
    };
    if (!inverse) {
        for (const auto &[c, t] : g) {
            step(at(c), at(t));
        }
    } else {
        for (auto it = g.rbegin(); it != g.rend(); ++it) {
            step(at(it->first), at(it->second));
        }
    }
    int bytes = (n_ + 7) / 8;
    std::vector<std::array<uint64_t, 256>> table(bytes);
    for (int b = 0; b < bytes; b++) {
        for (int v = 0; v < 256; v++) {
            uint64_t out = 0;
            for (int bit = 0; bit < 8; bit++) {
                int pos = 8 * b + bit;
                if ((v >> bit & 1) && pos < n_) {
                    out ^= image[n_ - 1 - pos];
                }
            }
            table[b][v] = out;
        }
    }
    std::vector<cplx> dst(amps_.size());
    for (uint64_t a = 0; a < amps_.size(); a++) {
        uint64_t to = 0;
        for (int b = 0; b < bytes; b++) {
            to ^= table[b][(a >> (8 * b)) & 255];
        }
        dst[to] = amps_[a];
    }
    amps_ = std::move(dst);
}

void StateVector::apply_h_mask(const BitVec &theta, std::span<const int> wires) {
    if (theta.empty()) {
        return;
    }
    if (theta.size() != wires.size()) {
        throw ParameterError("theta width " + std::to_string(theta.size()) + " does not match " +
                             std::to_string(wires.size()) + " wires");
    }
    for (size_t k = 0; k < wires.size(); k++) {
        if (theta[k]) {
            h(wires[k]);
        }
    }
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::normalize() {
    double norm = std::sqrt(norm_squared());
    if (!(norm > 0)) {
        throw InternalError("cannot normalize the zero vector");
    }
    scale(1.0 / norm);
}

void StateVector::set_registers(std::vector<Register> regs) {
    std::vector<int> owner(n_, -1);
    for (size_t r = 0; r < regs.size(); r++) {
        if (regs[r].start < 0 || regs[r].size < 0 || regs[r].start + regs[r].size > n_) {
            throw ParameterError("register " + regs[r].name + " out of range");
        }
        for (int q = regs[r].start; q < regs[r].start + regs[r].size; q++) {
            if (owner[q] >= 0) {
                throw ParameterError("registers " + regs[owner[q]].name + " and " + regs[r].name + " overlap");
            }
            owner[q] = (int)r;
        }
    }
    if (std::count(owner.begin(), owner.end(), -1) != 0) {
        throw ParameterError("registers do not cover every qubit");
    }
    registers_ = std::move(regs);
}

std::vector<int> StateVector::register_wires(const std::string &name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            std::vector<int> out;
            for (int q = r.start; q < r.start + r.size; q++) {
                out.push_back(q);
            }
            return out;
        }
    }
    throw ParameterError("no register named " + name);
}

std::string StateVector::dump() const {
    std::ostringstream out;
    out.precision(12);
    for (size_t i = 0; i < amps_.size(); i++) {
        if (std::abs(amps_[i]) < 1e-12) {
            continue;
        }
        out << BitVec::from_uint(i, n_).str() << ' ' << amps_[i].real() << ' ' << amps_[i].imag() << '\n';
    }
    return out.str();
}

MeasureResult measure_fn(StateVector &s, const MeasSpec &spec, std::span<const int> wires, Rng &rng,
                         std::map<BitVec, double> *dist) {
    check_wire_list(s.num_qubits(), wires);
    conjugate(s, spec, wires);
    Grouping g = group_by_outcome(s, spec.f, wires);
    if (dist) {
        dist->clear();
        for (size_t k = 0; k < g.outcomes.size(); k++) {
            (*dist)[g.outcomes[k]] = g.weights[k];
        }
    }
    size_t pick = sample_index(g.weights, rng);
    keep_label(s, g, (int32_t)pick);
    double p = g.weights[pick];
    s.scale(1.0 / std::sqrt(p));
    unconjugate(s, spec, wires);
    return MeasureResult{g.outcomes[pick], p};
}

std::map<BitVec, double> measure_fn_distribution(const StateVector &s, const MeasSpec &spec,
                                                 std::span<const int> wires) {
    check_wire_list(s.num_qubits(), wires);
    StateVector work = s;
    conjugate(work, spec, wires);
    Grouping g = group_by_outcome(work, spec.f, wires);
    std::map<BitVec, double> out;
    for (size_t k = 0; k < g.outcomes.size(); k++) {
        out[g.outcomes[k]] = g.weights[k];
    }
    return out;
}

double apply_projector(StateVector &s, const MeasSpec &spec, std::span<const int> wires, const BitVec &outcome) {
    check_wire_list(s.num_qubits(), wires);
    conjugate(s, spec, wires);
    Grouping g = group_by_outcome(s, spec.f, wires);
    auto it = std::lower_bound(g.outcomes.begin(), g.outcomes.end(), outcome);
    int32_t keep = (it != g.outcomes.end() && *it == outcome) ? (int32_t)(it - g.outcomes.begin()) : -2;
    keep_label(s, g, keep);
    unconjugate(s, spec, wires);
    return keep >= 0 ? g.weights[keep] : 0.0;
}

double project_fn(StateVector &s, const MeasSpec &spec, std::span<const int> wires, const BitVec &outcome) {
    double p = apply_projector(s, spec, wires, outcome);
    if (p > 0) {
        s.scale(1.0 / std::sqrt(p));
    }
    return p;
}

BitVec measure_out(StateVector &s, std::span<const int> wires, Rng &rng) {
    check_wire_list(s.num_qubits(), wires);
    std::map<uint64_t, double> dist;
    const auto &amps = s.amps();
    for (size_t i = 0; i < amps.size(); i++) {
        double p = std::norm(amps[i]);
        if (p > 0) {
            dist[gather_bits(i, s.num_qubits(), wires)] += p;
        }
    }
    std::vector<uint64_t> keys;
    std::vector<double> weights;
    for (const auto &[k, p] : dist) {
        keys.push_back(k);
        weights.push_back(p);
    }
    BitVec bits = BitVec::from_uint(keys[sample_index(weights, rng)], wires.size());
    project_out(s, wires, bits);
    return bits;
}

double project_out(StateVector &s, std::span<const int> wires, const BitVec &bits) {
    int n = s.num_qubits();
    check_wire_list(n, wires);
    if (bits.size() != wires.size()) {
        throw ParameterError("project_out: outcome width does not match wire count");
    }
    std::vector<bool> removed(n, false);
    for (int w : wires) {
        removed[w] = true;
    }
    std::vector<int> kept;
    for (int q = 0; q < n; q++) {
        if (!removed[q]) {
            kept.push_back(q);
        }
    }
    uint64_t want = bits.to_uint();
    std::vector<cplx> next(size_t{1} << kept.size(), cplx(0, 0));
    double p = 0;
    const auto &amps = s.amps();
    for (size_t i = 0; i < amps.size(); i++) {
        if (amps[i] == cplx(0, 0) || gather_bits(i, n, wires) != want) {
            continue;
        }
        next[gather_bits(i, n, kept)] = amps[i];
        p += std::norm(amps[i]);
    }
    if (p > 0) {
        double inv = 1.0 / std::sqrt(p);
        for (auto &a : next) {
            a *= inv;
        }
    }
    StateVector out((int)kept.size());
    out.mutable_amps() = std::move(next);
    s = std::move(out);
    return p;
}

StateVector epr_pairs(int n) {
    StateVector s(2 * n);
    for (int i = 0; i < n; i++) {
        s.h(i);
        s.cnot(i, n + i);
    }
    return s;
}

cplx inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw ParameterError("inner product of states with different qubit counts");
    }
    cplx acc = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        acc += std::conj(a.amps()[i]) * b.amps()[i];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::min(1.0, std::norm(inner_product(a, b)));
}

double pure_trace_distance(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    if (a.size() != b.size()) {
        throw ParameterError("trace distance of vectors with different sizes");
    }
    double na = 0;
    double nb = 0;
    cplx ab = 0;
    for (size_t i = 0; i < a.size(); i++) {
        na += std::norm(a[i]);
        nb += std::norm(b[i]);
        ab += std::conj(a[i]) * b[i];
    }
    // The nonzero eigenvalues of |a><a| - |b><b| solve x^2 - (na - nb) x - (na nb - |<a|b>|^2) = 0.
    // na nb - |<a|b>|^2 = na |b_perp|^2, with b_perp computed directly to avoid cancellation.
    double perp = nb;
    if (na > 0) {
        cplx c = ab / na;
        perp = 0;
        for (size_t i = 0; i < a.size(); i++) {
            perp += std::norm(b[i] - c * a[i]);
        }
    }
    double disc = (na - nb) * (na - nb) + 4 * na * perp;
    return 0.5 * std::sqrt(std::max(0.0, disc));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    int n = a.num_qubits() + b.num_qubits();
    check_cap(n);
    StateVector out(n);
    auto &amps = out.mutable_amps();
    size_t db = b.dim();
    for (size_t i = 0; i < a.dim(); i++) {
        cplx ai = a.amps()[i];
        for (size_t j = 0; j < db; j++) {
            amps[i * db + j] = ai * b.amps()[j];
        }
    }
    return out;
}

StateVector permute_wires(const StateVector &s, std::span<const int> perm) {
    int n = s.num_qubits();
    if ((int)perm.size() != n) {
        throw ParameterError("permutation size does not match qubit count");
    }
    std::vector<bool> hit(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || hit[p]) {
            throw ParameterError("invalid wire permutation");
        }
        hit[p] = true;
    }
    StateVector out(n);
    auto &dst = out.mutable_amps();
    dst[0] = 0;
    for (size_t i = 0; i < s.dim(); i++) {
        uint64_t j = 0;
        for (int q = 0; q < n; q++) {
            if ((i >> (n - 1 - q)) & 1) {
                j |= uint64_t{1} << (n - 1 - perm[q]);
            }
        }
        dst[j] = s.amps()[i];
    }
    return out;
}

std::vector<cplx> reduced_density(const StateVector &s, std::span<const int> keep) {
    int n = s.num_qubits();
    check_wire_list(n, keep);
    std::vector<bool> in_keep(n, false);
    for (int w : keep) {
        in_keep[w] = true;
    }
    std::vector<int> rest;
    for (int q = 0; q < n; q++) {
        if (!in_keep[q]) {
            rest.push_back(q);
        }
    }
    size_t dk = size_t{1} << keep.size();
    size_t dr = size_t{1} << rest.size();
    std::vector<cplx> m(dk * dr, cplx(0, 0));
    for (size_t i = 0; i < s.dim(); i++) {
        m[gather_bits(i, n, keep) * dr + gather_bits(i, n, rest)] = s.amps()[i];
    }
    std::vector<cplx> rho(dk * dk, cplx(0, 0));
    for (size_t a = 0; a < dk; a++) {
        for (size_t b = 0; b < dk; b++) {
            cplx acc = 0;
            for (size_t r = 0; r < dr; r++) {
                acc += m[a * dr + r] * std::conj(m[b * dr + r]);
            }
            rho[a * dk + b] = acc;
        }
    }
    return rho;
}

double trace_distance(const std::vector<cplx> &rho, const std::vector<cplx> &sigma, size_t dim) {
    if (rho.size() != dim * dim || sigma.size() != dim * dim) {
        throw ParameterError("density matrix size does not match dimension");
    }
    Eigen::MatrixXcd d(dim, dim);
    for (size_t a = 0; a < dim; a++) {
        for (size_t b = 0; b < dim; b++) {
            d(a, b) = rho[a * dim + b] - sigma[a * dim + b];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(d, Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

std::string_view gate_name(Gate g) {
    switch (g) {
        case Gate::X:
            return "X";
        case Gate::Z:
            return "Z";
        case Gate::H:
            return "H";
        case Gate::S:
            return "S";
        case Gate::CNOT:
            return "CNOT";
        case Gate::SWAP:
            return "SWAP";
        case Gate::T:
            return "T";
        case Gate::U:
            return "U";
        case Gate::Udag:
            return "Udag";
    }
    return "?";
}

std::optional<Gate> gate_from_name(std::string_view name) {
    for (Gate g : {Gate::X, Gate::Z, Gate::H, Gate::S, Gate::CNOT, Gate::SWAP, Gate::T, Gate::U, Gate::Udag}) {
        if (gate_name(g) == name) {
            return g;
        }
    }
    return std::nullopt;
}

int gate_arity(Gate g) {
    switch (g) {
        case Gate::CNOT:
        case Gate::SWAP:
            return 2;
        case Gate::U:
        case Gate::Udag:
            return 0;
        default:
            return 1;
    }
}

}  // namespace plmforge
