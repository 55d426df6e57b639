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

#include "plmforge/coset_auth.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "plmforge/errors.h"

namespace plmforge {

namespace {

using BlockTerms = std::vector<std::pair<uint64_t, cplx>>;

// Replaces wire `pos` by a block of `width` wires holding terms[b] for input bit b.
StateVector expand_wire(const StateVector &s, int pos, int width, const BlockTerms (&terms)[2]) {
    int n = s.num_qubits();
    int nlo = n - 1 - pos;
    StateVector out(n - 1 + width);
    auto &dst = out.mutable_amps();
    dst[0] = 0;
    const auto &src = s.amps();
    uint64_t lo_mask = (uint64_t{1} << nlo) - 1;
    for (uint64_t i = 0; i < src.size(); i++) {
        if (src[i] == 0.0) {
            continue;
        }
        int b = (i >> nlo) & 1;
        uint64_t hi = i >> (nlo + 1);
        uint64_t lo = i & lo_mask;
        for (const auto &[v, a] : terms[b]) {
            dst[(hi << (width + nlo)) | (v << nlo) | lo] += src[i] * a;
        }
    }
    return out;
}

void check_key_shape(int lambda, int n) {
    if (lambda < 1) {
        throw ParameterError("lambda must be at least 1");
    }
    if (n < 0) {
        throw ParameterError("negative block count");
    }
    if (2 * lambda + 1 > 40) {
        throw ParameterError("lambda too large");
    }
}

}  // namespace

AuthKey AuthKey::make(int lambda, int n, Subspace S, BitVec delta, std::vector<BitVec> x, std::vector<BitVec> z) {
    check_key_shape(lambda, n);
    size_t p = 2 * lambda + 1;
    if (S.ambient_dim() != p || S.dim() != (size_t)lambda) {
        throw ParameterError("S must be a lambda-dimensional subspace of GF(2)^(2 lambda + 1)");
    }
    if (delta.size() != p || S.contains(delta)) {
        throw ParameterError("Delta must be a vector outside S");
    }
    if ((int)x.size() != n || (int)z.size() != n) {
        throw ParameterError("pads must have one vector per block");
    }
    for (int i = 0; i < n; i++) {
        if (x[i].size() != p || z[i].size() != p) {
            throw ParameterError("pad vectors must have block length");
        }
    }
    AuthKey k;
    k.lambda = lambda;
    k.n = n;
    k.S = std::move(S);
    k.delta = std::move(delta);
    k.x = std::move(x);
    k.z = std::move(z);
    k.s_delta = k.S.extend_by(k.delta);
    k.s_hat = k.s_delta.orthogonal_complement();
    k.delta_hat = sample_coset_complement(k.s_hat, k.S.orthogonal_complement(), nullptr);
    return k;
}

nlohmann::json AuthKey::to_json() const {
    std::vector<std::string> xs, zs;
    for (int i = 0; i < n; i++) {
        xs.push_back(x[i].str());
        zs.push_back(z[i].str());
    }
    return {{"lambda", lambda}, {"n", n}, {"S", S.to_json()}, {"Delta", delta.str()}, {"x", xs}, {"z", zs}};
}

AuthKey AuthKey::from_json(const nlohmann::json &j) {
    try {
        std::vector<BitVec> xs, zs;
        for (const auto &v : j.at("x")) {
            xs.push_back(BitVec::from_string(v.get<std::string>()));
        }
        for (const auto &v : j.at("z")) {
            zs.push_back(BitVec::from_string(v.get<std::string>()));
        }
        return make(j.at("lambda").get<int>(), j.at("n").get<int>(), Subspace::from_json(j.at("S")),
                    BitVec::from_string(j.at("Delta").get<std::string>()), std::move(xs), std::move(zs));
    } catch (const nlohmann::json::exception &e) {
        throw ParameterError(std::string("malformed key JSON: ") + e.what());
    }
}

bool AuthKey::operator==(const AuthKey &other) const {
    return lambda == other.lambda && n == other.n && S == other.S && delta == other.delta && x == other.x &&
           z == other.z;
}

AuthKey keygen(int lambda, int n, Rng &rng) {
    check_key_shape(lambda, n);
    size_t p = 2 * lambda + 1;
    Subspace S = random_subspace(p, lambda, rng);
    BitVec delta = sample_coset_complement(S, Subspace::full(p), &rng);
    std::vector<BitVec> x, z;
    auto random_vec = [&] {
        BitVec v(p);
        for (size_t k = 0; k < p; k++) {
            v.set(k, rng.bit());
        }
        return v;
    };
    for (int i = 0; i < n; i++) {
        x.push_back(random_vec());
        z.push_back(random_vec());
    }
    return AuthKey::make(lambda, n, std::move(S), std::move(delta), std::move(x), std::move(z));
}

StateVector coset_state(const Subspace &S, const BitVec &v) {
    StateVector out((int)S.ambient_dim());
    auto &a = out.mutable_amps();
    a[0] = 0;
    double amp = std::pow(2.0, -0.5 * (double)S.dim());
    for (const BitVec &s : S.elements()) {
        a[(s ^ v).to_uint()] += amp;
    }
    return out;
}

StateVector enc(const AuthKey &key, const StateVector &s, std::span<const int> logical_wires) {
    std::vector<int> blocks(logical_wires.size());
    std::iota(blocks.begin(), blocks.end(), 0);
    return enc(key, s, logical_wires, blocks);
}

StateVector enc(const AuthKey &key, const StateVector &s, std::span<const int> logical_wires,
                std::span<const int> key_blocks) {
    if (logical_wires.size() != key_blocks.size()) {
        throw ParameterError("one key block per encoded wire");
    }
    int p = key.block();
    int total = s.num_qubits() + (int)logical_wires.size() * (p - 1);
    if (total > qubit_cap()) {
        throw ResourceError("encoding needs " + std::to_string(total) + " qubits, cap is " +
                            std::to_string(qubit_cap()));
    }
    std::vector<std::pair<int, int>> order;
    std::vector<bool> seen(s.num_qubits(), false);
    for (size_t k = 0; k < logical_wires.size(); k++) {
        int w = logical_wires[k];
        if (w < 0 || w >= s.num_qubits() || seen[w]) {
            throw ParameterError("encoded wires must be distinct and in range");
        }
        if (key_blocks[k] < 0 || key_blocks[k] >= key.n) {
            throw ParameterError("key block index out of range");
        }
        seen[w] = true;
        order.emplace_back(w, key_blocks[k]);
    }
    std::sort(order.rbegin(), order.rend());

    std::vector<BitVec> elems = key.S.elements();
    double amp = std::pow(2.0, -0.5 * (double)key.S.dim());
    StateVector out = s;
    for (auto [w, kb] : order) {
        BlockTerms terms[2];
        for (int b = 0; b < 2; b++) {
            for (const BitVec &e : elems) {
                BitVec v = b ? e ^ key.delta : e;
                double sign = v.dot(key.z[kb]) ? -1.0 : 1.0;
                terms[b].emplace_back((v ^ key.x[kb]).to_uint(), sign * amp);
            }
        }
        out = expand_wire(out, w, p, terms);
    }
    return out;
}

std::pair<BitVec, LinearGate> eval_lift(int lambda, const BitVec &theta, const LinearGate &g) {
    int p = 2 * lambda + 1;
    int n = (int)theta.size();
    BitVec th(n * p);
    for (int i = 0; i < n; i++) {
        for (int k = 0; k < p; k++) {
            th.set(i * p + k, theta[i]);
        }
    }
    LinearGate gt;
    for (auto [c, t] : g) {
        if (c < 0 || t < 0 || c >= n || t >= n || c == t) {
            throw ParameterError("logical CNOT out of range");
        }
        for (int k = 0; k < p; k++) {
            gt.emplace_back(c * p + k, t * p + k);
        }
    }
    return {th, gt};
}

std::pair<std::vector<BitVec>, std::vector<BitVec>> updated_pads(const AuthKey &key, const LinearGate &g) {
    std::vector<BitVec> z = key.z, x = key.x;
    for (auto [c, t] : g) {
        if (c < 0 || t < 0 || c >= key.n || t >= key.n || c == t) {
            throw ParameterError("logical CNOT out of range");
        }
        z[c] ^= z[t];
        x[t] ^= x[c];
    }
    return {z, x};
}

int dec_block(const AuthKey &key, bool theta, const BitVec &z_pad, const BitVec &x_pad, const BitVec &c) {
    if (!theta) {
        BitVec v = c ^ x_pad;
        if (key.S.contains(v)) {
            return 0;
        }
        return key.S.contains(v ^ key.delta) ? 1 : -1;
    }
    BitVec u = c ^ z_pad;
    if (key.s_hat.contains(u)) {
        return 0;
    }
    return key.s_hat.contains(u ^ key.delta_hat) ? 1 : -1;
}

StatusWord dec(const AuthKey &key, const BitVec &theta, const LinearGate &g, const BitVec &c) {
    size_t p = key.block();
    if ((int)theta.size() != key.n || c.size() != key.n * p) {
        throw ParameterError("dec: theta needs n bits and c needs n blocks");
    }
    auto [z, x] = updated_pads(key, g);
    StatusWord out{BitVec(key.n), false};
    for (int i = 0; i < key.n; i++) {
        int m = dec_block(key, theta[i], z[i], x[i], c.slice(i * p, p));
        if (m < 0) {
            return StatusWord::bot(key.n);
        }
        out.value.set(i, m);
    }
    return out;
}

bool ver(const AuthKey &key, const BitVec &theta, const LinearGate &g, const BitVec &c) {
    return !dec(key, theta, g, c).bottom;
}

AuthKey pauli_key_update(const AuthKey &key, const Pauli &p) {
    if ((int)p.size() != key.n) {
        throw ParameterError("Pauli must act on n logical qubits");
    }
    AuthKey out = key;
    for (int i = 0; i < key.n; i++) {
        if (p.x[i]) {
            out.x[i] ^= key.delta;
        }
        if (p.z[i]) {
            out.z[i] ^= key.delta_hat;
        }
    }
    return out;
}

}  // namespace plmforge
