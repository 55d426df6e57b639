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

#include <algorithm>
#include <cmath>

#include "plmforge/coset_auth.h"
#include "plmforge/statevec.h"
#include "selftest/suites.h"

namespace plmforge::selftest {

namespace {

LinearGate random_cnots(int n, Rng &rng) {
    LinearGate g;
    if (n < 2) {
        return g;
    }
    int count = (int)rng.below(4);
    for (int k = 0; k < count; k++) {
        int c = (int)rng.below(n);
        int t = (int)rng.below(n - 1);
        g.emplace_back(c, t >= c ? t + 1 : t);
    }
    return g;
}

BitVec random_bits(size_t n, Rng &rng) {
    BitVec v(n);
    for (size_t k = 0; k < n; k++) {
        v.set(k, rng.bit());
    }
    return v;
}

std::vector<int> iota(int n) {
    std::vector<int> w(n);
    for (int k = 0; k < n; k++) {
        w[k] = k;
    }
    return w;
}

}  // namespace

CaseList auth_diagram(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("auth_diagram");
    for (int lambda : {1, 2}) {
        for (int n : {1, 2}) {
            double worst_gap = 0, worst_fid = 1, worst_ver = 0;
            for (int trial = 0; trial < 20; trial++) {
                AuthKey key = keygen(lambda, n, rng);
                BitVec theta = random_bits(n, rng);
                LinearGate g = random_cnots(n, rng);
                // f: a random two-bit table on the n plaintext bits.
                std::vector<BitVec> table;
                for (int v = 0; v < (1 << n); v++) {
                    table.push_back(random_bits(2, rng));
                }
                OutcomeFn f = [table](const BitVec &v) { return table[v.to_uint()].concat(BitVec(1)); };
                std::vector<int> wires = iota(n);
                StateVector psi = StateVector::random(n, rng);
                MeasSpec plain{f, theta, g};

                std::vector<int> logical = iota(n);
                StateVector cipher = enc(key, psi, logical);
                auto [theta_t, g_t] = eval_lift(lambda, theta, g);
                OutcomeFn f_dec = [&key, theta, g, table](const BitVec &c) {
                    StatusWord m = dec(key, theta, g, c);
                    if (m.bottom) {
                        return BitVec::from_uint(1, 3);
                    }
                    return table[m.value.to_uint()].concat(BitVec(1));
                };
                MeasSpec wrapped{f_dec, theta_t, g_t};
                std::vector<int> cwires = iota(cipher.num_qubits());

                auto d_plain = measure_fn_distribution(psi, plain, wires);
                auto d_cipher = measure_fn_distribution(cipher, wrapped, cwires);
                for (const auto &[o, p] : d_plain) {
                    auto it = d_cipher.find(o);
                    worst_gap = std::max(worst_gap, std::abs(p - (it == d_cipher.end() ? 0 : it->second)));
                    if (p < 1e-12) {
                        continue;
                    }
                    StateVector a = psi;
                    project_fn(a, plain, wires, o);
                    StateVector b = cipher;
                    project_fn(b, wrapped, cwires, o);
                    worst_fid = std::min(worst_fid, fidelity(enc(key, a, logical), b));
                }
                for (const auto &[o, p] : d_cipher) {
                    if (!d_plain.count(o)) {
                        worst_gap = std::max(worst_gap, p);
                    }
                }
                OutcomeFn accept = [&key, theta, g](const BitVec &c) {
                    return BitVec::from_uint(ver(key, theta, g, c), 1);
                };
                auto d_ver = measure_fn_distribution(cipher, MeasSpec{accept, theta_t, g_t}, cwires);
                worst_ver = std::max(worst_ver, std::abs(1 - d_ver[BitVec::from_uint(1, 1)]));
            }
            std::string base = "auth.lambda" + std::to_string(lambda) + ".n" + std::to_string(n);
            out.push_back(at_most(base + ".outcome_gap", worst_gap, 1e-9));
            out.push_back(at_least(base + ".post_fidelity", worst_fid, 1 - 1e-9));
            out.push_back(at_most(base + ".ver_reject_mass", worst_ver, 1e-12));
        }
    }
    return out;
}

CaseList pauli_key_update(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("pauli_key_update");
    // Every Pauli P_(z,x) on two wires, which covers each single-qubit Pauli on each wire.
    for (int lambda : {1, 2}) {
        int n = 2;
        double worst = 1;
        for (uint64_t label = 0; label < 16; label++) {
            AuthKey key = keygen(lambda, n, rng);
            Pauli p = Pauli::from_label(BitVec::from_uint(label, 4));
            StateVector psi = StateVector::random(n, rng);
            StateVector moved = psi;
            std::vector<int> wires = iota(n);
            moved.apply_pauli(p, wires);
            double f = fidelity(enc(pauli_key_update(key, p), psi, wires), enc(key, moved, wires));
            worst = std::min(worst, f);
        }
        out.push_back(at_least("keyupdate.lambda" + std::to_string(lambda) + ".min_fidelity", worst, 1 - 1e-10));
    }
    // Ver agreement: exhaustive over one block at lambda 1, sampled at lambda 2.
    {
        size_t mismatches = 0, checked = 0;
        for (int trial = 0; trial < 8; trial++) {
            AuthKey key = keygen(1, 1, rng);
            for (uint64_t label = 0; label < 4; label++) {
                AuthKey moved = pauli_key_update(key, Pauli::from_label(BitVec::from_uint(label, 2)));
                for (int th = 0; th < 2; th++) {
                    BitVec theta = BitVec::from_uint(th, 1);
                    for (uint64_t c = 0; c < 8; c++) {
                        BitVec block = BitVec::from_uint(c, 3);
                        mismatches += ver(key, theta, {}, block) != ver(moved, theta, {}, block);
                        checked++;
                    }
                }
            }
        }
        out.push_back(CaseResult{"keyupdate.ver.lambda1.exhaustive_mismatches", mismatches == 0 && checked == 512,
                                 (double)mismatches, 0});
    }
    {
        size_t mismatches = 0;
        for (int trial = 0; trial < 1000; trial++) {
            AuthKey key = keygen(2, 2, rng);
            Pauli p = Pauli::from_label(random_bits(4, rng));
            AuthKey moved = pauli_key_update(key, p);
            BitVec theta = random_bits(2, rng);
            LinearGate g = random_cnots(2, rng);
            BitVec c = random_bits(10, rng);
            // Half the samples start from an honest codeword so acceptance is exercised too.
            if (trial % 2 == 0) {
                StateVector cw = enc(key, StateVector::random(2, rng), iota(2));
                auto [theta_t, g_t] = eval_lift(2, theta, g);
                std::vector<int> all = iota(10);
                c = measure_fn(cw, MeasSpec{[](const BitVec &b) { return b; }, theta_t, g_t}, all, rng).outcome;
            }
            mismatches += ver(key, theta, g, c) != ver(moved, theta, g, c);
        }
        out.push_back(CaseResult{"keyupdate.ver.lambda2.sampled_mismatches", mismatches == 0, (double)mismatches, 0});
    }
    return out;
}

}  // namespace plmforge::selftest
