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

#include "plmforge/circuit.h"
#include "plmforge/f2_linalg.h"
#include "plmforge/statevec.h"
#include "plmforge/teleport.h"
#include "selftest/suites.h"

namespace plmforge::selftest {

namespace {

double overlap_on(const StateVector &s, std::span<const int> keep, const StateVector &want) {
    std::vector<cplx> rho = reduced_density(s, keep);
    size_t d = want.dim();
    cplx acc = 0;
    for (size_t a = 0; a < d; a++) {
        for (size_t b = 0; b < d; b++) {
            acc += std::conj(want.amps()[a]) * rho[a * d + b] * want.amps()[b];
        }
    }
    return acc.real();
}

std::vector<int> range(int start, int count) {
    std::vector<int> w(count);
    for (int k = 0; k < count; k++) {
        w[k] = start + k;
    }
    return w;
}

}  // namespace

CaseList teleport_cases(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("teleport");
    for (int n : {1, 2}) {
        // Wires: message (n), EPR left halves (n), EPR right halves (n), reference (n).
        double worst_fid = 1, worst_prob = 0;
        for (int trial = 0; trial < 5; trial++) {
            StateVector psi = StateVector::random(2 * n, rng);
            // tensor gives (msg, ref, left, right); old qubit q moves to perm[q].
            std::vector<int> perm;
            for (int k = 0; k < n; k++) {
                perm.push_back(k);
            }
            for (int k = 0; k < n; k++) {
                perm.push_back(3 * n + k);
            }
            for (int k = 0; k < 2 * n; k++) {
                perm.push_back(n + k);
            }
            StateVector start = permute_wires(tensor(psi, epr_pairs(n)), perm);
            std::vector<int> msg = range(0, n), left = range(n, n), right = range(2 * n, n), ref = range(3 * n, n);
            for (uint64_t label = 0; label < (uint64_t{1} << (2 * n)); label++) {
                Pauli p = Pauli::from_label(BitVec::from_uint(label, 2 * n));
                StateVector s = start;
                double prob = tp_send_forced(s, msg, left, p);
                worst_prob = std::max(worst_prob, std::abs(prob - std::pow(0.25, n)));
                tp_recv(p, s, right);
                std::vector<int> keep = right;
                keep.insert(keep.end(), ref.begin(), ref.end());
                worst_fid = std::min(worst_fid, overlap_on(s, keep, psi));
            }
        }
        std::string base = "teleport.n" + std::to_string(n);
        out.push_back(at_least(base + ".min_roundtrip_fidelity", worst_fid, 1 - 1e-10));
        out.push_back(at_most(base + ".branch_probability_error", worst_prob, 1e-10));
    }
    {
        const int runs = 10000;
        std::vector<int> counts(4, 0);
        for (int k = 0; k < runs; k++) {
            StateVector s = tensor(StateVector::random(1, rng), epr_pairs(1));
            std::vector<int> msg{0}, left{1};
            Pauli p = tp_send(s, msg, left, rng);
            counts[p.label().to_uint()]++;
        }
        double sigma = std::sqrt(runs * 0.25 * 0.75);
        double worst = 0;
        for (int c : counts) {
            worst = std::max(worst, std::abs(c - runs / 4.0) / sigma);
        }
        out.push_back(at_most("teleport.uniformity_sigmas", worst, 3));
    }
    return out;
}

CaseList rewrite_cases(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("rewrite");
    struct Pair {
        const char *name;
        const char *inner;
        const char *outer;
    };
    const Pair pairs[] = {
        {"q1", "qubits 1\nH 0\nT 0\n", "qubits 1\nU 0\n"},
        {"q2", "qubits 1\nH 0\nT 0\n", "qubits 2\nU 0\nCNOT 0 1\nU 1\n"},
        {"q3", "qubits 1\nT 0\nH 0\nS 0\n", "qubits 2\nU 0\nH 1\nUdag 1\nCNOT 1 0\nU 0\n"},
        {"q3_two_wire", "qubits 2\naux 1\nH 0\nCNOT 0 2\nT 2\nCNOT 0 2\nCNOT 0 1\n",
         "qubits 2\nU 0 1\nS 1\nUdag 1 0\nU 0 1\n"},
    };
    double worst = 1;
    for (const Pair &pr : pairs) {
        Circuit inner = parse_circuit(pr.inner);
        Circuit outer = parse_circuit(pr.outer);
        int n = inner.n_q;
        Circuit rewritten = rewrite_oracle_program(outer, inner, n);
        OracleImpl impl = [&](StateVector &s, std::span<const int> wires, bool dagger) {
            // Exact U: the inner program on fresh ancillas that it returns to |0>.
            StateVector ext = tensor(s, StateVector(inner.aux));
            std::vector<int> map(wires.begin(), wires.end());
            for (int k = 0; k < inner.aux; k++) {
                map.push_back(s.num_qubits() + k);
            }
            apply_circuit(ext, dagger ? inverse_circuit(inner) : inner, BitVec(0), map);
            std::vector<int> anc = range(s.num_qubits(), inner.aux);
            project_out(ext, anc, BitVec(inner.aux));
            s = ext;
        };
        for (int trial = 0; trial < 5; trial++) {
            // Outer wires plus an equally large reference.
            StateVector psi = StateVector::random(2 * outer.n_q, rng);
            StateVector want = psi;
            std::vector<int> outer_map = range(0, outer.n_q);
            apply_circuit(want, outer, BitVec(0), outer_map, &impl);

            StateVector got = tensor(psi, StateVector(rewritten.aux));
            std::vector<int> map = range(0, outer.n_q);
            for (int k = 0; k < rewritten.aux; k++) {
                map.push_back(2 * outer.n_q + k);
            }
            apply_circuit(got, rewritten, BitVec(0), map);
            std::vector<int> keep = range(0, 2 * outer.n_q);
            worst = std::min(worst, overlap_on(got, keep, want));
        }
    }
    out.push_back(at_least("rewrite.min_fidelity", worst, 1 - 1e-9));

    // U then U^dag restores everything, ancillas included.
    {
        Circuit inner = parse_circuit("qubits 1\nH 0\nT 0\nH 0\n");
        Circuit outer = parse_circuit("qubits 1\nU 0\nUdag 0\n");
        Circuit rewritten = rewrite_oracle_program(outer, inner, 1);
        double worst_id = 1;
        for (int trial = 0; trial < 5; trial++) {
            StateVector psi = StateVector::random(1, rng);
            StateVector got = tensor(psi, StateVector(rewritten.aux));
            apply_circuit(got, rewritten, BitVec(0));
            worst_id = std::min(worst_id, fidelity(got, tensor(psi, StateVector(rewritten.aux))));
        }
        out.push_back(at_least("rewrite.u_udag_identity_fidelity", worst_id, 1 - 1e-9));
    }
    return out;
}

CaseList f2_cases(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("f2");
    size_t bad_dim = 0, bad_perp = 0, bad_reduce = 0;
    for (int trial = 0; trial < 200; trial++) {
        size_t d = 1 + rng.below(12);
        size_t k = rng.below(d + 1);
        Subspace s = random_subspace(d, k, rng);
        Subspace perp = s.orthogonal_complement();
        bad_dim += s.dim() != k || s.dim() + perp.dim() != d;
        bad_perp += !(perp.orthogonal_complement() == s);
        for (const BitVec &a : s.basis()) {
            for (const BitVec &b : perp.basis()) {
                bad_perp += a.dot(b);
            }
        }
        BitVec v(d);
        for (size_t q = 0; q < d; q++) {
            v.set(q, rng.bit());
        }
        BitVec member = s.element(rng.below(uint64_t{1} << k));
        bad_reduce += !(s.reduce(v ^ member) == s.reduce(v)) || !s.contains(member);
    }
    out.push_back(at_most("f2.dimension_mismatches", (double)bad_dim, 0));
    out.push_back(at_most("f2.complement_mismatches", (double)bad_perp, 0));
    out.push_back(at_most("f2.coset_reduce_mismatches", (double)bad_reduce, 0));
    return out;
}

CaseList statevec_cases(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("statevec");
    double mass = 0, repeat = 0, norm = 0;
    for (int trial = 0; trial < 50; trial++) {
        int n = 1 + (int)rng.below(4);
        StateVector s = StateVector::random(n, rng);
        BitVec theta(n);
        for (int q = 0; q < n; q++) {
            theta.set(q, rng.bit());
        }
        LinearGate g;
        if (n > 1) {
            int c = (int)rng.below(n);
            int t = (int)rng.below(n - 1);
            g.emplace_back(c, t >= c ? t + 1 : t);
        }
        // Parity of the first two bits, plus the last one.
        MeasSpec spec{[n](const BitVec &b) {
                          BitVec o(2);
                          o.set(0, b[0] ^ (n > 1 && b[1]));
                          o.set(1, b[n - 1]);
                          return o;
                      },
                      theta, g};
        std::vector<int> wires = range(0, n);
        double total = 0;
        for (const auto &[o, p] : measure_fn_distribution(s, spec, wires)) {
            total += p;
        }
        mass = std::max(mass, std::abs(total - 1));
        MeasureResult first = measure_fn(s, spec, wires, rng);
        auto again = measure_fn_distribution(s, spec, wires);
        repeat = std::max(repeat, std::abs(1 - again[first.outcome]));
        norm = std::max(norm, std::abs(s.norm_squared() - 1));
    }
    out.push_back(at_most("statevec.distribution_mass_error", mass, 1e-12));
    out.push_back(at_most("statevec.repeat_measurement_error", repeat, 1e-12));
    out.push_back(at_most("statevec.post_norm_error", norm, 1e-12));
    return out;
}

}  // namespace plmforge::selftest
