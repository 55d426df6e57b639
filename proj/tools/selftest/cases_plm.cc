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
#include "plmforge/plm.h"
#include "selftest/suites.h"

namespace plmforge::selftest {

namespace {

struct TestCircuit {
    const char *name;
    const char *text;
};

// 1-2 qubits, at most three gates, every one with a classical input register.
const TestCircuit kCircuits[] = {
    {"h", "qubits 1\ncin 1\nH 0\nmeasure 0\n"},
    {"hth", "qubits 1\ncin 1\nH 0\nT 0\nH 0\nmeasure 0\n"},
    {"bell_cx", "qubits 2\ncin 1\nH 0\nCNOT 0 1\ncX 1 @0\nmeasure 0 1\n"},
    {"ht_cnot", "qubits 2\ncin 1\nH 0\nT 0\nCNOT 0 1\nmeasure 1\n"},
    {"sh_cz", "qubits 1\ncin 1\nS 0\nH 0\ncZ 0 @0\nmeasure 0\n"},
    {"x_swap_cx", "qubits 2\ncin 2\nX 0\nSWAP 0 1\ncX 0 @1\nmeasure 0 1\n"},
};

double max_gap(const std::map<BitVec, double> &a, const std::map<BitVec, double> &b) {
    double worst = 0;
    for (const auto &[y, p] : a) {
        auto it = b.find(y);
        worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto &[y, p] : b) {
        if (!a.count(y)) {
            worst = std::max(worst, p);
        }
    }
    return worst;
}

/// The circuit's own output distribution on an input that may carry reference qubits.
std::map<BitVec, double> reference_distribution(const Circuit &c, const BitVec &i, const StateVector &input) {
    StateVector s = tensor(input, StateVector(c.aux));
    // Circuit wire w sits at w for inputs and after the reference for ancillas.
    int ref = input.num_qubits() - c.n_q;
    std::vector<int> map(c.n_q + c.aux);
    for (int w = 0; w < c.n_q + c.aux; w++) {
        map[w] = w < c.n_q ? w : w + ref;
    }
    apply_circuit(s, c, i, map);
    std::vector<int> measured;
    for (int w : c.measure) {
        measured.push_back(map[w]);
    }
    return measure_fn_distribution(s, MeasSpec{[](const BitVec &b) { return b; }, BitVec(), {}}, measured);
}

}  // namespace

CaseList compiler_distributions(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("compiler_distributions");
    for (const TestCircuit &tc : kCircuits) {
        Circuit c = parse_circuit(tc.text);
        PLMProgram p = compile(c);
        double worst = 0;
        for (uint64_t iv = 0; iv < (uint64_t{1} << c.n_c); iv++) {
            BitVec i = BitVec::from_uint(iv, c.n_c);
            StateVector in = StateVector::random(c.n_q, rng);
            worst = std::max(worst, max_gap(plm_distribution(p, i, in), reference_distribution(c, i, in)));
        }
        out.push_back(at_most(std::string("dist.") + tc.name + ".max_outcome_gap", worst, 1e-9));
    }
    // The input entangled with a reference qubit the program never sees.
    {
        Circuit c = parse_circuit(kCircuits[1].text);
        PLMProgram p = compile(c);
        double worst = 0;
        for (uint64_t iv = 0; iv < 2; iv++) {
            BitVec i = BitVec::from_uint(iv, 1);
            StateVector in = StateVector::random(2, rng);
            worst = std::max(worst, max_gap(plm_distribution(p, i, in), reference_distribution(c, i, in)));
        }
        out.push_back(at_most("dist.hth_entangled.max_outcome_gap", worst, 1e-9));
    }
    return out;
}

CaseList plm_projectivity(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("plm_projectivity");
    for (const TestCircuit &tc : kCircuits) {
        Circuit c = parse_circuit(tc.text);
        PLMProgram p = compile(c);
        std::string base = std::string("plm.") + tc.name;
        if (p.t() > 10) {
            continue;
        }
        double proj = 0, ident = 0, compl_ = 0;
        bool proj_ok = true, ident_ok = true, compl_ok = true;
        for (uint64_t iv = 0; iv < (uint64_t{1} << c.n_c); iv++) {
            BitVec i = BitVec::from_uint(iv, c.n_c);
            CheckReport a = projectivity_check(p, i, rng);
            CheckReport b = output_projector_identity_check(p, c, i, rng);
            proj = std::max(proj, a.max_distance);
            ident = std::max(ident, b.max_distance);
            proj_ok &= a.pass && a.exhaustive;
            ident_ok &= b.pass;
            if (p.t() <= 8) {
                CheckReport d = completeness_check(p, i);
                compl_ = std::max(compl_, d.max_distance);
                compl_ok &= d.pass;
            }
        }
        out.push_back(CaseResult{base + ".projectivity_distance", proj_ok && proj <= 1e-8, proj, 1e-8});
        out.push_back(CaseResult{base + ".identity_distance", ident_ok && ident <= 1e-8, ident, 1e-8});
        if (p.t() <= 8) {
            out.push_back(CaseResult{base + ".completeness_error", compl_ok && compl_ <= 1e-10, compl_, 1e-10});
        }
    }
    return out;
}

}  // namespace plmforge::selftest
