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

#include "plmforge/gadgets.h"
#include "plmforge/statevec.h"
#include "selftest/suites.h"

namespace plmforge::selftest {

namespace {

const GadgetKind kKinds[] = {GadgetKind::H, GadgetKind::CNOT, GadgetKind::T};

/// <want| rho_keep |want>.
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

StateVector ideal(GadgetKind kind, StateVector psi) {
    switch (kind) {
        case GadgetKind::H:
            psi.h(0);
            break;
        case GadgetKind::CNOT:
            psi.cnot(0, 1);
            break;
        case GadgetKind::T:
            psi.t(0);
            break;
    }
    return psi;
}

}  // namespace

CaseList gadget_correctness(const SuiteOptions &opt) {
    CaseList out;
    Rng rng = Rng(opt.seed).fork("gadget_correctness");
    for (GadgetKind kind : kKinds) {
        const Gadget &g = gadget_for(kind);
        StateVector magic(g.magic.width);
        apply_circuit(magic, g.magic.prep, BitVec(0));
        size_t steps = g.steps.size();
        double worst = 1;
        double worst_total = 0;
        for (int trial = 0; trial < 100; trial++) {
            StateVector psi = StateVector::random(g.num_inputs, rng);
            BitVec frame(2 * g.num_inputs);
            for (size_t k = 0; k < frame.size(); k++) {
                frame.set(k, rng.bit());
            }
            // Incoming byproduct X^x Z^z on each input.
            StateVector in = psi;
            for (int q = 0; q < g.num_inputs; q++) {
                if (frame[2 * q]) {
                    in.z(q);
                }
                if (frame[2 * q + 1]) {
                    in.x(q);
                }
            }
            StateVector start = tensor(in, magic);
            StateVector want = ideal(kind, psi);
            double total = 0;
            for (uint64_t branch = 0; branch < (uint64_t{1} << steps); branch++) {
                StateVector s = start;
                BitVec outcomes = BitVec::from_uint(branch, steps);
                double p = run_gadget_forced(g, s, frame, outcomes);
                total += p;
                if (p < 1e-12) {
                    continue;
                }
                s.normalize();
                auto frames = eval_output_frames(g, frame, outcomes);
                for (size_t q = 0; q < frames.size(); q++) {
                    if (frames[q].second) {
                        s.x(g.outputs[q]);
                    }
                    if (frames[q].first) {
                        s.z(g.outputs[q]);
                    }
                }
                worst = std::min(worst, overlap_on(s, g.outputs, want));
            }
            worst_total = std::max(worst_total, std::abs(total - 1));
        }
        std::string base = "gadget." + std::string(gadget_name(kind));
        out.push_back(at_least(base + ".min_fidelity", worst, 1 - 1e-10));
        out.push_back(at_most(base + ".branch_mass_error", worst_total, 1e-10));
    }
    return out;
}

CaseList deterministic_bases(const SuiteOptions &opt) {
    (void)opt;
    CaseList out;
    for (GadgetKind kind : kKinds) {
        const Gadget &g = gadget_for(kind);
        size_t k = g.measured.size();
        std::vector<int> flips = kind == GadgetKind::T ? std::vector<int>{0, 1} : std::vector<int>{0};
        double worst_prob = 0;
        double worst_gram = 0;
        double worst_sum = 0;
        size_t count = 0;
        for (int flip : flips) {
            BitVec frame(2 * g.num_inputs);
            if (kind == GadgetKind::T) {
                frame.set(1, flip);
            }
            std::vector<StateVector> basis;
            for (uint64_t label = 0; label < (uint64_t{1} << k); label++) {
                BitVec lab = BitVec::from_uint(label, k);
                StateVector b = basis_state(kind, lab, flip);
                StateVector s = b;
                double p = run_gadget_forced(g, s, frame, lab);
                worst_prob = std::max(worst_prob, std::abs(p - 1));
                basis.push_back(std::move(b));
            }
            size_t d = size_t{1} << k;
            std::vector<cplx> sum(d * d, 0.0);
            for (size_t a = 0; a < basis.size(); a++) {
                for (size_t b = 0; b < basis.size(); b++) {
                    double want = a == b ? 1 : 0;
                    worst_gram = std::max(worst_gram, std::abs(inner_product(basis[a], basis[b]) - want));
                }
                for (size_t r = 0; r < d; r++) {
                    for (size_t c = 0; c < d; c++) {
                        sum[r * d + c] += basis[a].amps()[r] * std::conj(basis[a].amps()[c]);
                    }
                }
            }
            for (size_t r = 0; r < d; r++) {
                for (size_t c = 0; c < d; c++) {
                    worst_sum = std::max(worst_sum, std::abs(sum[r * d + c] - cplx(r == c ? 1 : 0)));
                }
            }
            count += basis.size();
        }
        std::string base = "basis." + std::string(gadget_name(kind));
        out.push_back(at_most(base + ".label_probability_error", worst_prob, 1e-10));
        out.push_back(at_most(base + ".gram_error", worst_gram, 1e-10));
        out.push_back(at_most(base + ".completeness_error", worst_sum, 1e-10));
        out.push_back(CaseResult{base + ".size", count == flips.size() * (size_t{1} << k), (double)count,
                                 (double)(flips.size() * (size_t{1} << k))});
    }
    return out;
}

}  // namespace plmforge::selftest
