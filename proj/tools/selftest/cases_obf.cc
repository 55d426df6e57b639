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
#include <map>

#include "plmforge/errors.h"
#include "plmforge/obfuscator.h"
#include "selftest/suites.h"

namespace plmforge::selftest {

namespace {

std::vector<std::string> selected_programs(const SuiteOptions &opt) {
    if (!opt.programs.empty()) {
        return opt.programs;
    }
    return program_names(opt.big);
}

StateVector apply_on_prefix(const Circuit &c, StateVector psi) {
    std::vector<int> map(c.n_q);
    for (int w = 0; w < c.n_q; w++) {
        map[w] = w;
    }
    apply_circuit(psi, c, BitVec(0), map);
    return psi;
}

void accumulate(std::map<BitVec, double> &into, const std::map<BitVec, double> &d, double weight) {
    for (const auto &[k, p] : d) {
        into[k] += weight * p;
    }
}

double total_variation(const std::map<BitVec, double> &a, const std::map<BitVec, double> &b) {
    std::map<BitVec, double> diff = a;
    for (const auto &[k, p] : b) {
        diff[k] -= p;
    }
    double tv = 0;
    for (const auto &[k, p] : diff) {
        tv += std::abs(p);
    }
    return tv / 2;
}

}  // namespace

CaseList e2e_functionality(const SuiteOptions &opt) {
    CaseList out;
    for (const std::string &name : selected_programs(opt)) {
        Circuit c = parse_circuit(program_text(name));
        Rng rng = Rng(opt.seed).fork("e2e/" + name);
        int n = c.n_q;
        double worst = 1;
        int bottoms = 0;
        for (int trial = 0; trial < opt.e2e_trials; trial++) {
            // The first input is entangled with a reference as large as itself.
            StateVector psi = StateVector::random(trial == 0 ? 2 * n : n, rng);
            ObfuscationPackage pkg = qobf(c, StateVector(0), ObfParams{}, rng);
            try {
                QEvalResult r = qeval(pkg, psi, rng);
                worst = std::min(worst, fidelity(r.output, apply_on_prefix(c, psi)));
            } catch (const ProtocolFailure &) {
                bottoms++;
                worst = 0;
            }
        }
        out.push_back(at_least("e2e." + name + ".min_fidelity", worst, 0.999));
        out.push_back(at_most("e2e." + name + ".bottom_events", bottoms, 0));
    }
    return out;
}

CaseList sim_equivalence(const SuiteOptions &opt) {
    CaseList out;
    for (const std::string &name : selected_programs(opt)) {
        Circuit c = parse_circuit(program_text(name));
        Rng rng = Rng(opt.seed).fork("sim/" + name);
        int n = c.n_q;
        double worst = 1;
        int bottoms = 0;
        std::map<BitVec, double> i_real, i_sim, l_real, l_sim;
        double w = 1.0 / opt.sim_trials;
        for (int trial = 0; trial < opt.sim_trials; trial++) {
            StateVector psi = StateVector::random(2 * n, rng);
            ObfuscationPackage pkg = qobf(c, StateVector(0), ObfParams{}, rng);
            ObfuscationPackage sim = sim_package(package_shape(pkg), make_sim_unitary(c), rng);
            try {
                QEvalResult a = qeval(pkg, psi, rng, true);
                QEvalResult b = qeval(sim, psi, rng, true);
                worst = std::min(worst, fidelity(a.output, b.output));
                accumulate(i_real, a.i_dist, w);
                accumulate(i_sim, b.i_dist, w);
                accumulate(l_real, a.final_dist, w);
                accumulate(l_sim, b.final_dist, w);
            } catch (const ProtocolFailure &) {
                bottoms++;
                worst = 0;
            }
        }
        out.push_back(at_least("sim." + name + ".min_output_fidelity", worst, 0.99));
        out.push_back(at_most("sim." + name + ".input_label_tv", total_variation(i_real, i_sim), 0.05));
        out.push_back(at_most("sim." + name + ".output_label_tv", total_variation(l_real, l_sim), 0.05));
        out.push_back(at_most("sim." + name + ".bottom_events", bottoms, 0));
    }
    return out;
}

}  // namespace plmforge::selftest
