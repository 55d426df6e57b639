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

// Acceptance run: one PASS/FAIL line per criterion. A criterion passes when every
// case meets its pinned tolerance and the criterion finishes inside its budget.
// Arguments select criteria by number; none runs all ten.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "selftest/suites.h"

using namespace plmforge::selftest;

namespace {

struct Criterion {
    int id;
    const char *title;
    CaseList (*run)(const SuiteOptions &);
    double budget_s;
};

const Criterion kCriteria[] = {
    {1, "gadget correctness", gadget_correctness, 5},
    {2, "deterministic bases", deterministic_bases, 5},
    {3, "compiler distribution equality", compiler_distributions, 60},
    {4, "projectivity and operator identity", plm_projectivity, 120},
    {5, "coset-auth correctness diagram", auth_diagram, 60},
    {6, "Pauli key update", pauli_key_update, 30},
    {7, "teleportation", teleport_cases, 10},
    {8, "end-to-end obfuscation functionality", e2e_functionality, 600},
    {9, "real-vs-sim honest equivalence", sim_equivalence, 600},
    {10, "circuit rewriting", rewrite_cases, 10},
};

}  // namespace

int main(int argc, char **argv) {
    std::set<int> wanted;
    for (int a = 1; a < argc; a++) {
        wanted.insert(std::atoi(argv[a]));
    }
    SuiteOptions opt;
    opt.seed = 20261018;
    if (const char *env = std::getenv("PLMFORGE_SEED")) {
        opt.seed = std::strtoull(env, nullptr, 10);
    }
    int failures = 0;
    for (const Criterion &c : kCriteria) {
        if (!wanted.empty() && !wanted.count(c.id)) {
            continue;
        }
        auto t0 = std::chrono::steady_clock::now();
        CaseList cases;
        std::string error;
        try {
            cases = c.run(opt);
        } catch (const std::exception &e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = error.empty() && !cases.empty() && secs <= c.budget_s;
        for (const CaseResult &r : cases) {
            ok &= r.pass;
        }
        std::printf("%s criterion %d: %s (%zu cases, %.1f s of %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                    cases.size(), secs, c.budget_s);
        for (const CaseResult &r : cases) {
            std::printf("    %s %s metric=%.6g tolerance=%.6g\n", r.pass ? "ok  " : "FAIL", r.name.c_str(), r.metric,
                        r.tolerance);
        }
        if (!error.empty()) {
            std::printf("    error: %s\n", error.c_str());
        }
        std::fflush(stdout);
        failures += !ok;
    }
    return failures == 0 ? 0 : 1;
}
