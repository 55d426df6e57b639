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

#ifndef PLMFORGE_TOOLS_SELFTEST_SUITES_H
#define PLMFORGE_TOOLS_SELFTEST_SUITES_H

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace plmforge::selftest {

/// One checked property. `metric` is the worst observed value and `tolerance` the
/// bound it is held to; which side is "worse" depends on the case and is spelled
/// out in the name.
struct CaseResult {
    std::string name;
    bool pass = false;
    double metric = 0;
    double tolerance = 0;
};

struct SuiteReport {
    std::string suite;
    uint64_t seed = 0;
    std::vector<CaseResult> cases;
    double wall_ms = 0;

    bool pass() const;
    /// Keys and case order are stable for diffing.
    nlohmann::json to_json() const;
};

struct SuiteOptions {
    uint64_t seed = 0;
    /// Adds the n = 2 Clifford programs to the end-to-end suite.
    bool big = false;
    /// Trials per program for the end-to-end and simulator suites.
    int e2e_trials = 50;
    int sim_trials = 200;
    /// Restricts the end-to-end and simulator suites to these program names (all when empty).
    std::vector<std::string> programs;
};

using CaseList = std::vector<CaseResult>;

/// Gadgets on random inputs over every branch, frames from the gadget library.
CaseList gadget_correctness(const SuiteOptions &opt);
/// beta^H, beta^CNOT, beta^T: deterministic outcomes and completeness.
CaseList deterministic_bases(const SuiteOptions &opt);
/// Compiled PLM distribution vs the circuit itself.
CaseList compiler_distributions(const SuiteOptions &opt);
/// Projectivity and output projector identity on small programs.
CaseList plm_projectivity(const SuiteOptions &opt);
/// Enc o M[f, theta, G] vs M[f o Dec, theta~, G~] o Enc.
CaseList auth_diagram(const SuiteOptions &opt);
/// Enc_{k_P} vs Enc_k o P, and Ver_{k_P} vs Ver_k.
CaseList pauli_key_update(const SuiteOptions &opt);
CaseList teleport_cases(const SuiteOptions &opt);
/// qeval o qobf on the single-qubit program set.
CaseList e2e_functionality(const SuiteOptions &opt);
/// Honest evaluation of real vs simulated packages.
CaseList sim_equivalence(const SuiteOptions &opt);
CaseList rewrite_cases(const SuiteOptions &opt);
CaseList f2_cases(const SuiteOptions &opt);
CaseList statevec_cases(const SuiteOptions &opt);

const std::vector<std::string> &suite_names();
/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string &name, const SuiteOptions &opt);

/// Circuit text of the named single-qubit test program (I, X, Z, H, S, T, HT, TH, and
/// with --big the two-qubit CNOT and HCNOT).
std::string program_text(const std::string &name);
std::vector<std::string> program_names(bool big);

/// Helpers shared by the case files.
CaseResult at_most(std::string name, double metric, double tolerance);
CaseResult at_least(std::string name, double metric, double tolerance);

}  // namespace plmforge::selftest

#endif
