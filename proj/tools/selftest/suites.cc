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

#include "selftest/suites.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace plmforge::selftest {

namespace {

using Runner = CaseList (*)(const SuiteOptions &);

const std::map<std::string, std::vector<Runner>> &registry() {
    static const std::map<std::string, std::vector<Runner>> r = {
        {"f2", {f2_cases}},
        {"statevec", {statevec_cases}},
        {"gadgets", {gadget_correctness, deterministic_bases}},
        {"plm", {compiler_distributions, plm_projectivity}},
        {"auth", {auth_diagram, pauli_key_update}},
        {"teleport", {teleport_cases}},
        {"e2e", {e2e_functionality}},
        {"sim-equiv", {sim_equivalence}},
        {"rewrite", {rewrite_cases}},
    };
    return r;
}

}  // namespace

bool SuiteReport::pass() const {
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const CaseResult &c) { return c.pass; });
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const CaseResult &c : cases) {
        list.push_back({{"name", c.name}, {"pass", c.pass}, {"metric", c.metric}, {"tolerance", c.tolerance}});
    }
    return {{"suite", suite}, {"seed", seed}, {"cases", list}, {"wall_ms", wall_ms}};
}

CaseResult at_most(std::string name, double metric, double tolerance) {
    return CaseResult{std::move(name), metric <= tolerance, metric, tolerance};
}

CaseResult at_least(std::string name, double metric, double tolerance) {
    return CaseResult{std::move(name), metric >= tolerance, metric, tolerance};
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[k, v] : registry()) {
            out.push_back(k);
        }
        return out;
    }();
    return names;
}

SuiteReport run_suite(const std::string &name, const SuiteOptions &opt) {
    auto it = registry().find(name);
    if (it == registry().end()) {
        throw std::invalid_argument("unknown suite '" + name + "'");
    }
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = name;
    rep.seed = opt.seed;
    for (Runner r : it->second) {
        CaseList part = r(opt);
        rep.cases.insert(rep.cases.end(), part.begin(), part.end());
    }
    std::stable_sort(rep.cases.begin(), rep.cases.end(),
                     [](const CaseResult &a, const CaseResult &b) { return a.name < b.name; });
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string program_text(const std::string &name) {
    // Names read as operator products: HT applies T first.
    static const std::map<std::string, std::string> programs = {
        {"I", "qubits 1\n"},
        {"X", "qubits 1\nX 0\n"},
        {"Z", "qubits 1\nZ 0\n"},
        {"H", "qubits 1\nH 0\n"},
        {"S", "qubits 1\nS 0\n"},
        {"T", "qubits 1\nT 0\n"},
        {"HT", "qubits 1\nT 0\nH 0\n"},
        {"TH", "qubits 1\nH 0\nT 0\n"},
        {"CNOT", "qubits 2\nCNOT 0 1\n"},
        {"CNOT.H", "qubits 2\nH 0\nCNOT 0 1\n"},
    };
    auto it = programs.find(name);
    if (it == programs.end()) {
        throw std::invalid_argument("unknown test program '" + name + "'");
    }
    return it->second;
}

std::vector<std::string> program_names(bool big) {
    std::vector<std::string> out = {"I", "X", "Z", "H", "S", "T", "HT", "TH"};
    if (big) {
        out.push_back("CNOT");
        out.push_back("CNOT.H");
    }
    return out;
}

}  // namespace plmforge::selftest
