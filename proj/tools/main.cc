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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "plmforge/errors.h"
#include "plmforge/obfuscator.h"
#include "plmforge/plm.h"
#include "selftest/suites.h"

using namespace plmforge;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kCheckFailed = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

uint64_t default_seed() {
    const char *env = std::getenv("PLMFORGE_SEED");
    if (!env || !*env) {
        return 0;
    }
    char *end = nullptr;
    uint64_t v = std::strtoull(env, &end, 10);
    if (*end != '\0') {
        throw InputError("PLMFORGE_SEED must be an unsigned integer");
    }
    return v;
}

/// Per-qubit labels from {0, 1, +, -}, or random:SEED for a Haar state.
StateVector parse_input_state(const std::string &spec, int n) {
    if (spec.rfind("random:", 0) == 0) {
        std::string tail = spec.substr(7);
        char *end = nullptr;
        uint64_t seed = std::strtoull(tail.c_str(), &end, 10);
        if (tail.empty() || *end != '\0') {
            throw InputError("bad input state seed in '" + spec + "'");
        }
        Rng r(seed);
        return StateVector::random(n, r);
    }
    if ((int)spec.size() != n) {
        throw InputError("input label '" + spec + "' needs one symbol per qubit (" + std::to_string(n) + ")");
    }
    StateVector s(n);
    for (int q = 0; q < n; q++) {
        switch (spec[q]) {
            case '0':
                break;
            case '1':
                s.x(q);
                break;
            case '+':
                s.h(q);
                break;
            case '-':
                s.x(q);
                s.h(q);
                break;
            default:
                throw InputError(std::string("unknown input symbol '") + spec[q] + "'");
        }
    }
    return s;
}

int cmd_compile(const std::string &in, const std::string &out, bool check, uint64_t seed) {
    Circuit c = parse_circuit(read_file(in));
    PLMProgram p = compile(c);
    std::ofstream f(out);
    if (!f) {
        throw InputError("cannot write " + out);
    }
    f << plm_to_json(p).dump(2) << "\n";
    std::cout << "compiled " << in << ": t=" << p.t() << " wires=" << p.num_wires << "\n";
    if (!check) {
        return kOk;
    }
    Rng rng(seed);
    bool ok = true;
    for (uint64_t iv = 0; iv < (uint64_t{1} << c.n_c); iv++) {
        BitVec i = BitVec::from_uint(iv, c.n_c);
        CheckReport r = projectivity_check(p, i, rng);
        std::cout << "projectivity i=" << i.str() << " pass=" << (r.pass ? "true" : "false")
                  << " max_distance=" << r.max_distance << " cases=" << r.cases
                  << " exhaustive=" << (r.exhaustive ? "true" : "false") << "\n";
        ok &= r.pass;
    }
    return ok ? kOk : kCheckFailed;
}

int cmd_obf_eval(const std::string &in, const std::string &input, int lambda, int kappa, uint64_t seed, bool verbose,
                 bool dump) {
    Circuit c = parse_circuit(read_file(in));
    if (c.n_c != 0 || c.has_oracle_calls() || !c.measure.empty()) {
        throw InputError("obf-eval takes a unitary circuit without classical inputs or measurements");
    }
    Rng rng(seed);
    StateVector psi = parse_input_state(input, c.n_q);
    StateVector psi_aux(c.aux);
    ObfuscationPackage pkg = qobf(c, psi_aux, ObfParams{lambda, kappa, false}, rng);
    int t = pkg.t();
    int width = pkg.v_tilde_width();
    nlohmann::json secret;
    if (dump) {
        secret = {{"auth_key", pkg.key->to_json()}, {"plm", plm_to_json(*pkg.plm)}};
    }
    QEvalResult r = qeval(pkg, psi, rng);

    StateVector want = tensor(psi, psi_aux);
    apply_circuit(want, c, BitVec(0));
    std::vector<int> keep(c.n_q);
    for (int q = 0; q < c.n_q; q++) {
        keep[q] = q;
    }
    // Ancillas may stay entangled with the output; compare on the output wires.
    std::vector<cplx> rho = reduced_density(want, keep);
    double fid = 0;
    for (size_t a = 0; a < r.output.dim(); a++) {
        for (size_t b = 0; b < r.output.dim(); b++) {
            fid += (std::conj(r.output.amps()[a]) * rho[a * r.output.dim() + b] * r.output.amps()[b]).real();
        }
    }

    nlohmann::json report = {{"program", in},   {"input", input},   {"lambda", lambda},
                             {"kappa", kappa},  {"seed", seed},     {"rounds", t},
                             {"v_tilde_qubits", width}, {"i", r.i.str()}, {"fidelity", fid},
                             {"peak_factor_qubits", r.peak_qubits}};
    if (verbose) {
        nlohmann::json tr = nlohmann::json::array();
        for (const StatusWord &w : r.transcript) {
            tr.push_back(w.str());
        }
        report["transcript"] = tr;
    }
    if (dump) {
        report["insecure_dump"] = secret;
    }
    std::cout << report.dump(2) << "\n";
    return fid >= 0.999 ? kOk : kCheckFailed;
}

int cmd_selftest(const std::string &suite, uint64_t seed, bool big, bool timing) {
    selftest::SuiteOptions opt;
    opt.seed = seed;
    opt.big = big;
    selftest::SuiteReport rep = selftest::run_suite(suite, opt);
    if (!timing) {
        // Keep stdout a pure function of the flags.
        std::cerr << "wall_ms " << rep.wall_ms << "\n";
        rep.wall_ms = 0;
    }
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"plmforge: PLM compiler, coset authentication and state obfuscation toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    int cap = qubit_cap();
    bool verbose = false;
    bool big = false;
    try {
        seed = default_seed();
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    app.add_option("--seed", seed, "Random seed (default: $PLMFORGE_SEED or 0)");
    app.add_option("--cap", cap, "Qubit cap of the simulator")->check(CLI::Range(1, 40));
    app.add_flag("--verbose", verbose, "Print extra detail");
    app.add_flag("--big", big, "Allow two-qubit programs (cap raised to 26)");

    auto *compile_cmd = app.add_subcommand("compile", "Compile a circuit to a PLM program");
    std::string compile_in, compile_out;
    bool check_projectivity = false;
    compile_cmd->add_option("input", compile_in, "Circuit file (.qc)")->required();
    compile_cmd->add_option("-o,--output", compile_out, "PLM JSON output path")->required();
    compile_cmd->add_flag("--check-projectivity", check_projectivity, "Run the projectivity check");

    auto *obf_cmd = app.add_subcommand("obf-eval", "Obfuscate a unitary circuit and evaluate it once");
    std::string obf_in, obf_input = "random:0";
    int lambda = 1, kappa = 32;
    bool insecure_dump = false;
    obf_cmd->add_option("input", obf_in, "Circuit file (.qc)")->required();
    obf_cmd->add_option("--input-state", obf_input, "Per-qubit labels from 0,1,+,- or random:SEED");
    obf_cmd->add_option("--lambda", lambda, "Authentication parameter")->check(CLI::Range(1, 4));
    obf_cmd->add_option("--kappa", kappa, "PRF label width")->check(CLI::Range(16, 256));
    obf_cmd->add_flag("--insecure-dump", insecure_dump, "Include key material in the report (testing only)");

    auto *self_cmd = app.add_subcommand("selftest", "Run a property suite and print a JSON report");
    std::string suite;
    bool timing = false;
    self_cmd->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(selftest::suite_names()));
    self_cmd->add_flag("--timing", timing, "Report wall_ms on stdout instead of stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        set_qubit_cap(big ? std::max(cap, 26) : cap);
        if (*compile_cmd) {
            return cmd_compile(compile_in, compile_out, check_projectivity, seed);
        }
        if (*obf_cmd) {
            return cmd_obf_eval(obf_in, obf_input, lambda, kappa, seed, verbose, insecure_dump);
        }
        if (*self_cmd) {
            return cmd_selftest(suite, seed, big, timing);
        }
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInput;
    } catch (const CompileError &e) {
        std::cerr << "compile error: " << e.what() << "\n";
        return kInput;
    } catch (const ResourceError &e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kInput;
    } catch (const ParameterError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ProtocolFailure &e) {
        std::cerr << "protocol failure: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}
