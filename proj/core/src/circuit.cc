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

#include "plmforge/circuit.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "plmforge/errors.h"

namespace plmforge {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> out;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            k++;
        }
        size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            k++;
        }
        if (k > start) {
            out.push_back(line.substr(start, k - start));
        }
    }
    return out;
}

int parse_int(std::string_view word, int line, const char *what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || ptr != word.data() + word.size() || value < 0) {
        throw ParseError(std::string("bad ") + what + " '" + std::string(word) + "'", line);
    }
    return value;
}

}  // namespace

bool Circuit::has_oracle_calls() const {
    return std::any_of(gates.begin(), gates.end(),
                       [](const GateApp &g) { return g.gate == Gate::U || g.gate == Gate::Udag; });
}

void Circuit::validate() const {
    if (n_q < 0 || n_c < 0 || aux < 0) {
        throw ParameterError("negative circuit dimension");
    }
    for (size_t k = 0; k < gates.size(); k++) {
        const GateApp &g = gates[k];
        int arity = gate_arity(g.gate);
        if (arity > 0 && (int)g.wires.size() != arity) {
            throw ParameterError("gate " + std::to_string(k) + " (" + std::string(gate_name(g.gate)) + ") has " +
                                 std::to_string(g.wires.size()) + " wires");
        }
        if (arity == 0 && g.wires.empty()) {
            throw ParameterError("oracle call without wires");
        }
        for (size_t a = 0; a < g.wires.size(); a++) {
            if (g.wires[a] < 0 || g.wires[a] >= width()) {
                throw ParameterError("gate " + std::to_string(k) + " references wire " + std::to_string(g.wires[a]) +
                                     " outside [0, " + std::to_string(width()) + ")");
            }
            for (size_t b = 0; b < a; b++) {
                if (g.wires[a] == g.wires[b]) {
                    throw ParameterError("gate " + std::to_string(k) + " repeats wire " + std::to_string(g.wires[a]));
                }
            }
        }
        if (g.cbit >= n_c) {
            throw ParameterError("gate " + std::to_string(k) + " is controlled on classical bit " +
                                 std::to_string(g.cbit) + " but only " + std::to_string(n_c) + " exist");
        }
    }
    std::vector<bool> seen(std::max(0, width()), false);
    for (int w : measure) {
        if (w < 0 || w >= width()) {
            throw ParameterError("measured wire " + std::to_string(w) + " out of range");
        }
        if (seen[w]) {
            throw ParameterError("wire " + std::to_string(w) + " measured twice");
        }
        seen[w] = true;
    }
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_qubits = false;
    bool have_cin = false;
    bool have_aux = false;
    bool have_measure = false;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto words = split_words(line);
        if (words.empty()) {
            continue;
        }
        std::string_view head = words[0];
        auto header = [&](bool &flag, int &field, const char *name) {
            if (flag) {
                throw ParseError(std::string("duplicate '") + name + "' header", line_no);
            }
            if (!c.gates.empty() || have_measure) {
                throw ParseError(std::string("'") + name + "' must precede gates", line_no);
            }
            if (words.size() != 2) {
                throw ParseError(std::string("'") + name + "' takes one integer", line_no);
            }
            field = parse_int(words[1], line_no, "count");
            flag = true;
        };
        if (head == "qubits") {
            header(have_qubits, c.n_q, "qubits");
            continue;
        }
        if (head == "cin") {
            header(have_cin, c.n_c, "cin");
            continue;
        }
        if (head == "aux") {
            header(have_aux, c.aux, "aux");
            continue;
        }
        if (!have_qubits) {
            throw ParseError("missing 'qubits' header before first instruction", line_no);
        }
        auto wire = [&](std::string_view w) {
            int v = parse_int(w, line_no, "wire index");
            if (v >= c.width()) {
                throw ParseError("wire " + std::to_string(v) + " out of range (width " + std::to_string(c.width()) + ")",
                                 line_no);
            }
            return v;
        };
        if (head == "measure") {
            if (have_measure) {
                throw ParseError("duplicate 'measure' line", line_no);
            }
            have_measure = true;
            for (size_t k = 1; k < words.size(); k++) {
                int w = wire(words[k]);
                if (std::find(c.measure.begin(), c.measure.end(), w) != c.measure.end()) {
                    throw ParseError("wire " + std::to_string(w) + " measured twice", line_no);
                }
                c.measure.push_back(w);
            }
            continue;
        }
        if (have_measure) {
            throw ParseError("instruction after 'measure'", line_no);
        }

        std::string_view name = head;
        int cbit = -1;
        std::optional<Gate> gate = gate_from_name(name);
        if (!gate && name.size() > 1 && name[0] == 'c') {
            gate = gate_from_name(name.substr(1));
            if (gate) {
                if (words.size() < 2 || words.back().empty() || words.back()[0] != '@') {
                    throw ParseError("classically-controlled gate needs a trailing '@k'", line_no);
                }
                cbit = parse_int(words.back().substr(1), line_no, "classical bit");
                if (cbit >= c.n_c) {
                    throw ParseError("classical bit " + std::to_string(cbit) + " out of range (cin " +
                                     std::to_string(c.n_c) + ")",
                                     line_no);
                }
                words.pop_back();
            }
        }
        if (!gate) {
            throw ParseError("unknown gate '" + std::string(name) + "'", line_no);
        }
        if (cbit >= 0 && (*gate == Gate::U || *gate == Gate::Udag)) {
            throw ParseError("oracle calls cannot be classically controlled", line_no);
        }
        std::vector<int> wires;
        for (size_t k = 1; k < words.size(); k++) {
            if (words[k][0] == '@') {
                throw ParseError("classical control on an uncontrolled gate name", line_no);
            }
            wires.push_back(wire(words[k]));
        }
        int arity = gate_arity(*gate);
        if ((arity > 0 && (int)wires.size() != arity) || (arity == 0 && wires.empty())) {
            throw ParseError("gate " + std::string(gate_name(*gate)) + " given " + std::to_string(wires.size()) +
                                 " wires",
                             line_no);
        }
        for (size_t a = 0; a < wires.size(); a++) {
            for (size_t b = 0; b < a; b++) {
                if (wires[a] == wires[b]) {
                    throw ParseError("repeated wire " + std::to_string(wires[a]), line_no);
                }
            }
        }
        c.gates.push_back(GateApp{*gate, std::move(wires), cbit});
    }
    if (!have_qubits) {
        throw ParseError("missing 'qubits' header", 0);
    }
    return c;
}

std::string render_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "qubits " << c.n_q << '\n';
    if (c.n_c > 0) {
        out << "cin " << c.n_c << '\n';
    }
    if (c.aux > 0) {
        out << "aux " << c.aux << '\n';
    }
    for (const auto &g : c.gates) {
        if (g.controlled()) {
            out << 'c';
        }
        out << gate_name(g.gate);
        for (int w : g.wires) {
            out << ' ' << w;
        }
        if (g.controlled()) {
            out << " @" << g.cbit;
        }
        out << '\n';
    }
    if (!c.measure.empty()) {
        out << "measure";
        for (int w : c.measure) {
            out << ' ' << w;
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json circuit_to_json(const Circuit &c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : c.gates) {
        nlohmann::json e = {{"gate", gate_name(g.gate)}, {"wires", g.wires}};
        if (g.controlled()) {
            e["cbit"] = g.cbit;
        }
        gates.push_back(e);
    }
    return {{"n_q", c.n_q}, {"n_c", c.n_c}, {"aux", c.aux}, {"gates", gates}, {"measure", c.measure}};
}

Circuit circuit_from_json(const nlohmann::json &j) {
    Circuit c;
    c.n_q = j.at("n_q").get<int>();
    c.n_c = j.value("n_c", 0);
    c.aux = j.value("aux", 0);
    for (const auto &e : j.at("gates")) {
        auto g = gate_from_name(e.at("gate").get<std::string>());
        if (!g) {
            throw ParameterError("unknown gate in circuit JSON: " + e.at("gate").get<std::string>());
        }
        c.gates.push_back(GateApp{*g, e.at("wires").get<std::vector<int>>(), e.value("cbit", -1)});
    }
    c.measure = j.value("measure", std::vector<int>{});
    c.validate();
    return c;
}

void apply_circuit(StateVector &s, const Circuit &c, const BitVec &cin, std::span<const int> wire_map,
                   const OracleImpl *oracle) {
    if ((int)wire_map.size() != c.width()) {
        throw ParameterError("wire map covers " + std::to_string(wire_map.size()) + " wires, circuit has " +
                             std::to_string(c.width()));
    }
    if ((int)cin.size() < c.n_c) {
        throw ParameterError("circuit expects " + std::to_string(c.n_c) + " classical input bits, got " +
                             std::to_string(cin.size()));
    }
    std::vector<int> mapped;
    for (const auto &g : c.gates) {
        if (g.controlled() && !cin[g.cbit]) {
            continue;
        }
        mapped.clear();
        for (int w : g.wires) {
            mapped.push_back(wire_map[w]);
        }
        if (g.gate == Gate::U || g.gate == Gate::Udag) {
            if (oracle == nullptr) {
                throw ParameterError("circuit contains oracle calls but no oracle implementation was supplied");
            }
            (*oracle)(s, mapped, g.gate == Gate::Udag);
            continue;
        }
        s.apply_gate(g.gate, mapped);
    }
}

void apply_circuit(StateVector &s, const Circuit &c, const BitVec &cin, const OracleImpl *oracle) {
    std::vector<int> identity(c.width());
    for (int k = 0; k < c.width(); k++) {
        identity[k] = k;
    }
    apply_circuit(s, c, cin, identity, oracle);
}

namespace {

StateVector initial_state(const Circuit &c, const StateVector &input, const StateVector &aux) {
    if (input.num_qubits() != c.n_q) {
        throw ParameterError("input state has " + std::to_string(input.num_qubits()) + " qubits, circuit expects " +
                             std::to_string(c.n_q));
    }
    if (aux.num_qubits() != 0 && aux.num_qubits() != c.aux) {
        throw ParameterError("aux state has " + std::to_string(aux.num_qubits()) + " qubits, circuit expects " +
                             std::to_string(c.aux));
    }
    return aux.num_qubits() == c.aux ? tensor(input, aux) : tensor(input, StateVector(c.aux));
}

}  // namespace

RunOutput run_direct(const Circuit &c, const BitVec &cin, const StateVector &input, const StateVector &aux, Rng &rng,
                     const OracleImpl *oracle) {
    c.validate();
    StateVector s = initial_state(c, input, aux);
    apply_circuit(s, c, cin, oracle);
    RunOutput out{std::move(s), std::nullopt};
    if (!c.measure.empty()) {
        MeasSpec spec{[](const BitVec &b) { return b; }, BitVec(), {}};
        out.measured = measure_fn(out.state, spec, c.measure, rng).outcome;
    }
    return out;
}

std::map<BitVec, double> direct_distribution(const Circuit &c, const BitVec &cin, const StateVector &input,
                                             const StateVector &aux) {
    c.validate();
    StateVector s = initial_state(c, input, aux);
    apply_circuit(s, c, cin);
    MeasSpec spec{[](const BitVec &b) { return b; }, BitVec(), {}};
    return measure_fn_distribution(s, spec, c.measure);
}

Circuit inverse_circuit(const Circuit &c) {
    if (!c.measure.empty()) {
        throw ParameterError("cannot invert a circuit with measurements");
    }
    Circuit out = c;
    out.gates.clear();
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        int reps = 1;
        Gate g = it->gate;
        if (g == Gate::S) {
            reps = 3;
        } else if (g == Gate::T) {
            reps = 7;
        } else if (g == Gate::U) {
            g = Gate::Udag;
        } else if (g == Gate::Udag) {
            g = Gate::U;
        }
        for (int r = 0; r < reps; r++) {
            out.gates.push_back(GateApp{g, it->wires, it->cbit});
        }
    }
    return out;
}

}  // namespace plmforge
