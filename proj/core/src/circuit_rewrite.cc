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

#include "plmforge/circuit.h"
#include "plmforge/errors.h"

namespace plmforge {

namespace {

void append_mapped(Circuit &out, const Circuit &c, std::span<const int> wire_map) {
    for (const auto &g : c.gates) {
        std::vector<int> wires;
        for (int w : g.wires) {
            wires.push_back(wire_map[w]);
        }
        out.gates.push_back(GateApp{g.gate, std::move(wires), g.cbit});
    }
}

void t_dag(Circuit &out, int w) {
    for (int k = 0; k < 7; k++) {
        out.append(Gate::T, {w});
    }
}

void s_dag(Circuit &out, int w) {
    for (int k = 0; k < 3; k++) {
        out.append(Gate::S, {w});
    }
}

void toffoli(Circuit &out, int c1, int c2, int t) {
    out.append(Gate::H, {t});
    out.append(Gate::CNOT, {c2, t});
    t_dag(out, t);
    out.append(Gate::CNOT, {c1, t});
    out.append(Gate::T, {t});
    out.append(Gate::CNOT, {c2, t});
    t_dag(out, t);
    out.append(Gate::CNOT, {c1, t});
    out.append(Gate::T, {c2});
    out.append(Gate::T, {t});
    out.append(Gate::H, {t});
    out.append(Gate::CNOT, {c1, c2});
    out.append(Gate::T, {c1});
    t_dag(out, c2);
    out.append(Gate::CNOT, {c1, c2});
}

void controlled_z(Circuit &out, int c, int t) {
    out.append(Gate::H, {t});
    out.append(Gate::CNOT, {c, t});
    out.append(Gate::H, {t});
}

void controlled_s(Circuit &out, int c, int t) {
    out.append(Gate::T, {c});
    out.append(Gate::T, {t});
    out.append(Gate::CNOT, {c, t});
    t_dag(out, t);
    out.append(Gate::CNOT, {c, t});
}

// H = V Z V^dag with V = S H T H S^dag, so ctrl-H = V_t ctrl-Z V_t^dag.
void controlled_h(Circuit &out, int c, int t) {
    // V^dag = S H T^dag H S^dag, applied right to left.
    s_dag(out, t);
    out.append(Gate::H, {t});
    t_dag(out, t);
    out.append(Gate::H, {t});
    out.append(Gate::S, {t});
    controlled_z(out, c, t);
    s_dag(out, t);
    out.append(Gate::H, {t});
    out.append(Gate::T, {t});
    out.append(Gate::H, {t});
    out.append(Gate::S, {t});
}

void fredkin(Circuit &out, int c, int a, int b) {
    out.append(Gate::CNOT, {b, a});
    toffoli(out, c, a, b);
    out.append(Gate::CNOT, {b, a});
}

}  // namespace

Circuit rewrite_oracle_program(const Circuit &outer, const Circuit &inner, int n) {
    outer.validate();
    inner.validate();
    if (n <= 0) {
        throw ParameterError("oracle width must be positive");
    }
    if (inner.n_q != n) {
        throw ParameterError("inner program acts on " + std::to_string(inner.n_q) + " input wires, expected " +
                             std::to_string(n));
    }
    if (inner.n_c != 0 || !inner.measure.empty() || inner.has_oracle_calls()) {
        throw ParameterError("inner program must be unitary without classical inputs or oracle calls");
    }

    Circuit out;
    out.n_q = outer.n_q;
    out.n_c = outer.n_c;
    out.aux = outer.aux + inner.aux + n;
    out.measure = outer.measure;
    int e_start = outer.width();
    int b_start = e_start + inner.aux;

    // Inner wires: inputs map to B, ancillas to E.
    std::vector<int> inner_map(inner.width());
    for (int k = 0; k < n; k++) {
        inner_map[k] = b_start + k;
    }
    for (int k = 0; k < inner.aux; k++) {
        inner_map[n + k] = e_start + k;
    }
    Circuit inner_dag = inverse_circuit(inner);

    auto swap_br = [&](const std::vector<int> &r) {
        for (int k = 0; k < n; k++) {
            out.append(Gate::SWAP, {b_start + k, r[k]});
        }
    };

    for (const auto &g : outer.gates) {
        if (g.gate != Gate::U && g.gate != Gate::Udag) {
            out.gates.push_back(g);
            continue;
        }
        if ((int)g.wires.size() != n) {
            throw ParameterError("oracle call on " + std::to_string(g.wires.size()) + " wires, expected " +
                                 std::to_string(n));
        }
        if (g.gate == Gate::U) {
            swap_br(g.wires);
            append_mapped(out, inner, inner_map);
            swap_br(g.wires);
            append_mapped(out, inner_dag, inner_map);
        } else {
            append_mapped(out, inner, inner_map);
            swap_br(g.wires);
            append_mapped(out, inner_dag, inner_map);
            swap_br(g.wires);
        }
    }
    out.validate();
    return out;
}

void append_controlled(Circuit &out, const Circuit &c, int control, std::span<const int> wire_map) {
    for (const auto &g : c.gates) {
        if (g.controlled()) {
            throw ParameterError("cannot add a quantum control to a classically-controlled gate");
        }
        std::vector<int> w;
        for (int x : g.wires) {
            w.push_back(wire_map[x]);
        }
        switch (g.gate) {
            case Gate::X:
                out.append(Gate::CNOT, {control, w[0]});
                break;
            case Gate::Z:
                controlled_z(out, control, w[0]);
                break;
            case Gate::H:
                controlled_h(out, control, w[0]);
                break;
            case Gate::S:
                controlled_s(out, control, w[0]);
                break;
            case Gate::CNOT:
                toffoli(out, control, w[0], w[1]);
                break;
            case Gate::SWAP:
                fredkin(out, control, w[0], w[1]);
                break;
            default:
                throw ParameterError("no exact controlled decomposition for gate " + std::string(gate_name(g.gate)));
        }
    }
}

Circuit ctrl_swap_sandwich(const Circuit &inner, const Circuit &a) {
    inner.validate();
    a.validate();
    int n = inner.n_q;
    if (inner.n_c != 0 || !inner.measure.empty() || inner.has_oracle_calls()) {
        throw ParameterError("inner program must be unitary without classical inputs or oracle calls");
    }
    if (a.aux != 0 || a.n_c != 0 || !a.measure.empty() || a.n_q < n) {
        throw ParameterError("A must be a unitary on at least n wires without ancillas");
    }
    int d = a.n_q - n;
    Circuit out;
    out.n_q = 1 + 2 * n + d;
    out.aux = inner.aux;
    int b0 = 1;
    int c0 = 1 + n;
    int d0 = 1 + 2 * n;
    int e0 = 1 + 2 * n + d;

    std::vector<int> u_map(inner.width());
    for (int k = 0; k < n; k++) {
        u_map[k] = b0 + k;
    }
    for (int k = 0; k < inner.aux; k++) {
        u_map[n + k] = e0 + k;
    }
    Circuit inner_dag = inverse_circuit(inner);
    std::vector<int> a_map(a.n_q);
    for (int k = 0; k < n; k++) {
        a_map[k] = c0 + k;
    }
    for (int k = 0; k < d; k++) {
        a_map[n + k] = d0 + k;
    }

    // ctrl-(U^dag SWAP U) = U^dag (ctrl-SWAP) U, since U^dag U = I on the control-off branch.
    auto ctrl_w = [&]() {
        append_mapped(out, inner, u_map);
        for (int k = 0; k < n; k++) {
            fredkin(out, 0, b0 + k, c0 + k);
        }
        append_mapped(out, inner_dag, u_map);
    };
    ctrl_w();
    append_controlled(out, a, 0, a_map);
    ctrl_w();
    out.validate();
    return out;
}

bool unitary_equivalent_up_to_phase(const Circuit &c1, const Circuit &c2, int trials, Rng &rng) {
    c1.validate();
    c2.validate();
    if (c1.width() != c2.width()) {
        return false;
    }
    if (!c1.measure.empty() || !c2.measure.empty()) {
        throw ParameterError("unitary equivalence requires circuits without measurements");
    }
    int nc = std::max(c1.n_c, c2.n_c);
    for (int t = 0; t < trials; t++) {
        BitVec cin(nc);
        for (int k = 0; k < nc; k++) {
            cin.set(k, rng.bit());
        }
        StateVector in = StateVector::random_product(c1.width(), rng);
        StateVector a = in;
        StateVector b = in;
        apply_circuit(a, c1, cin);
        apply_circuit(b, c2, cin);
        if (fidelity(a, b) < 1 - 1e-9) {
            return false;
        }
    }
    return true;
}

}  // namespace plmforge
