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

#include "plmforge/plm.h"

#include <numeric>

#include "plmforge/errors.h"

namespace plmforge {

LinearGate PLMProgram::gate(int j) const {
    if (j < 1 || j > t()) {
        throw ParameterError("instruction index out of range");
    }
    size_t k = instructions[j - 1].num_cnots;
    return LinearGate(cnots.begin(), cnots.begin() + (long)k);
}

StateVector PLMProgram::plm_state() const {
    StateVector s(plm_width);
    apply_circuit(s, aux_prep, BitVec(0));
    return s;
}

bool PLMProgram::operator==(const PLMProgram &other) const {
    return plm_to_json(*this) == plm_to_json(other);
}

namespace {

nlohmann::json frame_json(const WireFrame &f) {
    return {{"z", f.z.to_json()}, {"x", f.x.to_json()}};
}

WireFrame frame_from(const nlohmann::json &j) {
    return WireFrame{ClassicalFn::from_json(j.at("z")), ClassicalFn::from_json(j.at("x"))};
}

GadgetKind kind_from(const std::string &name) {
    for (GadgetKind k : {GadgetKind::H, GadgetKind::CNOT, GadgetKind::T}) {
        if (gadget_name(k) == name) {
            return k;
        }
    }
    throw ParameterError("unknown gadget kind '" + name + "'");
}

}  // namespace

nlohmann::json plm_to_json(const PLMProgram &p) {
    nlohmann::json ins = nlohmann::json::array();
    for (const auto &in : p.instructions) {
        nlohmann::json cn = nlohmann::json::array();
        for (size_t k = 0; k < in.num_cnots; k++) {
            cn.push_back({p.cnots[k].first, p.cnots[k].second});
        }
        ins.push_back({{"f", in.f.to_json()}, {"theta", in.theta.str()}, {"cnots", cn}});
    }
    nlohmann::json h = nlohmann::json::array();
    for (const auto &f : p.h) {
        h.push_back(frame_json(f));
    }
    nlohmann::json gadgets = nlohmann::json::array();
    for (const auto &g : p.gadgets) {
        gadgets.push_back({{"kind", gadget_name(g.kind)},
                           {"wires", g.wires},
                           {"first_outcome", g.first_outcome},
                           {"flip", g.flip.to_json()}});
    }
    nlohmann::json finals = nlohmann::json::array();
    for (const auto &f : p.finals) {
        finals.push_back({{"logical", f.logical}, {"wire", f.wire}, {"outcome", f.outcome}});
    }
    return {
        {"widths",
         {{"n_q", p.n_q}, {"n_c", p.n_c}, {"n_out", p.n_out}, {"num_wires", p.num_wires}, {"plm_width", p.plm_width}}},
        {"t", p.t()},
        {"aux_prep", circuit_to_json(p.aux_prep)},
        {"instructions", ins},
        {"g", fns_to_json(p.g)},
        {"h", h},
        {"remap", p.remap},
        {"gadgets", gadgets},
        {"finals", finals},
    };
}

PLMProgram plm_from_json(const nlohmann::json &j) {
    PLMProgram p;
    try {
        const auto &w = j.at("widths");
        p.n_q = w.at("n_q").get<int>();
        p.n_c = w.at("n_c").get<int>();
        p.n_out = w.at("n_out").get<int>();
        p.num_wires = w.at("num_wires").get<int>();
        p.plm_width = w.at("plm_width").get<int>();
        p.aux_prep = circuit_from_json(j.at("aux_prep"));
        for (const auto &in : j.at("instructions")) {
            LinearGate g;
            for (const auto &c : in.at("cnots")) {
                g.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
            }
            if (g.size() < p.cnots.size() || !std::equal(p.cnots.begin(), p.cnots.end(), g.begin())) {
                throw ParameterError("instruction CNOT lists must extend one another");
            }
            p.cnots = g;
            PlmInstruction ins;
            ins.f = ClassicalFn::from_json(in.at("f"));
            ins.theta = BitVec::from_string(in.at("theta").get<std::string>());
            ins.num_cnots = g.size();
            p.instructions.push_back(std::move(ins));
        }
        if (j.at("t").get<int>() != p.t()) {
            throw ParameterError("instruction count does not match t");
        }
        p.g = fns_from_json(j.at("g"));
        for (const auto &f : j.at("h")) {
            p.h.push_back(frame_from(f));
        }
        p.remap = j.value("remap", std::vector<int>{});
        for (const auto &g : j.value("gadgets", nlohmann::json::array())) {
            p.gadgets.push_back(GadgetRecord{kind_from(g.at("kind").get<std::string>()),
                                             g.at("wires").get<std::vector<int>>(), g.at("first_outcome").get<int>(),
                                             ClassicalFn::from_json(g.at("flip"))});
        }
        for (const auto &f : j.value("finals", nlohmann::json::array())) {
            p.finals.push_back(
                FinalRead{f.at("logical").get<int>(), f.at("wire").get<int>(), f.at("outcome").get<int>()});
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParameterError(std::string("malformed PLM JSON: ") + e.what());
    }
    return p;
}

std::vector<int> v_wires(const PLMProgram &p) {
    std::vector<int> w(p.num_wires);
    std::iota(w.begin(), w.end(), 0);
    return w;
}

StateVector plm_initial_state(const PLMProgram &p, const StateVector &input, const StateVector *aux_override) {
    int nin = input.num_qubits();
    if (nin < p.n_q) {
        throw ParameterError("input state has " + std::to_string(nin) + " qubits, program needs " +
                             std::to_string(p.n_q));
    }
    StateVector aux = aux_override ? *aux_override : p.plm_state();
    if (aux.num_qubits() != p.plm_width) {
        throw ParameterError("aux override has the wrong width");
    }
    if (nin + p.plm_width > qubit_cap()) {
        throw ResourceError("PLM register needs " + std::to_string(nin + p.plm_width) + " qubits, cap is " +
                            std::to_string(qubit_cap()));
    }
    StateVector joint = tensor(input, aux);
    std::vector<int> perm(joint.num_qubits());
    for (int q = 0; q < joint.num_qubits(); q++) {
        if (q < p.n_q) {
            perm[q] = q;
        } else if (q < nin) {
            perm[q] = p.num_wires + (q - p.n_q);
        } else {
            perm[q] = p.n_q + (q - nin);
        }
    }
    return permute_wires(joint, perm);
}

MeasSpec instruction_spec(const PLMProgram &p, int j, const BitVec &i, const BitVec &r_prefix) {
    if ((int)i.size() != p.n_c) {
        throw ParameterError("classical input has " + std::to_string(i.size()) + " bits, program expects " +
                             std::to_string(p.n_c));
    }
    if ((int)r_prefix.size() != j - 1) {
        throw ParameterError("instruction " + std::to_string(j) + " needs exactly " + std::to_string(j - 1) +
                             " prior outcomes");
    }
    ClassicalFn f = p.instructions.at(j - 1).f;
    BitVec ic = i, rc = r_prefix;
    return MeasSpec{[f, ic, rc](const BitVec &v) {
                        BitVec out(1);
                        out.set(0, f.eval(FnEnv{&v, &ic, &rc}));
                        return out;
                    },
                    p.instructions[j - 1].theta, p.gate(j)};
}

BitVec eval_output(const PLMProgram &p, const BitVec &i, const BitVec &r) {
    return eval_all(p.g, FnEnv{nullptr, &i, &r});
}

PlmRun execute_plm(const PLMProgram &p, const BitVec &i, const StateVector &input, const StateVector *aux_override,
                   Rng &rng) {
    StateVector s = plm_initial_state(p, input, aux_override);
    std::vector<int> wires = v_wires(p);
    BitVec r;
    for (int j = 1; j <= p.t(); j++) {
        MeasSpec spec = instruction_spec(p, j, i, r);
        r.append(measure_fn(s, spec, wires, rng).outcome[0]);
    }
    BitVec y = eval_output(p, i, r);
    return PlmRun{y, r, std::move(s)};
}

namespace {

void branch_dfs(const PLMProgram &p, const BitVec &i, const std::vector<int> &wires, int j, BitVec &r,
                StateVector state, const BranchVisitor &visit, double cutoff) {
    if (j > p.t()) {
        visit(r, state);
        return;
    }
    MeasSpec spec = instruction_spec(p, j, i, r);
    for (int b = 0; b < 2; b++) {
        StateVector s = b == 0 ? state : std::move(state);
        BitVec want(1);
        want.set(0, b);
        double w = apply_projector(s, spec, wires, want);
        if (w <= cutoff) {
            continue;
        }
        r.append(b);
        branch_dfs(p, i, wires, j + 1, r, std::move(s), visit, cutoff);
        r = r.slice(0, r.size() - 1);
    }
}

}  // namespace

void enumerate_branches(const PLMProgram &p, const BitVec &i, const StateVector &v_state, const BranchVisitor &visit,
                        double cutoff) {
    if (v_state.num_qubits() < p.num_wires) {
        throw ParameterError("state is smaller than the V register");
    }
    BitVec r;
    branch_dfs(p, i, v_wires(p), 1, r, v_state, visit, cutoff);
}

std::map<BitVec, double> plm_distribution(const PLMProgram &p, const BitVec &i, const StateVector &input) {
    std::map<BitVec, double> out;
    enumerate_branches(p, i, plm_initial_state(p, input),
                       [&](const BitVec &r, const StateVector &post) { out[eval_output(p, i, r)] += post.norm_squared(); });
    return out;
}

StateVector phi_basis_state(const PLMProgram &p, const BitVec &i, const BitVec &r) {
    if ((int)r.size() != p.t()) {
        throw ParameterError("basis label must have t bits");
    }
    StateVector s;
    std::vector<int> order;
    for (const GadgetRecord &g : p.gadgets) {
        size_t k = g.wires.size();
        BitVec labels = r.slice(g.first_outcome - 1, k);
        BitVec prefix = r.slice(0, g.first_outcome - 1);
        bool flip = g.flip.eval(FnEnv{nullptr, &i, &prefix});
        s = tensor(s, basis_state(g.kind, labels, flip));
        order.insert(order.end(), g.wires.begin(), g.wires.end());
    }
    for (const FinalRead &f : p.finals) {
        BitVec bit(1);
        bit.set(0, r[f.outcome - 1]);
        s = tensor(s, StateVector::basis(bit));
        order.push_back(f.wire);
    }
    if ((int)order.size() != p.num_wires) {
        throw InternalError("gadget records do not cover the V register");
    }
    return permute_wires(s, order);
}

Circuit wrap_for_obfuscation(const Circuit &q, int n) {
    if (q.n_q != n || q.n_c != 0 || !q.measure.empty()) {
        throw ParameterError("wrap_for_obfuscation expects an n-qubit unitary circuit without classical inputs");
    }
    q.validate();
    Circuit out;
    out.n_q = 2 * n;
    out.n_c = 2 * n;
    out.aux = q.aux;
    for (int w = 0; w < n; w++) {
        out.append(Gate::X, {w}, n + w);
        out.append(Gate::Z, {w}, w);
    }
    std::vector<int> map(q.width());
    for (int w = 0; w < q.width(); w++) {
        map[w] = w < n ? w : 2 * n + (w - n);
    }
    for (const GateApp &app : q.gates) {
        std::vector<int> wires;
        for (int w : app.wires) {
            wires.push_back(map[w]);
        }
        out.append(app.gate, wires, app.cbit);
    }
    for (int w = 0; w < n; w++) {
        out.append(Gate::CNOT, {w, n + w});
        out.append(Gate::H, {w});
    }
    for (int w = 0; w < 2 * n; w++) {
        out.measure.push_back(w);
    }
    return out;
}

}  // namespace plmforge
