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

#include <numeric>

#include "plmforge/errors.h"
#include "plmforge/plm.h"

namespace plmforge {

namespace {

class Compiler {
   public:
    explicit Compiler(const Circuit &q) : q_(q) {
        int n = q.width();
        p_.n_q = n;
        p_.n_c = q.n_c;
        p_.num_wires = n;
        current_.resize(n);
        std::iota(current_.begin(), current_.end(), 0);
        frames_.resize(n);
        theta_.assign(n, false);
    }

    PLMProgram run() {
        for (const GateApp &app : q_.gates) {
            lower(app);
        }
        finish();
        return std::move(p_);
    }

   private:
    void lower(const GateApp &app) {
        std::string name(gate_name(app.gate));
        if (app.controlled() && app.gate != Gate::X && app.gate != Gate::Z) {
            throw CompileError("classically controlled " + name +
                               " is not supported; only X and Z may carry a classical control");
        }
        ClassicalFn flip = app.controlled() ? ClassicalFn::input(app.cbit) : ClassicalFn::constant(true);
        switch (app.gate) {
            case Gate::X:
                frames_[current_[app.wires[0]]].x ^= flip;
                return;
            case Gate::Z:
                frames_[current_[app.wires[0]]].z ^= flip;
                return;
            case Gate::H:
                emit(GadgetKind::H, {app.wires[0]});
                return;
            case Gate::T:
                emit(GadgetKind::T, {app.wires[0]});
                return;
            case Gate::S:
                emit(GadgetKind::T, {app.wires[0]});
                emit(GadgetKind::T, {app.wires[0]});
                return;
            case Gate::CNOT:
                emit(GadgetKind::CNOT, {app.wires[0], app.wires[1]});
                return;
            case Gate::SWAP:
                std::swap(current_[app.wires[0]], current_[app.wires[1]]);
                return;
            case Gate::U:
            case Gate::Udag:
                throw CompileError("opaque oracle call " + name + " must be rewritten before compiling");
        }
        throw CompileError("unsupported gate " + name);
    }

    void emit(GadgetKind kind, std::vector<int> logical) {
        const Gadget &g = gadget_for(kind);
        int base = p_.num_wires;
        int prep_base = p_.plm_width;
        p_.num_wires += g.magic.width;
        p_.plm_width += g.magic.width;
        frames_.resize(p_.num_wires);
        theta_.resize(p_.num_wires, false);

        std::vector<int> global(g.width);
        for (int q = 0; q < g.num_inputs; q++) {
            global[q] = current_[logical[q]];
        }
        for (int m = g.num_inputs; m < g.width; m++) {
            global[m] = base + (m - g.num_inputs);
        }

        p_.aux_prep.n_q = p_.plm_width;
        for (const GateApp &app : g.magic.prep.gates) {
            std::vector<int> wires;
            for (int w : app.wires) {
                wires.push_back(prep_base + w);
            }
            p_.aux_prep.append(app.gate, wires);
        }

        std::vector<WireFrame> in_frames;
        for (int q = 0; q < g.num_inputs; q++) {
            in_frames.push_back(frames_[global[q]]);
        }
        int e = p_.t() + 1;
        auto sel = [&](int k) { return ClassicalFn::select(global[k]); };
        auto frame_bit = [&](int k) { return k % 2 == 0 ? in_frames[k / 2].z : in_frames[k / 2].x; };
        auto outcome = [&](int k) { return ClassicalFn::outcome(e + k - 1); };

        GadgetRecord rec{kind, {}, e, ClassicalFn::constant(false)};
        for (int w : g.measured) {
            rec.wires.push_back(global[w]);
        }
        if (kind == GadgetKind::T) {
            rec.flip = in_frames[0].x;
        }

        for (const GadgetStep &step : g.steps) {
            for (auto [c, t] : step.cnots) {
                p_.cnots.emplace_back(global[c], global[t]);
            }
            for (int w : step.theta_on) {
                theta_[global[w]] = true;
            }
            PlmInstruction ins;
            ins.f = step.measure.substitute(sel, frame_bit, outcome);
            ins.theta = theta_bits();
            ins.num_cnots = p_.cnots.size();
            p_.instructions.push_back(std::move(ins));
        }

        for (int q = 0; q < g.num_inputs; q++) {
            int out = global[g.outputs[q]];
            const WireFrame &rule = g.output_frames[q];
            frames_[out] = WireFrame{rule.z.substitute(nullptr, frame_bit, outcome),
                                     rule.x.substitute(nullptr, frame_bit, outcome)};
            current_[logical[q]] = out;
        }
        p_.gadgets.push_back(std::move(rec));
    }

    BitVec theta_bits() const {
        BitVec out(theta_.size());
        for (size_t w = 0; w < theta_.size(); w++) {
            out.set(w, theta_[w]);
        }
        return out;
    }

    void finish() {
        std::vector<int> order = q_.measure;
        std::vector<bool> seen(q_.width(), false);
        for (int w : order) {
            seen[w] = true;
        }
        for (int w = 0; w < q_.width(); w++) {
            if (!seen[w]) {
                order.push_back(w);
            }
        }
        for (int w : order) {
            int v = current_[w];
            int e = p_.t() + 1;
            PlmInstruction ins;
            ins.f = ClassicalFn::select(v);
            ins.theta = theta_bits();
            ins.num_cnots = p_.cnots.size();
            p_.instructions.push_back(std::move(ins));
            p_.finals.push_back(FinalRead{w, v, e});
        }
        p_.n_out = (int)q_.measure.size();
        for (int k = 0; k < p_.n_out; k++) {
            const FinalRead &fr = p_.finals[k];
            p_.g.push_back(ClassicalFn::outcome(fr.outcome) ^ frames_[fr.wire].x);
        }
        // Earlier snapshots were taken while V was still growing.
        for (auto &ins : p_.instructions) {
            BitVec full(p_.num_wires);
            for (size_t w = 0; w < ins.theta.size(); w++) {
                full.set(w, ins.theta[w]);
            }
            ins.theta = full;
        }
        p_.remap = current_;
        for (int w = 0; w < q_.width(); w++) {
            p_.h.push_back(frames_[current_[w]]);
        }
    }

    const Circuit &q_;
    PLMProgram p_;
    std::vector<int> current_;
    std::vector<WireFrame> frames_;
    std::vector<bool> theta_;
};

}  // namespace

PLMProgram compile(const Circuit &q) {
    try {
        q.validate();
    } catch (const ParameterError &e) {
        throw CompileError(std::string("invalid circuit: ") + e.what());
    }
    return Compiler(q).run();
}

}  // namespace plmforge
