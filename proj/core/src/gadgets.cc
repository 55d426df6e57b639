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

#include "plmforge/gadgets.h"

#include "plmforge/errors.h"

namespace plmforge {

namespace {

using F = ClassicalFn;

F sel(int k) {
    return F::select(k);
}
F in(int k) {
    return F::input(k);
}
F r(int k) {
    return F::outcome(k);
}

Gadget make_h() {
    Gadget g;
    g.kind = GadgetKind::H;
    g.num_inputs = 1;
    g.width = 3;
    g.magic.kind = GadgetKind::H;
    g.magic.width = 2;
    g.magic.prep.n_q = 2;
    g.magic.prep.append(Gate::H, {0});
    g.magic.prep.append(Gate::CNOT, {0, 1});
    g.magic.prep.append(Gate::H, {1});
    g.measured = {0, 1};
    g.outputs = {2};
    g.steps = {
        GadgetStep{{{0, 1}}, {0}, sel(0)},
        GadgetStep{{}, {}, sel(1)},
    };
    // Outcome c0 is an X-type byproduct and c1 a Z-type one; the incoming frame swaps under H.
    g.output_frames = {WireFrame{in(1) ^ r(2), in(0) ^ r(1)}};
    return g;
}

Gadget make_cnot() {
    Gadget g;
    g.kind = GadgetKind::CNOT;
    g.num_inputs = 2;
    g.width = 6;
    g.magic.kind = GadgetKind::CNOT;
    g.magic.width = 4;
    // Magic wires (k, l, m, s) hold EPR pairs on (k, m) and (l, s).
    g.magic.prep.n_q = 4;
    g.magic.prep.append(Gate::H, {0});
    g.magic.prep.append(Gate::CNOT, {0, 2});
    g.magic.prep.append(Gate::H, {1});
    g.magic.prep.append(Gate::CNOT, {1, 3});
    g.measured = {0, 1, 2, 3};
    g.outputs = {4, 5};
    g.steps = {
        GadgetStep{{{0, 1}, {0, 2}, {1, 3}}, {0, 1}, sel(0)},
        GadgetStep{{}, {}, sel(1)},
        GadgetStep{{}, {}, sel(2)},
        GadgetStep{{}, {}, sel(3)},
    };
    F zi = in(0), xi = in(1), zj = in(2), xj = in(3);
    g.output_frames = {
        WireFrame{zi ^ zj ^ r(1), xi ^ r(3)},
        WireFrame{zj ^ r(2), xi ^ xj ^ r(4)},
    };
    return g;
}

Gadget make_t() {
    Gadget g;
    g.kind = GadgetKind::T;
    g.num_inputs = 1;
    g.width = 5;
    g.magic.kind = GadgetKind::T;
    g.magic.width = 4;
    // Magic wires (j, k, l, m): T|+>, S^dag|+>, and an EPR pair on (l, m).
    g.magic.prep.n_q = 4;
    g.magic.prep.append(Gate::H, {0});
    g.magic.prep.append(Gate::T, {0});
    g.magic.prep.append(Gate::H, {1});
    for (int k = 0; k < 3; k++) {
        g.magic.prep.append(Gate::S, {1});
    }
    g.magic.prep.append(Gate::H, {2});
    g.magic.prep.append(Gate::CNOT, {2, 3});
    g.measured = {0, 1, 2, 3};
    g.outputs = {4};
    // The branch bit is r_1 xor x_i: an incoming X byproduct flips which branch the
    // first CNOT-and-measure step has selected.
    F branch = r(1) ^ in(1);
    g.steps = {
        GadgetStep{{{1, 0}}, {}, sel(0)},
        GadgetStep{{}, {}, F::mux(branch, sel(1) ^ sel(2), sel(2))},
        GadgetStep{{{1, 3}}, {1, 2}, F::mux(branch, sel(1) ^ sel(2), sel(1))},
        GadgetStep{{}, {}, sel(3)},
    };
    g.output_frames = {WireFrame{in(0) ^ (branch & r(2)) ^ r(3), in(1) ^ r(1) ^ r(4)}};
    return g;
}

struct StepRunner {
    const Gadget &g;
    const BitVec &frame;
    LinearGate cnots;
    BitVec theta;
    BitVec outcomes;
    std::vector<int> wires;

    StepRunner(const Gadget &gadget, const BitVec &frame_bits)
        : g(gadget), frame(frame_bits), theta(gadget.measured.size()), wires(gadget.measured) {
        if ((int)frame.size() != 2 * g.num_inputs) {
            throw ParameterError("gadget frame must have 2 bits per input");
        }
    }

    MeasSpec spec_for(size_t k) {
        const GadgetStep &step = g.steps[k];
        cnots.insert(cnots.end(), step.cnots.begin(), step.cnots.end());
        for (int w : step.theta_on) {
            theta.set(w, true);
        }
        BitVec prior = outcomes;
        ClassicalFn f = step.measure;
        const BitVec *fr = &frame;
        return MeasSpec{[f, prior, fr](const BitVec &v) {
                            BitVec out(1);
                            out.set(0, f.eval(FnEnv{&v, fr, &prior}));
                            return out;
                        },
                        theta, cnots};
    }
};

}  // namespace

std::string_view gadget_name(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::H:
            return "H";
        case GadgetKind::CNOT:
            return "CNOT";
        case GadgetKind::T:
            return "T";
    }
    return "?";
}

const Gadget &gadget_for(GadgetKind kind) {
    static const Gadget h = make_h();
    static const Gadget cnot = make_cnot();
    static const Gadget t = make_t();
    switch (kind) {
        case GadgetKind::H:
            return h;
        case GadgetKind::CNOT:
            return cnot;
        case GadgetKind::T:
            return t;
    }
    throw InternalError("unknown gadget kind");
}

StateVector basis_state(GadgetKind kind, const BitVec &labels, bool flip) {
    const Gadget &g = gadget_for(kind);
    if (labels.size() != g.measured.size()) {
        throw ParameterError("gadget " + std::string(gadget_name(kind)) + " basis labels need " +
                             std::to_string(g.measured.size()) + " bits");
    }
    switch (kind) {
        case GadgetKind::H:
        case GadgetKind::CNOT: {
            // Every step is a plain standard-basis read after the first conjugation.
            StateVector s = StateVector::basis(labels);
            const GadgetStep &first = g.steps[0];
            BitVec theta(g.measured.size());
            for (int w : first.theta_on) {
                theta.set(w, true);
            }
            s.apply_h_mask(theta, g.measured);
            s.apply_linear(first.cnots, g.measured, true);
            return s;
        }
        case GadgetKind::T: {
            bool c0 = labels[0], c1 = labels[1], c2 = labels[2], c3 = labels[3];
            // Qubit order (i, j, k, l).
            std::vector<cplx> amps(16, 0.0);
            auto idx = [](bool i, bool j, bool k, bool l) { return (i << 3) | (j << 2) | (k << 1) | (int)l; };
            double h = 0.70710678118654752440;
            double sign = c2 ? -1.0 : 1.0;
            if (!(c0 ^ flip)) {
                amps[idx(c0, 0, c1, c3)] += h;
                amps[idx(c0, 1, c1, !c3)] += sign * h;
            } else {
                amps[idx(c0, 0, c1, c3)] += h;
                amps[idx(c0, 1, !c1, !c3)] += sign * h;
            }
            StateVector s = StateVector::from_amplitudes(amps);
            s.cnot(1, 0);
            return s;
        }
    }
    throw InternalError("unknown gadget kind");
}

BitVec run_gadget_steps(const Gadget &g, StateVector &s, const BitVec &frame, Rng &rng) {
    if (s.num_qubits() < g.width) {
        throw ParameterError("state too small for gadget");
    }
    StepRunner run(g, frame);
    for (size_t k = 0; k < g.steps.size(); k++) {
        MeasSpec spec = run.spec_for(k);
        run.outcomes.append(measure_fn(s, spec, run.wires, rng).outcome[0]);
    }
    return run.outcomes;
}

double run_gadget_forced(const Gadget &g, StateVector &s, const BitVec &frame, const BitVec &outcomes) {
    if (outcomes.size() != g.steps.size()) {
        throw ParameterError("forced outcomes must cover every gadget step");
    }
    StepRunner run(g, frame);
    double p = 1;
    for (size_t k = 0; k < g.steps.size(); k++) {
        MeasSpec spec = run.spec_for(k);
        BitVec want(1);
        want.set(0, outcomes[k]);
        p *= project_fn(s, spec, run.wires, want);
        if (p == 0) {
            return 0;
        }
        run.outcomes.append(outcomes[k]);
    }
    return p;
}

std::vector<std::pair<bool, bool>> eval_output_frames(const Gadget &g, const BitVec &frame, const BitVec &outcomes) {
    std::vector<std::pair<bool, bool>> out;
    FnEnv env{nullptr, &frame, &outcomes};
    for (const auto &f : g.output_frames) {
        out.emplace_back(f.z.eval(env), f.x.eval(env));
    }
    return out;
}

}  // namespace plmforge
