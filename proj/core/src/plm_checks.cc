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

#include <cmath>
#include <sstream>

#include "plmforge/errors.h"
#include "plmforge/plm.h"

namespace plmforge {

namespace {

// Applies Pi_{=r_t} ... Pi_{=r_1} to each state in place.
void apply_product(const PLMProgram &p, const BitVec &i, const BitVec &r, std::vector<StateVector> &states) {
    std::vector<int> wires = v_wires(p);
    BitVec prefix;
    for (int j = 1; j <= p.t(); j++) {
        MeasSpec spec = instruction_spec(p, j, i, prefix);
        BitVec want(1);
        want.set(0, r[j - 1]);
        for (auto &s : states) {
            apply_projector(s, spec, wires, want);
        }
        prefix.append(r[j - 1]);
    }
}

double compare_leaf(const PLMProgram &p, const BitVec &i, const BitVec &r, const std::vector<StateVector> &originals,
                    const std::vector<StateVector> &projected) {
    StateVector phi = phi_basis_state(p, i, r);
    double worst = 0;
    for (size_t k = 0; k < originals.size(); k++) {
        StateVector rhs = phi;
        rhs.scale(inner_product(phi, originals[k]));
        worst = std::max(worst, pure_trace_distance(projected[k].amps(), rhs.amps()));
    }
    return worst;
}

struct ProductDfs {
    const PLMProgram &p;
    const BitVec &i;
    const std::vector<StateVector> &originals;
    std::vector<int> wires;
    CheckReport report;

    void run(int j, BitVec &r, std::vector<StateVector> states) {
        if (j > p.t()) {
            report.max_distance = std::max(report.max_distance, compare_leaf(p, i, r, originals, states));
            report.cases++;
            return;
        }
        MeasSpec spec = instruction_spec(p, j, i, r);
        for (int b = 0; b < 2; b++) {
            std::vector<StateVector> next = b == 0 ? states : std::move(states);
            BitVec want(1);
            want.set(0, b);
            for (auto &s : next) {
                apply_projector(s, spec, wires, want);
            }
            r.append(b);
            run(j + 1, r, std::move(next));
            r = r.slice(0, r.size() - 1);
        }
    }
};

}  // namespace

CheckReport projectivity_check(const PLMProgram &p, const BitVec &i, Rng &rng, int num_states, double tolerance) {
    std::vector<StateVector> originals;
    for (int k = 0; k < num_states; k++) {
        originals.push_back(StateVector::random(p.num_wires, rng));
    }
    CheckReport rep;
    if (p.t() <= 10) {
        ProductDfs dfs{p, i, originals, v_wires(p), {}};
        BitVec r;
        dfs.run(1, r, originals);
        rep = dfs.report;
        rep.exhaustive = true;
    } else {
        for (int k = 0; k < 64; k++) {
            StateVector input = StateVector::random(p.n_q, rng);
            BitVec r = execute_plm(p, i, input, nullptr, rng).r;
            std::vector<StateVector> states = originals;
            apply_product(p, i, r, states);
            rep.max_distance = std::max(rep.max_distance, compare_leaf(p, i, r, originals, states));
            rep.cases++;
        }
    }
    rep.pass = rep.max_distance <= tolerance;
    std::ostringstream os;
    os << rep.cases << " outcome sequences x " << num_states << " states";
    rep.detail = os.str();
    return rep;
}

CheckReport output_projector_identity_check(const PLMProgram &p, const Circuit &q, const BitVec &i, Rng &rng,
                                            int num_states, double tolerance) {
    if (p.t() > 10) {
        throw PreconditionError("operator identity check needs t <= 10");
    }
    if (q.width() != p.n_q || (int)q.measure.size() != p.n_out || q.has_oracle_calls()) {
        throw PreconditionError("circuit does not match the program");
    }
    int ny = p.n_out;
    int nq = p.n_q;
    int nref = nq;
    if (ny + p.num_wires + nref > qubit_cap()) {
        throw ResourceError("operator identity check exceeds the qubit cap");
    }
    Circuit unitary = q;
    unitary.measure.clear();
    Circuit inverse = inverse_circuit(unitary);
    StateVector psi_plm = p.plm_state();

    size_t dim_y = size_t{1} << ny;
    size_t dim_rest = size_t{1} << (nq + nref);
    size_t dim_v_ref = size_t{1} << (p.num_wires + nref);
    int total = ny + p.num_wires + nref;
    std::vector<int> keep;
    for (int w = 0; w < ny; w++) {
        keep.push_back(w);
    }
    for (int w = 0; w < nref; w++) {
        keep.push_back(ny + p.num_wires + w);
    }

    CheckReport rep;
    rep.exhaustive = true;
    for (int k = 0; k < num_states; k++) {
        StateVector chi = StateVector::random(ny + nq + nref, rng);
        StateVector lhs(total), rhs(total);
        lhs.mutable_amps().assign(lhs.dim(), 0.0);
        rhs.mutable_amps().assign(rhs.dim(), 0.0);
        auto accumulate = [&](StateVector &dst, uint64_t y_index, const StateVector &v_ref) {
            for (size_t a = 0; a < dim_v_ref; a++) {
                dst.mutable_amps()[y_index * dim_v_ref + a] += v_ref.amps()[a];
            }
        };
        for (uint64_t y0 = 0; y0 < dim_y; y0++) {
            // Slice chi = sum_y0 |y0> (x) |chi_y0>.
            StateVector part(nq + nref);
            for (size_t a = 0; a < dim_rest; a++) {
                part.mutable_amps()[a] = chi.amps()[y0 * dim_rest + a];
            }
            if (part.norm_squared() == 0) {
                continue;
            }

            enumerate_branches(
                p, i, plm_initial_state(p, part, &psi_plm),
                [&](const BitVec &r, const StateVector &post) {
                    uint64_t y = eval_output(p, i, r).to_uint();
                    accumulate(lhs, y0 ^ y, post);
                },
                0.0);

            StateVector rotated = part;
            apply_circuit(rotated, unitary, i);
            for (uint64_t y = 0; y < dim_y; y++) {
                StateVector proj = rotated;
                for (size_t a = 0; a < proj.dim(); a++) {
                    if (gather_bits(a, proj.num_qubits(), q.measure) != y) {
                        proj.mutable_amps()[a] = 0;
                    }
                }
                apply_circuit(proj, inverse, i);
                accumulate(rhs, y0 ^ y, plm_initial_state(p, proj, &psi_plm));
            }
        }
        double d = trace_distance(reduced_density(lhs, keep), reduced_density(rhs, keep), size_t{1} << keep.size());
        rep.max_distance = std::max(rep.max_distance, d);
        rep.cases++;
    }
    rep.pass = rep.max_distance <= tolerance;
    rep.detail = std::to_string(rep.cases) + " random states on (Y, inputs, reference)";
    return rep;
}

CheckReport completeness_check(const PLMProgram &p, const BitVec &i, double tolerance) {
    if (p.t() > 8) {
        throw PreconditionError("completeness check needs t <= 8");
    }
    size_t dim = size_t{1} << p.num_wires;
    std::vector<cplx> sum(dim * dim, 0.0);
    uint64_t count = uint64_t{1} << p.t();
    for (uint64_t rv = 0; rv < count; rv++) {
        StateVector phi = phi_basis_state(p, i, BitVec::from_uint(rv, p.t()));
        const auto &a = phi.amps();
        for (size_t x = 0; x < dim; x++) {
            if (a[x] == 0.0) {
                continue;
            }
            for (size_t y = 0; y < dim; y++) {
                sum[x * dim + y] += a[x] * std::conj(a[y]);
            }
        }
    }
    CheckReport rep;
    rep.exhaustive = true;
    rep.cases = count;
    for (size_t x = 0; x < dim; x++) {
        for (size_t y = 0; y < dim; y++) {
            cplx want = x == y ? 1.0 : 0.0;
            rep.max_distance = std::max(rep.max_distance, std::abs(sum[x * dim + y] - want));
        }
    }
    rep.pass = rep.max_distance <= tolerance;
    rep.detail = "max entrywise deviation from I";
    return rep;
}

}  // namespace plmforge
