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

#include "plmforge/errors.h"
#include "plmforge/obfuscator.h"

namespace plmforge {

namespace {

/// F_Sim. Ṽ holds encodings of zero, so every block passes the validity check and
/// the answer never depends on it; only the last round touches quantum state, and
/// that state is the simulator's private EPR halves.
class SimOracle : public Oracle {
   public:
    SimOracle(VerificationKey vk, PrfKey prf, int t, int n, std::vector<int> s_in, std::vector<int> s_out,
              SimUnitaryOracle u)
        : vk_(std::move(vk)),
          prf_(std::move(prf)),
          t_(t),
          n_(n),
          s_in_(std::move(s_in)),
          s_out_(std::move(s_out)),
          u_(std::move(u)) {
    }

    int t() const override {
        return t_;
    }
    int output_bits(int j) const override {
        return j < t_ ? prf_.kappa : 2 * n_;
    }

    StatusWord round(FactorState &world, std::span<const int> v_tilde, const PublicInstruction &pub, int j,
                     const BitVec &i, std::span<const uint8_t> s, const std::vector<BitVec> &labels, Rng &rng,
                     AnswerDist *dist) override {
        (void)v_tilde;
        (void)pub;
        if (j < 1 || j > t_) {
            throw ParameterError("round index out of range");
        }
        auto constant = [&](StatusWord w) {
            if (dist) {
                *dist = {{w.packed(), 1.0}};
            }
            return w;
        };
        if (!token_ver(vk_, i, s) || (int)labels.size() < j - 1) {
            return constant(StatusWord::bot(output_bits(j)));
        }
        for (int k = 1; k < j; k++) {
            if (labels[k - 1] != prf_eval(prf_, label_input(k, false, i, s))) {
                return constant(StatusWord::bot(output_bits(j)));
            }
        }
        if (j < t_) {
            return constant(StatusWord{prf_eval(prf_, label_input(j, false, i, s)), false});
        }
        Pauli p = Pauli::from_label(i);
        for (int w = 0; w < n_; w++) {
            if (p.x[w]) {
                world.apply_gate(Gate::X, {s_in_[w]});
            }
            if (p.z[w]) {
                world.apply_gate(Gate::Z, {s_in_[w]});
            }
        }
        std::map<BitVec, double> written_dist;
        BitVec written = u_(world, s_in_, s_out_, rng, dist ? &written_dist : nullptr);
        if (dist) {
            dist->clear();
            for (const auto &[v, pr] : written_dist) {
                (*dist)[StatusWord{v, false}.packed()] = pr;
            }
        }
        for (int w = 0; w < n_; w++) {
            if (p.z[w]) {
                world.apply_gate(Gate::Z, {s_in_[w]});
            }
            if (p.x[w]) {
                world.apply_gate(Gate::X, {s_in_[w]});
            }
        }
        return StatusWord{written, false};
    }

   private:
    VerificationKey vk_;
    PrfKey prf_;
    int t_;
    int n_;
    std::vector<int> s_in_;
    std::vector<int> s_out_;
    SimUnitaryOracle u_;
};

}  // namespace

SimUnitaryOracle make_sim_unitary(const Circuit &u) {
    if (u.aux != 0 || u.n_c != 0) {
        throw ParameterError("the simulator's black box takes a plain unitary circuit");
    }
    Circuit inv = inverse_circuit(u);
    return [u, inv](FactorState &world, std::span<const int> s_in, std::span<const int> s_out, Rng &rng,
                    std::map<BitVec, double> *dist) {
        if (s_in.size() != (size_t)u.n_q || s_out.size() != s_in.size()) {
            throw ParameterError("black box register widths do not match the circuit");
        }
        world.apply_circuit(u, s_in, BitVec(0));
        for (size_t w = 0; w < s_in.size(); w++) {
            world.apply_gate(Gate::CNOT, {s_in[w], s_out[w]});
            world.apply_gate(Gate::H, {s_in[w]});
        }
        if (dist) {
            std::vector<int> both(s_in.begin(), s_in.end());
            both.insert(both.end(), s_out.begin(), s_out.end());
            int key = world.merge(both);
            *dist = measure_fn_distribution(
                world.factor(key), MeasSpec{[](const BitVec &b) { return b; }, BitVec(both.size()), {}},
                world.local(key, both));
        }
        BitVec z = world.measure(s_in, rng);
        BitVec x = world.measure(s_out, rng);
        for (size_t w = s_in.size(); w-- > 0;) {
            world.apply_gate(Gate::H, {s_in[w]});
            world.apply_gate(Gate::CNOT, {s_in[w], s_out[w]});
        }
        world.apply_circuit(inv, s_in, BitVec(0));
        return z.concat(x);
    };
}

PackageShape package_shape(const ObfuscationPackage &pkg) {
    PackageShape out;
    out.n = pkg.n;
    out.m = pkg.m;
    out.lambda = pkg.lambda;
    out.kappa = pkg.kappa;
    out.num_v = pkg.v_tilde_width() / (2 * pkg.lambda + 1);
    out.instructions = pkg.instructions;
    return out;
}

ObfuscationPackage sim_package(const PackageShape &shape, SimUnitaryOracle u_oracle, Rng &rng) {
    int n = shape.n;
    if (n < 1 || shape.num_v < 2 * n || shape.instructions.empty()) {
        throw ParameterError("package shape is not that of an obfuscated program");
    }
    ObfuscationPackage pkg;
    FactorState &world = pkg.state;
    std::vector<int> s_in, s_out;
    for (int w = 0; w < n; w++) {
        std::vector<int> ids = world.add(epr_pairs(1));
        s_in.push_back(ids[0]);
        pkg.epr_in_pub.push_back(ids[1]);
    }
    for (int w = 0; w < n; w++) {
        std::vector<int> ids = world.add(epr_pairs(1));
        s_out.push_back(ids[0]);
        pkg.epr_out_pub.push_back(ids[1]);
    }

    AuthKey key = keygen(shape.lambda, shape.num_v, rng);
    std::vector<int> zero_wire{0};
    for (int w = 0; w < shape.num_v; w++) {
        std::vector<int> block{w};
        std::vector<int> ids = world.add(enc(key, StateVector(1), zero_wire, block));
        pkg.v_tilde.insert(pkg.v_tilde.end(), ids.begin(), ids.end());
    }

    auto [vk, token] = token_gen(2 * n, rng);
    PrfKey prf = PrfKey::generate(shape.kappa, rng);
    int t = (int)shape.instructions.size();
    pkg.oracle = std::make_shared<SimOracle>(vk, prf, t, n, s_in, s_out, std::move(u_oracle));
    pkg.token.emplace(std::move(token));
    pkg.n = n;
    pkg.m = shape.m;
    pkg.lambda = shape.lambda;
    pkg.kappa = shape.kappa;
    pkg.instructions = shape.instructions;
    pkg.dead_after.assign(shape.num_v, 0);
    return pkg;
}

}  // namespace plmforge
