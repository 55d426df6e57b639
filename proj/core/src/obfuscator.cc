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

#include "plmforge/obfuscator.h"

#include <algorithm>
#include <unordered_map>

#include "plmforge/errors.h"

namespace plmforge {

namespace {

std::string as_key(const Bytes &b) {
    return std::string(b.begin(), b.end());
}

StatusWord unpack(const BitVec &packed) {
    size_t w = packed.size() - 1;
    return StatusWord{packed.slice(0, w), packed[w]};
}

}  // namespace

void coherent_oracle_apply(StateVector &s, const std::function<BitVec(const BitVec &)> &oracle,
                           std::span<const int> in_wires, std::span<const int> out_wires) {
    int n = s.num_qubits();
    for (int w : out_wires) {
        if (std::find(in_wires.begin(), in_wires.end(), w) != in_wires.end()) {
            throw ParameterError("oracle input and output registers overlap");
        }
    }
    std::unordered_map<uint64_t, uint64_t> flips;
    auto flip_mask = [&](uint64_t x) {
        auto it = flips.find(x);
        if (it != flips.end()) {
            return it->second;
        }
        BitVec y = oracle(BitVec::from_uint(x, in_wires.size()));
        if (y.size() != out_wires.size()) {
            throw ParameterError("oracle output width does not match the answer register");
        }
        uint64_t mask = 0;
        for (size_t k = 0; k < out_wires.size(); k++) {
            if (y[k]) {
                mask |= s.mask(out_wires[k]);
            }
        }
        flips.emplace(x, mask);
        return mask;
    };
    const auto &src = s.amps();
    std::vector<cplx> dst(src.size(), 0.0);
    for (uint64_t a = 0; a < src.size(); a++) {
        dst[a ^ flip_mask(gather_bits(a, n, in_wires))] = src[a];
    }
    s.mutable_amps() = std::move(dst);
}

OracleF::OracleF(AuthKey key, VerificationKey vk, PrfKey prf, std::shared_ptr<const PLMProgram> plm, bool dense)
    : key_(std::move(key)), vk_(std::move(vk)), prf_(std::move(prf)), plm_(std::move(plm)), dense_(dense) {
    if (key_.n != plm_->num_wires) {
        throw ParameterError("authentication key must have one block per V wire");
    }
    int t = plm_->t();
    support_.resize(t);
    for (int j = 1; j <= t; j++) {
        pads_.push_back(updated_pads(key_, plm_->gate(j)));
    }
    for (const GadgetRecord &g : plm_->gadgets) {
        for (size_t k = 0; k < g.wires.size(); k++) {
            support_[g.first_outcome - 1 + k] = g.wires;
        }
    }
    for (const FinalRead &f : plm_->finals) {
        support_[f.outcome - 1] = {f.wire};
    }
    std::vector<bool> is_final(t + 1, false);
    for (const FinalRead &f : plm_->finals) {
        is_final[f.outcome] = true;
    }
    for (int j = t; j >= 1 && is_final[j]; j--) {
        tail_start_ = j;
    }
    for (auto [c, tg] : plm_->gate(t)) {
        for (const FinalRead &f : plm_->finals) {
            if (f.outcome >= tail_start_ && (c == f.wire || tg == f.wire)) {
                tail_start_ = 0;
            }
        }
    }
}

int OracleF::t() const {
    return plm_->t();
}

int OracleF::output_bits(int j) const {
    return j < t() ? prf_.kappa : plm_->n_out;
}

const BitVec &OracleF::label(int j, bool r, const BitVec &i, std::span<const uint8_t> s) const {
    Bytes in = label_input(j, r, i, s);
    std::string k = as_key(in);
    auto it = labels_.find(k);
    if (it == labels_.end()) {
        it = labels_.emplace(k, prf_eval(prf_, in)).first;
    }
    return it->second;
}

std::optional<BitVec> OracleF::recover(int j, const BitVec &i, std::span<const uint8_t> s,
                                       const std::vector<BitVec> &labels) const {
    std::string tk = as_key(encode_fields({bits_field(i), Bytes(s.begin(), s.end())}));
    auto it = token_ok_.find(tk);
    if (it == token_ok_.end()) {
        it = token_ok_.emplace(tk, token_ver(vk_, i, s)).first;
    }
    if (!it->second || (int)labels.size() < j - 1) {
        return std::nullopt;
    }
    BitVec r;
    for (int k = 1; k < j; k++) {
        bool zero = labels[k - 1] == label(k, false, i, s);
        bool one = labels[k - 1] == label(k, true, i, s);
        if (zero == one) {
            return std::nullopt;
        }
        r.append(one);
    }
    return r;
}

StatusWord OracleF::answer(int j, const BitVec &v, const BitVec &i, std::span<const uint8_t> s,
                           const BitVec &r) const {
    evaluations_++;
    bool rj = plm_->instructions[j - 1].f.eval(FnEnv{&v, &i, &r});
    if (j < t()) {
        return StatusWord{label(j, rj, i, s), false};
    }
    BitVec all = r;
    all.append(rj);
    return StatusWord{eval_output(*plm_, i, all), false};
}

StatusWord OracleF::query(int j, const BitVec &v_tilde, const BitVec &i, std::span<const uint8_t> s,
                          const std::vector<BitVec> &labels) const {
    if (j < 1 || j > t()) {
        throw ParameterError("round index out of range");
    }
    size_t p = key_.block();
    if (v_tilde.size() != (size_t)plm_->num_wires * p || (int)i.size() != plm_->n_c) {
        throw ParameterError("oracle query has the wrong register widths");
    }
    const auto &[z, x] = pads_[j - 1];
    const BitVec &theta = plm_->instructions[j - 1].theta;
    BitVec v(plm_->num_wires);
    for (int w = 0; w < plm_->num_wires; w++) {
        int m = dec_block(key_, theta[w], z[w], x[w], v_tilde.slice(w * p, p));
        if (m < 0) {
            return StatusWord::bot(output_bits(j));
        }
        v.set(w, m);
    }
    std::optional<BitVec> r = recover(j, i, s, labels);
    if (!r) {
        return StatusWord::bot(output_bits(j));
    }
    return answer(j, v, i, s, *r);
}

StatusWord OracleF::round(FactorState &world, std::span<const int> v_tilde, const PublicInstruction &pub, int j,
                          const BitVec &i, std::span<const uint8_t> s, const std::vector<BitVec> &labels, Rng &rng,
                          AnswerDist *dist) {
    if (j < 1 || j > t()) {
        throw ParameterError("round index out of range");
    }
    if (dense_) {
        return round_dense(world, v_tilde, pub, j, i, s, labels, rng, dist);
    }
    std::optional<BitVec> r = recover(j, i, s, labels);
    if (!r) {
        // A constant answer collapses nothing.
        StatusWord bot = StatusWord::bot(output_bits(j));
        if (dist) {
            *dist = {{bot.packed(), 1.0}};
        }
        return bot;
    }

    // Only the blocks of this round's gadget enter the answer beyond the validity
    // check, and G_j never links them to other blocks. The rest of H^theta~ G~ cancels
    // against its inverse, and on the code space the other blocks' validity checks
    // act as the identity.
    const std::vector<int> &wires = support_[j - 1];
    int p = key_.block();
    std::unordered_map<int, int> pos;
    for (size_t a = 0; a < wires.size(); a++) {
        pos[wires[a]] = (int)a;
    }
    const PlmInstruction &ins = plm_->instructions[j - 1];
    BitVec theta_w(wires.size());
    for (size_t a = 0; a < wires.size(); a++) {
        theta_w.set(a, ins.theta[wires[a]]);
    }
    LinearGate g_w;
    for (auto [c, t] : plm_->gate(j)) {
        bool ci = pos.count(c) > 0, ti = pos.count(t) > 0;
        if (ci != ti) {
            throw InternalError("round support is not closed under G_j");
        }
        if (ci) {
            g_w.emplace_back(pos[c], pos[t]);
        }
    }
    auto [theta_phys, g_phys] = eval_lift(key_.lambda, theta_w, g_w);

    std::vector<int> ids = block_ids(v_tilde, p, wires);
    int fkey = world.merge(ids);
    std::vector<int> loc = world.local(fkey, ids);

    const auto &[z, x] = pads_[j - 1];
    BitVec rv = *r;
    int nv = plm_->num_wires;
    int width = output_bits(j);
    MeasSpec spec{[&, rv](const BitVec &bits) {
                      BitVec v(nv);
                      for (size_t a = 0; a < wires.size(); a++) {
                          int w = wires[a];
                          int m = dec_block(key_, ins.theta[w], z[w], x[w], bits.slice(a * p, p));
                          if (m < 0) {
                              return StatusWord::bot(width).packed();
                          }
                          v.set(w, m);
                      }
                      return answer(j, v, i, s, rv).packed();
                  },
                  theta_phys, g_phys};
    (void)pub;
    return unpack(measure_fn(world.factor(fkey), spec, loc, rng, dist).outcome);
}

bool OracleF::final_answer_distribution(const FactorState &world, std::span<const int> v_tilde, int j,
                                        const BitVec &i, std::span<const uint8_t> s,
                                        const std::vector<BitVec> &labels, AnswerDist &out) const {
    if (dense_ || tail_start_ == 0 || j != tail_start_) {
        return false;
    }
    std::optional<BitVec> r = recover(j, i, s, labels);
    int t = plm_->t();
    if (!r) {
        out = {{StatusWord::bot(plm_->n_out).packed(), 1.0}};
        return true;
    }
    // Rounds j..t read distinct single wires with no CNOT on them, so their
    // measurements commute and act jointly as one grouped measurement.
    std::vector<int> wires;
    BitVec theta_w;
    for (int k = j; k <= t; k++) {
        int w = support_[k - 1][0];
        wires.push_back(w);
        theta_w.append(plm_->instructions[k - 1].theta[w]);
    }
    auto [theta_phys, g_phys] = eval_lift(key_.lambda, theta_w, LinearGate{});
    int p = key_.block();
    FactorState scratch = world;
    std::vector<int> ids = block_ids(v_tilde, p, wires);
    int fkey = scratch.merge(ids);
    std::vector<int> loc = scratch.local(fkey, ids);
    BitVec prefix = *r;
    int nv = plm_->num_wires;
    MeasSpec spec{[&, prefix](const BitVec &bits) {
                      BitVec v(nv);
                      BitVec all = prefix;
                      for (int k = j; k <= t; k++) {
                          int a = k - j;
                          int w = wires[a];
                          const auto &[z, x] = pads_[k - 1];
                          int m = dec_block(key_, plm_->instructions[k - 1].theta[w], z[w], x[w],
                                            bits.slice(a * p, p));
                          if (m < 0) {
                              return StatusWord::bot(plm_->n_out).packed();
                          }
                          v.set(w, m);
                          all.append(plm_->instructions[k - 1].f.eval(FnEnv{&v, &i, &all}));
                      }
                      return StatusWord{eval_output(*plm_, i, all), false}.packed();
                  },
                  theta_phys, g_phys};
    out = measure_fn_distribution(scratch.factor(fkey), spec, loc);
    return true;
}

StatusWord OracleF::round_dense(FactorState &world, std::span<const int> v_tilde, const PublicInstruction &pub,
                                int j, const BitVec &i, std::span<const uint8_t> s, const std::vector<BitVec> &labels,
                                Rng &rng, AnswerDist *dist) {
    std::vector<int> y = world.add(StateVector(output_bits(j) + 1));
    std::vector<int> all(v_tilde.begin(), v_tilde.end());
    all.insert(all.end(), y.begin(), y.end());
    int fkey = world.merge(all);
    std::vector<int> loc_v = world.local(fkey, v_tilde);
    std::vector<int> loc_y = world.local(fkey, y);
    StateVector &st = world.factor(fkey);
    st.apply_linear(pub.g, loc_v);
    st.apply_h_mask(pub.theta, loc_v);
    coherent_oracle_apply(
        st, [&](const BitVec &v) { return query(j, v, i, s, labels).packed(); }, loc_v, loc_y);
    if (dist) {
        *dist = measure_fn_distribution(st, MeasSpec{[](const BitVec &b) { return b; }, BitVec(loc_y.size()), {}},
                                        loc_y);
    }
    BitVec answer_bits = world.measure_out(y, rng);
    StateVector &after = world.factor(world.factor_of(v_tilde[0]));
    std::vector<int> loc_after = world.local(world.factor_of(v_tilde[0]), v_tilde);
    after.apply_h_mask(pub.theta, loc_after);
    after.apply_linear(pub.g, loc_after, true);
    return unpack(answer_bits);
}

std::vector<int> block_ids(std::span<const int> v_tilde, int block, std::span<const int> v_wires) {
    std::vector<int> ids;
    for (int w : v_wires) {
        for (int k = 0; k < block; k++) {
            ids.push_back(v_tilde[(size_t)w * block + k]);
        }
    }
    return ids;
}

AuthenticatedPlm authenticate_plm(std::shared_ptr<const PLMProgram> plm, const std::vector<PlainFactor> &plaintext,
                                  const VerificationKey &vk, const ObfParams &params, Rng &rng,
                                  std::vector<std::vector<int>> *extra_ids) {
    int nv = plm->num_wires;
    std::vector<int> covered(nv, 0);
    for (const auto &f : plaintext) {
        if ((int)f.v_wire.size() != f.state.num_qubits()) {
            throw ParameterError("plaintext factor needs one V wire entry per qubit");
        }
        for (int w : f.v_wire) {
            if (w >= nv) {
                throw ParameterError("plaintext V wire out of range");
            }
            if (w >= 0) {
                covered[w]++;
            }
        }
    }
    if (std::any_of(covered.begin(), covered.end(), [](int c) { return c != 1; })) {
        throw ParameterError("plaintext factors must cover every V wire exactly once");
    }

    AuthenticatedPlm out;
    out.plm = plm;
    out.key = keygen(params.lambda, nv, rng);
    PrfKey prf = PrfKey::generate(params.kappa, rng);
    int p = out.key.block();
    out.v_tilde.assign((size_t)nv * p, -1);
    if (extra_ids) {
        extra_ids->clear();
    }
    for (const auto &f : plaintext) {
        std::vector<int> logical, blocks;
        for (int q = 0; q < f.state.num_qubits(); q++) {
            if (f.v_wire[q] >= 0) {
                logical.push_back(q);
                blocks.push_back(f.v_wire[q]);
            }
        }
        std::vector<int> ids = out.state.add(enc(out.key, f.state, logical, blocks));
        std::vector<int> extras;
        size_t at = 0;
        for (int q = 0; q < f.state.num_qubits(); q++) {
            int w = f.v_wire[q];
            if (w >= 0) {
                for (int k = 0; k < p; k++) {
                    out.v_tilde[(size_t)w * p + k] = ids[at++];
                }
            } else {
                extras.push_back(ids[at++]);
            }
        }
        if (extra_ids) {
            extra_ids->push_back(extras);
        }
    }

    for (int j = 1; j <= plm->t(); j++) {
        auto [theta, g] = eval_lift(params.lambda, plm->instructions[j - 1].theta, plm->gate(j));
        out.instructions.push_back(PublicInstruction{theta, g});
    }
    out.dead_after.assign(nv, 0);
    for (const GadgetRecord &g : plm->gadgets) {
        int last = g.first_outcome + (int)g.wires.size() - 1;
        for (int w : g.wires) {
            out.dead_after[w] = last;
        }
    }
    for (const FinalRead &f : plm->finals) {
        out.dead_after[f.wire] = f.outcome;
    }
    out.oracle = std::make_shared<OracleF>(out.key, vk, prf, plm, params.dense);
    if (params.dense) {
        out.state.merge_all();
    }
    return out;
}

RoundsResult run_rounds(FactorState &world, std::span<const int> v_tilde, int block,
                        const std::vector<PublicInstruction> &instructions, const std::vector<int> &dead_after,
                        Oracle &oracle, const BitVec &i, std::span<const uint8_t> s, Rng &rng, bool record_dists) {
    RoundsResult out;
    Rng dead_rng = rng.split();
    std::vector<BitVec> labels;
    int t = (int)instructions.size();
    bool have_final = false;
    for (int j = 1; j <= t; j++) {
        if (record_dists && !have_final) {
            have_final = oracle.final_answer_distribution(world, v_tilde, j, i, s, labels, out.final_dist);
        }
        AnswerDist dist;
        StatusWord ans = oracle.round(world, v_tilde, instructions[j - 1], j, i, s, labels, rng,
                                      record_dists ? &dist : nullptr);
        if (record_dists) {
            out.answer_dists.push_back(std::move(dist));
        }
        out.transcript.push_back(ans);
        if (ans.bottom) {
            out.bottom_events++;
            break;
        }
        labels.push_back(ans.value);
        std::vector<int> dead;
        for (size_t w = 0; w < dead_after.size(); w++) {
            if (dead_after[w] == j) {
                dead.push_back((int)w);
            }
        }
        if (!dead.empty()) {
            world.measure_out(block_ids(v_tilde, block, dead), dead_rng);
        }
    }
    if (record_dists && !have_final && !out.answer_dists.empty()) {
        out.final_dist = out.answer_dists.back();
    }
    return out;
}

ObfuscationPackage qobf(const Circuit &u, const StateVector &psi_aux, const ObfParams &params, Rng &rng) {
    int n = u.n_q;
    int m = u.aux;
    if (psi_aux.num_qubits() != m) {
        throw ParameterError("psi_aux must have one qubit per ancilla of the circuit");
    }
    Circuit wrapped = wrap_for_obfuscation(u, n);
    auto plm = std::make_shared<const PLMProgram>(compile(wrapped));

    std::vector<PlainFactor> plain;
    for (int w = 0; w < n; w++) {
        plain.push_back(PlainFactor{epr_pairs(1), {w, -1}});
    }
    for (int w = 0; w < n; w++) {
        plain.push_back(PlainFactor{epr_pairs(1), {n + w, -1}});
    }
    if (m > 0) {
        std::vector<int> wires(m);
        for (int a = 0; a < m; a++) {
            wires[a] = 2 * n + a;
        }
        plain.push_back(PlainFactor{psi_aux, wires});
    }
    int base = plm->n_q;
    for (const GadgetRecord &g : plm->gadgets) {
        const MagicState &magic = gadget_for(g.kind).magic;
        StateVector s(magic.width);
        apply_circuit(s, magic.prep, BitVec(0));
        std::vector<int> wires(magic.width);
        for (int a = 0; a < magic.width; a++) {
            wires[a] = base + a;
        }
        base += magic.width;
        plain.push_back(PlainFactor{std::move(s), wires});
    }
    if (base != plm->num_wires) {
        throw InternalError("magic states do not tile the PLM register");
    }

    auto [vk, token] = token_gen(2 * n, rng);
    std::vector<std::vector<int>> extras;
    AuthenticatedPlm auth = authenticate_plm(plm, plain, vk, params, rng, &extras);

    ObfuscationPackage pkg;
    pkg.state = std::move(auth.state);
    pkg.v_tilde = std::move(auth.v_tilde);
    for (int w = 0; w < n; w++) {
        pkg.epr_in_pub.push_back(extras[w].at(0));
        pkg.epr_out_pub.push_back(extras[n + w].at(0));
    }
    pkg.n = n;
    pkg.m = m;
    pkg.lambda = params.lambda;
    pkg.kappa = params.kappa;
    pkg.instructions = std::move(auth.instructions);
    pkg.dead_after = std::move(auth.dead_after);
    pkg.token.emplace(std::move(token));
    pkg.oracle = auth.oracle;
    pkg.plm = plm;
    pkg.key = auth.key;
    return pkg;
}

StatusWord oracle_f(const ObfuscationPackage &pkg, int j, const BitVec &v_tilde, const BitVec &i,
                    std::span<const uint8_t> s, const std::vector<BitVec> &labels) {
    const auto *f = dynamic_cast<const OracleF *>(pkg.oracle.get());
    if (!f) {
        throw PreconditionError("package oracle is not a classical F");
    }
    return f->query(j, v_tilde, i, s, labels);
}

QEvalResult qeval(ObfuscationPackage &pkg, const StateVector &rho_in, Rng &rng, bool record_dists) {
    if (pkg.consumed || !pkg.token) {
        throw OneTimeUseError("obfuscation package was already evaluated");
    }
    pkg.consumed = true;
    int n = pkg.n;
    if (rho_in.num_qubits() < n) {
        throw ParameterError("input state is smaller than the program");
    }
    FactorState &world = pkg.state;
    std::vector<int> in_ids = world.add(rho_in);
    std::vector<int> msg(in_ids.begin(), in_ids.begin() + n);
    std::vector<int> ref(in_ids.begin() + n, in_ids.end());

    for (int w = 0; w < n; w++) {
        world.apply_gate(Gate::CNOT, {msg[w], pkg.epr_in_pub[w]});
        world.apply_gate(Gate::H, {msg[w]});
    }
    QEvalResult res;
    if (record_dists) {
        std::vector<int> both = msg;
        both.insert(both.end(), pkg.epr_in_pub.begin(), pkg.epr_in_pub.end());
        int key = world.merge(both);
        res.i_dist = measure_fn_distribution(
            world.factor(key), MeasSpec{[](const BitVec &b) { return b; }, BitVec(both.size()), {}},
            world.local(key, both));
    }
    BitVec z = world.measure_out(msg, rng);
    BitVec x = world.measure_out(pkg.epr_in_pub, rng);
    res.i = z.concat(x);
    Bytes s = pkg.token->sign(res.i);

    int block = 2 * pkg.lambda + 1;
    RoundsResult rr =
        run_rounds(world, pkg.v_tilde, block, pkg.instructions, pkg.dead_after, *pkg.oracle, res.i, s, rng, record_dists);
    res.transcript = rr.transcript;
    res.bottom_events = rr.bottom_events;
    res.answer_dists = std::move(rr.answer_dists);
    res.final_dist = std::move(rr.final_dist);
    if (rr.bottom_events > 0) {
        throw ProtocolFailure("oracle answered ⊥ at round " + std::to_string(rr.transcript.size()) +
                              " of an honest evaluation");
    }
    Pauli out = Pauli::from_label(rr.transcript.back().value);
    for (int w = 0; w < n; w++) {
        if (out.x[w]) {
            world.apply_gate(Gate::X, {pkg.epr_out_pub[w]});
        }
        if (out.z[w]) {
            world.apply_gate(Gate::Z, {pkg.epr_out_pub[w]});
        }
    }

    std::vector<int> keep = pkg.epr_out_pub;
    keep.insert(keep.end(), ref.begin(), ref.end());
    std::vector<int> rest;
    for (int id : world.live_ids()) {
        if (std::find(keep.begin(), keep.end(), id) == keep.end()) {
            rest.push_back(id);
        }
    }
    if (!rest.empty()) {
        world.measure_out(rest, rng);
    }
    res.output = world.assemble(keep);
    res.peak_qubits = world.peak_factor_qubits();
    return res;
}

}  // namespace plmforge
