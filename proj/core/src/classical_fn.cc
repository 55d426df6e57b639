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

#include "plmforge/classical_fn.h"

#include <algorithm>

#include "plmforge/errors.h"

namespace plmforge {

struct ClassicalFn::Node {
    Op op;
    int index;  // leaf index, or constant value
    std::shared_ptr<const Node> a, b, c;
};

namespace {

bool read_bit(const BitVec *bits, int k, const char *family) {
    if (bits == nullptr || k < 0 || (size_t)k >= bits->size()) {
        throw ParameterError(std::string("classical function reads ") + family + "[" + std::to_string(k) +
                             "] which is not supplied");
    }
    return bits->get(k);
}

const char *op_name(ClassicalFn::Op op) {
    switch (op) {
        case ClassicalFn::Op::Const:
            return "const";
        case ClassicalFn::Op::Select:
            return "select";
        case ClassicalFn::Op::Input:
            return "in";
        case ClassicalFn::Op::Outcome:
            return "r";
        case ClassicalFn::Op::Xor:
            return "xor";
        case ClassicalFn::Op::And:
            return "and";
        case ClassicalFn::Op::Mux:
            return "mux";
    }
    return "?";
}

}  // namespace

ClassicalFn ClassicalFn::constant(bool value) {
    static const auto zero = std::make_shared<const Node>(Node{Op::Const, 0, nullptr, nullptr, nullptr});
    static const auto one = std::make_shared<const Node>(Node{Op::Const, 1, nullptr, nullptr, nullptr});
    return ClassicalFn(value ? one : zero);
}

ClassicalFn ClassicalFn::select(int k) {
    if (k < 0) {
        throw ParameterError("negative select index");
    }
    return ClassicalFn(std::make_shared<const Node>(Node{Op::Select, k, nullptr, nullptr, nullptr}));
}

ClassicalFn ClassicalFn::input(int k) {
    if (k < 0) {
        throw ParameterError("negative input index");
    }
    return ClassicalFn(std::make_shared<const Node>(Node{Op::Input, k, nullptr, nullptr, nullptr}));
}

ClassicalFn ClassicalFn::outcome(int k) {
    if (k < 1) {
        throw ParameterError("outcome indices start at 1");
    }
    return ClassicalFn(std::make_shared<const Node>(Node{Op::Outcome, k, nullptr, nullptr, nullptr}));
}

ClassicalFn operator^(const ClassicalFn &a, const ClassicalFn &b) {
    using Op = ClassicalFn::Op;
    if (a.is_const() && b.is_const()) {
        return ClassicalFn::constant(a.const_value() != b.const_value());
    }
    if (a.is_const() && !a.const_value()) {
        return b;
    }
    if (b.is_const() && !b.const_value()) {
        return a;
    }
    return ClassicalFn(std::make_shared<const ClassicalFn::Node>(ClassicalFn::Node{Op::Xor, 0, a.node_, b.node_, nullptr}));
}

ClassicalFn operator&(const ClassicalFn &a, const ClassicalFn &b) {
    using Op = ClassicalFn::Op;
    if (a.is_const()) {
        return a.const_value() ? b : a;
    }
    if (b.is_const()) {
        return b.const_value() ? a : b;
    }
    return ClassicalFn(std::make_shared<const ClassicalFn::Node>(ClassicalFn::Node{Op::And, 0, a.node_, b.node_, nullptr}));
}

ClassicalFn ClassicalFn::mux(const ClassicalFn &cond, const ClassicalFn &if_one, const ClassicalFn &if_zero) {
    if (cond.is_const()) {
        return cond.const_value() ? if_one : if_zero;
    }
    if (if_one == if_zero) {
        return if_one;
    }
    return ClassicalFn(std::make_shared<const Node>(Node{Op::Mux, 0, cond.node_, if_one.node_, if_zero.node_}));
}

ClassicalFn::Op ClassicalFn::op() const {
    return node_->op;
}

int ClassicalFn::index() const {
    return node_->index;
}

bool ClassicalFn::const_value() const {
    if (node_->op != Op::Const) {
        throw ParameterError("not a constant");
    }
    return node_->index != 0;
}

bool ClassicalFn::eval(const FnEnv &env) const {
    const Node *n = node_.get();
    switch (n->op) {
        case Op::Const:
            return n->index != 0;
        case Op::Select:
            return read_bit(env.v, n->index, "v");
        case Op::Input:
            return read_bit(env.i, n->index, "i");
        case Op::Outcome:
            return read_bit(env.r, n->index - 1, "r");
        case Op::Xor:
            return ClassicalFn(n->a).eval(env) != ClassicalFn(n->b).eval(env);
        case Op::And:
            return ClassicalFn(n->a).eval(env) && ClassicalFn(n->b).eval(env);
        case Op::Mux:
            return ClassicalFn(n->a).eval(env) ? ClassicalFn(n->b).eval(env) : ClassicalFn(n->c).eval(env);
    }
    throw InternalError("bad classical function node");
}

StatusWord ClassicalFn::eval_status(const StatusWord *v, const StatusWord *i, const StatusWord *r) const {
    for (const StatusWord *w : {v, i, r}) {
        if (w != nullptr && w->bottom) {
            return StatusWord::bot(1);
        }
    }
    FnEnv env{v ? &v->value : nullptr, i ? &i->value : nullptr, r ? &r->value : nullptr};
    BitVec out(1);
    out.set(0, eval(env));
    return StatusWord{out, false};
}

ClassicalFn ClassicalFn::substitute(const LeafMap &select_map, const LeafMap &input_map,
                                    const LeafMap &outcome_map) const {
    const Node *n = node_.get();
    auto sub = [&](const std::shared_ptr<const Node> &child) {
        return ClassicalFn(child).substitute(select_map, input_map, outcome_map);
    };
    switch (n->op) {
        case Op::Const:
            return *this;
        case Op::Select:
            return select_map ? select_map(n->index) : *this;
        case Op::Input:
            return input_map ? input_map(n->index) : *this;
        case Op::Outcome:
            return outcome_map ? outcome_map(n->index) : *this;
        case Op::Xor:
            return sub(n->a) ^ sub(n->b);
        case Op::And:
            return sub(n->a) & sub(n->b);
        case Op::Mux:
            return mux(sub(n->a), sub(n->b), sub(n->c));
    }
    throw InternalError("bad classical function node");
}

int ClassicalFn::max_select() const {
    return max_leaf(node_.get(), Op::Select);
}

int ClassicalFn::max_input() const {
    return max_leaf(node_.get(), Op::Input);
}

int ClassicalFn::max_outcome() const {
    return max_leaf(node_.get(), Op::Outcome);
}

int ClassicalFn::max_leaf(const Node *root, Op want) {
    std::vector<const Node *> stack{root};
    int best = -1;
    while (!stack.empty()) {
        const Node *n = stack.back();
        stack.pop_back();
        if (n->op == want) {
            best = std::max(best, n->index);
        }
        for (const auto &c : {n->a, n->b, n->c}) {
            if (c) {
                stack.push_back(c.get());
            }
        }
    }
    return best;
}

size_t ClassicalFn::node_count() const {
    std::vector<const Node *> stack{node_.get()};
    size_t count = 0;
    while (!stack.empty()) {
        const Node *n = stack.back();
        stack.pop_back();
        count++;
        for (const auto &c : {n->a, n->b, n->c}) {
            if (c) {
                stack.push_back(c.get());
            }
        }
    }
    return count;
}

nlohmann::json ClassicalFn::to_json() const {
    const Node *n = node_.get();
    switch (n->op) {
        case Op::Const:
        case Op::Select:
        case Op::Input:
        case Op::Outcome:
            return nlohmann::json::array({op_name(n->op), n->index});
        case Op::Xor:
        case Op::And:
            return nlohmann::json::array({op_name(n->op), ClassicalFn(n->a).to_json(), ClassicalFn(n->b).to_json()});
        case Op::Mux:
            return nlohmann::json::array(
                {"mux", ClassicalFn(n->a).to_json(), ClassicalFn(n->b).to_json(), ClassicalFn(n->c).to_json()});
    }
    throw InternalError("bad classical function node");
}

ClassicalFn ClassicalFn::from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_string()) {
        throw ParameterError("classical function JSON must be a tagged array");
    }
    std::string tag = j[0].get<std::string>();
    auto arity = [&](size_t k) {
        if (j.size() != k + 1) {
            throw ParameterError("classical function node '" + tag + "' expects " + std::to_string(k) + " arguments");
        }
    };
    if (tag == "const") {
        arity(1);
        return constant(j[1].get<int>() != 0);
    }
    if (tag == "select") {
        arity(1);
        return select(j[1].get<int>());
    }
    if (tag == "in") {
        arity(1);
        return input(j[1].get<int>());
    }
    if (tag == "r") {
        arity(1);
        return outcome(j[1].get<int>());
    }
    if (tag == "xor" || tag == "and") {
        if (j.size() < 3) {
            throw ParameterError("classical function node '" + tag + "' needs at least two arguments");
        }
        ClassicalFn acc = from_json(j[1]);
        for (size_t k = 2; k < j.size(); k++) {
            acc = tag == "xor" ? (acc ^ from_json(j[k])) : (acc & from_json(j[k]));
        }
        return acc;
    }
    if (tag == "mux") {
        arity(3);
        return mux(from_json(j[1]), from_json(j[2]), from_json(j[3]));
    }
    throw ParameterError("unknown classical function node '" + tag + "'");
}

std::string ClassicalFn::str() const {
    return to_json().dump();
}

bool ClassicalFn::operator==(const ClassicalFn &other) const {
    if (node_ == other.node_) {
        return true;
    }
    const Node *x = node_.get();
    const Node *y = other.node_.get();
    if (x->op != y->op || x->index != y->index) {
        return false;
    }
    auto same = [](const std::shared_ptr<const Node> &p, const std::shared_ptr<const Node> &q) {
        if (!p || !q) {
            return !p && !q;
        }
        return ClassicalFn(p) == ClassicalFn(q);
    };
    return same(x->a, y->a) && same(x->b, y->b) && same(x->c, y->c);
}

BitVec eval_all(const std::vector<ClassicalFn> &fns, const FnEnv &env) {
    BitVec out(fns.size());
    for (size_t k = 0; k < fns.size(); k++) {
        out.set(k, fns[k].eval(env));
    }
    return out;
}

nlohmann::json fns_to_json(const std::vector<ClassicalFn> &fns) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &f : fns) {
        out.push_back(f.to_json());
    }
    return out;
}

std::vector<ClassicalFn> fns_from_json(const nlohmann::json &j) {
    std::vector<ClassicalFn> out;
    for (const auto &e : j) {
        out.push_back(ClassicalFn::from_json(e));
    }
    return out;
}

}  // namespace plmforge
