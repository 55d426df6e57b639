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

#ifndef PLMFORGE_CLASSICAL_FN_H
#define PLMFORGE_CLASSICAL_FN_H

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plmforge/bitvec.h"

namespace plmforge {

/// Inputs a ClassicalFn may read. Any pointer may be null when the function
/// does not reference that input family.
struct FnEnv {
    const BitVec *v = nullptr;  // measured-wire bits
    const BitVec *i = nullptr;  // classical input bits
    const BitVec *r = nullptr;  // prior outcomes; r_1 is stored at position 0
};

/// Single-output boolean expression over (v, i, r).
///
/// Leaves: constants, select(k) reading v_k, in(k) reading i_k (both 0-based),
/// and r(k) reading the outcome r_k (1-based, as outcomes are numbered from 1).
/// Interior nodes: xor, and, mux(c, a, b) = c ? a : b. Constructors fold constants,
/// so expressions built from constants stay constants.
///
/// JSON form: nested arrays such as ["xor", ["select", 3], ["r", 1]].
class ClassicalFn {
   public:
    enum class Op : uint8_t { Const, Select, Input, Outcome, Xor, And, Mux };

    ClassicalFn() : ClassicalFn(constant(false)) {
    }

    static ClassicalFn constant(bool value);
    static ClassicalFn select(int k);
    static ClassicalFn input(int k);
    static ClassicalFn outcome(int k);
    static ClassicalFn mux(const ClassicalFn &cond, const ClassicalFn &if_one, const ClassicalFn &if_zero);
    friend ClassicalFn operator^(const ClassicalFn &a, const ClassicalFn &b);
    friend ClassicalFn operator&(const ClassicalFn &a, const ClassicalFn &b);
    ClassicalFn &operator^=(const ClassicalFn &other) {
        return *this = *this ^ other;
    }

    Op op() const;
    int index() const;
    bool is_const() const {
        return op() == Op::Const;
    }
    bool const_value() const;

    bool eval(const FnEnv &env) const;
    /// Status-bit semantics: the result is ⊥ whenever any supplied input is ⊥.
    StatusWord eval_status(const StatusWord *v, const StatusWord *i, const StatusWord *r) const;

    /// Replaces leaves. Callbacks receive the leaf index and return the replacement;
    /// a null callback keeps that leaf family unchanged.
    using LeafMap = std::function<ClassicalFn(int)>;
    ClassicalFn substitute(const LeafMap &select_map, const LeafMap &input_map, const LeafMap &outcome_map) const;

    /// Largest referenced index per leaf family, or -1 if none.
    int max_select() const;
    int max_input() const;
    int max_outcome() const;
    size_t node_count() const;

    nlohmann::json to_json() const;
    static ClassicalFn from_json(const nlohmann::json &j);
    std::string str() const;

    /// Structural equality.
    bool operator==(const ClassicalFn &other) const;

   private:
    struct Node;
    static int max_leaf(const Node *root, Op want);
    explicit ClassicalFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {
    }
    std::shared_ptr<const Node> node_;
};

/// Evaluates a family of functions into consecutive output bits.
BitVec eval_all(const std::vector<ClassicalFn> &fns, const FnEnv &env);
nlohmann::json fns_to_json(const std::vector<ClassicalFn> &fns);
std::vector<ClassicalFn> fns_from_json(const nlohmann::json &j);

}  // namespace plmforge

#endif
