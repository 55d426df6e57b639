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

#include "plmforge/f2_linalg.h"

#include <set>

#include <gtest/gtest.h>

#include "plmforge/errors.h"

using namespace plmforge;

namespace {

/// Closure of the generators under xor, by brute force.
std::set<uint64_t> brute_span(size_t d, const std::vector<BitVec> &gens) {
    std::set<uint64_t> out{0};
    for (const BitVec &g : gens) {
        std::set<uint64_t> next = out;
        for (uint64_t v : out) {
            next.insert(v ^ g.to_uint());
        }
        out = next;
    }
    (void)d;
    return out;
}

}  // namespace

TEST(Subspace, span_matches_brute_force) {
    Rng rng(3);
    for (int trial = 0; trial < 50; trial++) {
        size_t d = 1 + rng.below(8);
        std::vector<BitVec> gens;
        for (size_t k = 0; k < rng.below(5); k++) {
            gens.push_back(BitVec::from_uint(rng.below(uint64_t{1} << d), d));
        }
        Subspace s = Subspace::span(d, gens);
        std::set<uint64_t> want = brute_span(d, gens);
        EXPECT_EQ(size_t{1} << s.dim(), want.size());
        std::set<uint64_t> got;
        for (const BitVec &e : s.elements()) {
            got.insert(e.to_uint());
        }
        EXPECT_EQ(got, want);
        for (uint64_t v = 0; v < (uint64_t{1} << d); v++) {
            EXPECT_EQ(s.contains(BitVec::from_uint(v, d)), want.count(v) > 0);
        }
    }
}

TEST(Subspace, complement_by_brute_force) {
    Rng rng(4);
    for (int trial = 0; trial < 30; trial++) {
        size_t d = 1 + rng.below(7);
        Subspace s = random_subspace(d, rng.below(d + 1), rng);
        Subspace perp = s.orthogonal_complement();
        for (uint64_t v = 0; v < (uint64_t{1} << d); v++) {
            BitVec bv = BitVec::from_uint(v, d);
            bool orth = true;
            for (const BitVec &b : s.basis()) {
                orth &= !bv.dot(b);
            }
            EXPECT_EQ(perp.contains(bv), orth);
        }
    }
}

TEST(Subspace, canonical_basis_makes_equality_structural) {
    Subspace a = Subspace::span(4, {BitVec::from_string("1100"), BitVec::from_string("0110")});
    Subspace b = Subspace::span(4, {BitVec::from_string("1010"), BitVec::from_string("1100")});
    EXPECT_EQ(a, b);
    EXPECT_EQ(Subspace::from_json(a.to_json()), a);
}

TEST(Subspace, reduce_is_a_coset_invariant) {
    Rng rng(5);
    Subspace s = random_subspace(6, 3, rng);
    for (int k = 0; k < 20; k++) {
        BitVec v = BitVec::from_uint(rng.below(64), 6);
        BitVec m = s.element(rng.below(8));
        EXPECT_EQ(s.reduce(v ^ m), s.reduce(v));
    }
    EXPECT_THROW(s.extend_by(s.element(3)), PreconditionError);
}

TEST(Subspace, complement_sample_lexicographic_least) {
    // within = everything, avoid = span(100): least vector outside is 001.
    Subspace avoid = Subspace::span(3, {BitVec::from_string("100")});
    BitVec v = sample_coset_complement(avoid, Subspace::full(3), nullptr);
    EXPECT_EQ(v.str(), "001");
}
