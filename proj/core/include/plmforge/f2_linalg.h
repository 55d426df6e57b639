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

#ifndef PLMFORGE_F2_LINALG_H
#define PLMFORGE_F2_LINALG_H

#include <vector>

#include <nlohmann/json.hpp>

#include "plmforge/bitvec.h"
#include "plmforge/rng.h"

namespace plmforge {

/// Linear subspace of GF(2)^d, stored as its reduced row-echelon basis.
///
/// Pivots run left to right and every pivot column is zero outside its own
/// row, so two subspaces are equal exactly when their bases are.
class Subspace {
   public:
    /// The zero subspace of GF(2)^ambient_dim.
    explicit Subspace(size_t ambient_dim = 0);

    /// Span of arbitrary (possibly dependent) generators.
    static Subspace span(size_t ambient_dim, const std::vector<BitVec> &generators);
    static Subspace full(size_t ambient_dim);

    size_t ambient_dim() const {
        return ambient_dim_;
    }
    size_t dim() const {
        return basis_.size();
    }
    const std::vector<BitVec> &basis() const {
        return basis_;
    }
    const std::vector<size_t> &pivots() const {
        return pivots_;
    }

    /// Reduces v against the basis. The result is zero iff v is in the subspace,
    /// and equal for two vectors iff they lie in the same coset.
    BitVec reduce(const BitVec &v) const;
    bool contains(const BitVec &v) const;
    bool contains(const Subspace &other) const;

    Subspace orthogonal_complement() const;
    /// span(S, v). Throws PreconditionError when v is already in S.
    Subspace extend_by(const BitVec &v) const;

    /// The element with combination bits `index` (bit k of index picks basis row k,
    /// counted from the last row). Enumerates the subspace as index runs over [0, 2^dim).
    BitVec element(uint64_t index) const;
    std::vector<BitVec> elements() const;

    bool operator==(const Subspace &other) const = default;

    nlohmann::json to_json() const;
    static Subspace from_json(const nlohmann::json &j);

   private:
    size_t ambient_dim_;
    std::vector<BitVec> basis_;
    std::vector<size_t> pivots_;
};

/// Uniformly random subspace of the given dimension.
Subspace random_subspace(size_t ambient_dim, size_t dim, Rng &rng);

/// A vector of `within` outside `avoid`. With rng == nullptr the choice is the
/// lexicographically least such vector; otherwise it is uniform.
BitVec sample_coset_complement(const Subspace &avoid, const Subspace &within, Rng *rng);

}  // namespace plmforge

#endif
