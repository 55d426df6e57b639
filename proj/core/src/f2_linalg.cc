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

#include <algorithm>

#include "plmforge/errors.h"

namespace plmforge {

Subspace::Subspace(size_t ambient_dim) : ambient_dim_(ambient_dim) {
}

Subspace Subspace::span(size_t ambient_dim, const std::vector<BitVec> &generators) {
    std::vector<BitVec> rows;
    for (const auto &g : generators) {
        if (g.size() != ambient_dim) {
            throw ParameterError("generator length " + std::to_string(g.size()) + " != ambient dimension " +
                                 std::to_string(ambient_dim));
        }
        rows.push_back(g);
    }

    // Gauss-Jordan elimination.
    Subspace out(ambient_dim);
    size_t rank = 0;
    for (size_t col = 0; col < ambient_dim && rank < rows.size(); col++) {
        size_t pick = rank;
        while (pick < rows.size() && !rows[pick].get(col)) {
            pick++;
        }
        if (pick == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pick]);
        for (size_t r = 0; r < rows.size(); r++) {
            if (r != rank && rows[r].get(col)) {
                rows[r] ^= rows[rank];
            }
        }
        out.pivots_.push_back(col);
        rank++;
    }
    rows.resize(rank);
    out.basis_ = std::move(rows);
    return out;
}

Subspace Subspace::full(size_t ambient_dim) {
    std::vector<BitVec> gens;
    for (size_t k = 0; k < ambient_dim; k++) {
        BitVec e(ambient_dim);
        e.set(k, true);
        gens.push_back(e);
    }
    return span(ambient_dim, gens);
}

BitVec Subspace::reduce(const BitVec &v) const {
    if (v.size() != ambient_dim_) {
        throw ParameterError("vector length " + std::to_string(v.size()) + " != ambient dimension " +
                             std::to_string(ambient_dim_));
    }
    BitVec out = v;
    for (size_t r = 0; r < basis_.size(); r++) {
        if (out.get(pivots_[r])) {
            out ^= basis_[r];
        }
    }
    return out;
}

bool Subspace::contains(const BitVec &v) const {
    return reduce(v).is_zero();
}

bool Subspace::contains(const Subspace &other) const {
    if (other.ambient_dim_ != ambient_dim_) {
        throw ParameterError("subspaces live in different ambient spaces");
    }
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const BitVec &b) { return contains(b); });
}

Subspace Subspace::orthogonal_complement() const {
    // Null space of the RREF matrix: one vector per free column.
    std::vector<bool> is_pivot(ambient_dim_, false);
    for (size_t p : pivots_) {
        is_pivot[p] = true;
    }
    std::vector<BitVec> gens;
    for (size_t f = 0; f < ambient_dim_; f++) {
        if (is_pivot[f]) {
            continue;
        }
        BitVec w(ambient_dim_);
        w.set(f, true);
        for (size_t r = 0; r < basis_.size(); r++) {
            if (basis_[r].get(f)) {
                w.set(pivots_[r], true);
            }
        }
        gens.push_back(w);
    }
    return span(ambient_dim_, gens);
}

Subspace Subspace::extend_by(const BitVec &v) const {
    if (contains(v)) {
        throw PreconditionError("extend_by: vector " + v.str() + " already lies in the subspace");
    }
    std::vector<BitVec> gens = basis_;
    gens.push_back(v);
    return span(ambient_dim_, gens);
}

BitVec Subspace::element(uint64_t index) const {
    BitVec out(ambient_dim_);
    size_t k = basis_.size();
    for (size_t r = 0; r < k; r++) {
        if ((index >> (k - 1 - r)) & 1) {
            out ^= basis_[r];
        }
    }
    return out;
}

std::vector<BitVec> Subspace::elements() const {
    if (basis_.size() > 24) {
        throw ResourceError("refusing to enumerate a subspace of dimension " + std::to_string(basis_.size()));
    }
    std::vector<BitVec> out;
    out.reserve(size_t{1} << basis_.size());
    for (uint64_t i = 0; i < (uint64_t{1} << basis_.size()); i++) {
        out.push_back(element(i));
    }
    return out;
}

nlohmann::json Subspace::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &b : basis_) {
        rows.push_back(b.str());
    }
    return {{"ambient_dim", ambient_dim_}, {"basis", rows}};
}

Subspace Subspace::from_json(const nlohmann::json &j) {
    size_t d = j.at("ambient_dim").get<size_t>();
    std::vector<BitVec> gens;
    for (const auto &row : j.at("basis")) {
        gens.push_back(BitVec::from_string(row.get<std::string>()));
    }
    Subspace s = span(d, gens);
    if (s.dim() != gens.size()) {
        throw ParameterError("subspace basis rows are linearly dependent");
    }
    return s;
}

Subspace random_subspace(size_t ambient_dim, size_t dim, Rng &rng) {
    if (dim > ambient_dim) {
        throw ParameterError("random_subspace: dim " + std::to_string(dim) + " exceeds ambient dimension " +
                             std::to_string(ambient_dim));
    }
    while (true) {
        std::vector<BitVec> rows;
        for (size_t r = 0; r < dim; r++) {
            BitVec row(ambient_dim);
            for (size_t c = 0; c < ambient_dim; c++) {
                row.set(c, rng.bit());
            }
            rows.push_back(row);
        }
        Subspace s = Subspace::span(ambient_dim, rows);
        if (s.dim() == dim) {
            return s;
        }
    }
}

BitVec sample_coset_complement(const Subspace &avoid, const Subspace &within, Rng *rng) {
    if (!within.contains(avoid)) {
        throw PreconditionError("sample_coset_complement: avoid is not contained in within");
    }
    if (avoid.dim() == within.dim()) {
        throw PreconditionError("sample_coset_complement: avoid == within, no valid vector");
    }
    if (rng != nullptr) {
        // At least half of `within` qualifies, so this terminates quickly.
        while (true) {
            BitVec v = within.element(rng->below(uint64_t{1} << within.dim()));
            if (!avoid.contains(v)) {
                return v;
            }
        }
    }
    std::vector<BitVec> all = within.elements();
    std::sort(all.begin(), all.end());
    for (const auto &v : all) {
        if (!avoid.contains(v)) {
            return v;
        }
    }
    throw InternalError("sample_coset_complement: no vector found");
}

}  // namespace plmforge
