// Copyright 2026 The qsurgery Authors
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

#ifndef QSURGERY_LOGICAL_BASIS_H
#define QSURGERY_LOGICAL_BASIS_H

#include <stdexcept>
#include <vector>

#include "qsurgery/css_code.h"

namespace qsurgery {

class Uncleanable : public std::runtime_error {
   public:
    explicit Uncleanable(PauliOperator witness);
    /// Logical contained in the region that anticommutes with the operator being cleaned.
    PauliOperator witness;
};

/// Multiplies an X-type (or Z-type) operator by X (or Z) stabilizers so that it avoids
/// `region`. Low-weight stabilizer rows are preferred.
PauliOperator clean(const PauliOperator &op, const std::vector<size_t> &region, const CssCode &code);

struct LogicalBasis {
    size_t n = 0;
    /// Number of independent Z stabilizers.
    size_t m = 0;
    std::vector<GF2Vector> z_reps;
    std::vector<GF2Vector> x_reps;
    /// Pivot columns of the stabilizer block and of the logical block.
    std::vector<size_t> stabilizer_pivots;
    std::vector<size_t> logical_pivots;

    size_t k() const { return z_reps.size(); }
    /// Union of the Z representatives indexed by `subset`.
    GF2Vector z_union(const std::vector<size_t> &subset) const;
};

/// Z representatives in the stacked echelon form where logical rows never feed stabilizer rows.
LogicalBasis echelon_basis(const CssCode &code);

/// X representatives dual to z_reps; w_j meets the Z union only inside v_j.
LogicalBasis y_compatible_x_reps(LogicalBasis basis, const CssCode &code);

/// echelon_basis followed by y_compatible_x_reps.
LogicalBasis chosen_basis(const CssCode &code);

/// Z -> Z(v_i), X -> X(w_i), Y -> i X(w_i) Z(v_i).
PauliOperator representative_for(const LogicalBasis &basis, size_t index, PauliLetter letter);

/// X logicals dual to `z_reps` (pairing matrix = identity), before any cleaning.
std::vector<GF2Vector> dual_x_reps(const std::vector<GF2Vector> &z_reps, const CssCode &code);

/// Exhaustive subset check: every Z operator contained in the union of the subset's
/// representatives and commuting with H_X must commute with each dual X_j outside the
/// subset. Returns the first offending subset mask, or nullopt when all 2^k pass.
std::optional<uint64_t> find_contained_logical_violation(const LogicalBasis &basis, const CssCode &code);

/// Per-qubit letter compatibility of a set of operators: same letter or identity.
/// Returns (qubit, i, j) for the first clash.
struct LetterClash {
    size_t qubit;
    size_t first;
    size_t second;
};
std::optional<LetterClash> find_letter_clash(const std::vector<PauliOperator> &ops);

}  // namespace qsurgery

#endif
