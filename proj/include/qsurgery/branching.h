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

#ifndef QSURGERY_BRANCHING_H
#define QSURGERY_BRANCHING_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsurgery/css_code.h"

namespace qsurgery {

enum class CheckOrigin { Original, Deformed, BranchZ, BranchX, GaugeVertex, GaugeFace };

const char *origin_name(CheckOrigin o);

/// A stabilizer code grown from an original code by appending qubits and checks.
/// The first `original_checks` checks are the original ones, in order, possibly
/// extended onto new qubits.
struct DeformedCode {
    StabilizerCode code;
    size_t original_n = 0;
    size_t original_checks = 0;
    std::vector<CheckOrigin> origin;

    DeformedCode() = default;
    explicit DeformedCode(const StabilizerCode &base);
    static DeformedCode from_css(const CssCode &base) { return DeformedCode(StabilizerCode::from_css(base)); }

    size_t n() const { return code.n; }
    size_t new_qubit_count() const { return code.n - original_n; }
    size_t new_check_count() const { return code.checks.size() - original_checks; }

    /// Appends `count` qubits (identity on every existing check); returns the first new index.
    size_t add_qubits(size_t count);
    size_t add_check(PauliOperator op, CheckOrigin o);
    /// Multiplies check `index` by `extra`, an operator supported on new qubits.
    void extend_check(size_t index, const PauliOperator &extra);
    /// Checks whose origin is in `kinds`.
    std::vector<size_t> checks_of(std::initializer_list<CheckOrigin> kinds) const;
    /// Original checks restricted to original qubits.
    StabilizerCode original() const;
};

class BranchError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One 2-layer sticker: Z checks A_α between attach qubit α, its incident-check
/// qubits e_c and its copy α'; X checks B_c = X(e_c) X(copies in c).
struct Sticker {
    std::optional<size_t> parent;
    size_t level = 0;
    std::vector<size_t> terms;
    std::vector<size_t> attach;
    std::vector<size_t> copies;
    std::vector<size_t> layer1;
    /// Checks that received an X(e_c) extension, parallel to layer1.
    std::vector<size_t> incident_checks;
    std::vector<size_t> z_checks;
    std::vector<size_t> x_checks;

    size_t qubit_count() const { return copies.size() + layer1.size(); }
};

struct BranchLeaf {
    size_t term = 0;
    /// Sticker carrying the leaf, nullopt when the term was left in place.
    std::optional<size_t> sticker;
    /// Representative on the leaf, always Z-type on new qubits (or the input term).
    PauliOperator op;
    /// A checks multiplied into the input term to reach the leaf.
    std::vector<size_t> cert_checks;
};

struct BranchTree {
    GF2Vector root;
    /// Letter of the terms on each qubit of the root union (I elsewhere).
    std::vector<PauliLetter> frame;
    std::vector<Sticker> stickers;
    std::vector<BranchLeaf> leaves;
    size_t depth = 0;
    /// Largest number of incident checks per branched qubit seen while building.
    size_t max_fanout = 0;

    size_t ancilla_qubits() const;
    size_t new_checks() const;
    /// C = 2(f + 1) for the constructive ancilla bound C·t·ω·(⌈log₂ t⌉ + 1).
    size_t cost_constant() const { return 2 * (max_fanout + 1); }
};

struct BranchOptions {
    /// Attach a sticker even when t = 1 (one leaf reached through one sticker).
    bool single_sticker = false;
};

struct BranchResult {
    BranchTree tree;
    DeformedCode deformed;
};

/// Branches `terms` (representatives on the original qubits of `base`) onto disjoint
/// leaves. `base` may already be deformed; stickers are appended to it.
BranchResult build_branch_tree(const DeformedCode &base, const std::vector<PauliOperator> &terms,
                               BranchOptions options = {});
BranchResult build_branch_tree(const CssCode &code, const std::vector<PauliOperator> &terms,
                               BranchOptions options = {});

/// Multiplies each term by its cert checks and compares with the stored leaf.
bool verify_leaf_certificates(const BranchTree &tree, const DeformedCode &deformed,
                              const std::vector<PauliOperator> &terms);
bool leaves_disjoint(const BranchTree &tree);

bool verify_no_new_logicals(const StabilizerCode &original, const DeformedCode &deformed);
bool verify_no_new_logicals(const CssCode &original, const DeformedCode &deformed);

enum class Certification { Pass, Fail, Inconclusive };
const char *certification_name(Certification c);

/// Certified distance >= d, Inconclusive when d exceeds the search cap.
Certification verify_distance_preserved(const DeformedCode &deformed, size_t d, size_t cap);

/// Extends an operator on original qubits with X support on new qubits so it commutes
/// with every deformed check. Allowed support grows one sticker layer at a time.
PauliOperator deform_x_through_tree(const PauliOperator &op, const BranchTree &tree, const DeformedCode &deformed);

}  // namespace qsurgery

#endif
