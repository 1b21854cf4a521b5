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

#include "qsurgery/logical_basis.h"

#include <algorithm>
#include <numeric>

namespace qsurgery {

Uncleanable::Uncleanable(PauliOperator w)
    : std::runtime_error("uncleanable: anticommuting contained logical " + w.str()), witness(std::move(w)) {}

PauliOperator clean(const PauliOperator &op, const std::vector<size_t> &region, const CssCode &code) {
    bool x_type = op.is_x_type();
    if (!x_type && !op.is_z_type()) {
        throw std::invalid_argument("clean: operator must be X-type or Z-type");
    }
    const GF2Matrix &stabs = x_type ? code.hx : code.hz;
    const GF2Vector &support = x_type ? op.x() : op.z();
    GF2Vector target = support.restrict_to(region);
    if (target.none()) {
        return op;
    }
    // greedy: low-weight rows enter the basis first and are used preferentially
    std::vector<size_t> order(stabs.rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return stabs.row(a).weight() < stabs.row(b).weight(); });
    GF2Matrix restricted(0, region.size());
    for (size_t r : order) {
        restricted.append_row(stabs.row(r).restrict_to(region));
    }
    auto combo = row_space_member(restricted, target);
    if (!combo) {
        // ker of the restricted checks contains a vector with odd overlap with target
        GF2Matrix ker = kernel(restricted);
        for (const auto &kv : ker.row_data()) {
            if (kv.dot(target)) {
                GF2Vector full(code.n);
                for (size_t i : kv.support()) {
                    full.set(region[i]);
                }
                throw Uncleanable(x_type ? PauliOperator::z_type(full) : PauliOperator::x_type(full));
            }
        }
        throw std::logic_error("clean: no solution and no witness");
    }
    GF2Vector out = support;
    for (size_t i : combo->support()) {
        out ^= stabs.row(order[i]);
    }
    if (out.restrict_to(region).any()) {
        throw std::logic_error("clean: residual support inside region");
    }
    return x_type ? PauliOperator::x_type(out, op.phase()) : PauliOperator::z_type(out, op.phase());
}

GF2Vector LogicalBasis::z_union(const std::vector<size_t> &subset) const {
    GF2Vector u(n);
    for (size_t i : subset) {
        u |= z_reps.at(i);
    }
    return u;
}

LogicalBasis echelon_basis(const CssCode &code) {
    LogicalBasis b;
    b.n = code.n;
    RrefResult s = rref(code.hz);
    b.m = s.rank;
    b.stabilizer_pivots = s.pivots;
    std::vector<GF2Vector> rows;
    for (const auto &z : logical_operators(code).z) {
        GF2Vector v = z.z();
        // stabilizer rows may be added to logical rows, never the reverse
        for (size_t i = 0; i < s.rank; i++) {
            if (v.get(s.pivots[i])) {
                v ^= s.matrix.row(i);
            }
        }
        rows.push_back(v);
    }
    RrefResult l = rref(GF2Matrix::from_rows(code.n, rows));
    if (l.rank != rows.size()) {
        throw std::logic_error("echelon_basis: logical rows are dependent modulo stabilizers");
    }
    b.logical_pivots = l.pivots;
    for (size_t i = 0; i < l.rank; i++) {
        b.z_reps.push_back(l.matrix.row(i));
    }
    return b;
}

std::vector<GF2Vector> dual_x_reps(const std::vector<GF2Vector> &z_reps, const CssCode &code) {
    auto xs = logical_operators(code).x;
    size_t k = z_reps.size();
    if (xs.size() != k) {
        throw std::invalid_argument("dual_x_reps: representative count does not match k");
    }
    GF2Matrix pairing(k, k);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            pairing.set(i, j, z_reps[i].dot(xs[j].x()));
        }
    }
    auto inv = inverse(pairing.transpose());
    if (!inv) {
        throw std::invalid_argument("dual_x_reps: representatives are not independent logicals");
    }
    std::vector<GF2Vector> out;
    for (size_t j = 0; j < k; j++) {
        GF2Vector w(code.n);
        for (size_t l : inv->row(j).support()) {
            w ^= xs[l].x();
        }
        out.push_back(w);
    }
    return out;
}

LogicalBasis y_compatible_x_reps(LogicalBasis basis, const CssCode &code) {
    auto duals = dual_x_reps(basis.z_reps, code);
    basis.x_reps.clear();
    for (size_t j = 0; j < basis.k(); j++) {
        std::vector<size_t> others;
        for (size_t i = 0; i < basis.k(); i++) {
            if (i != j) {
                others.push_back(i);
            }
        }
        auto region = basis.z_union(others).support();
        PauliOperator w;
        try {
            w = clean(PauliOperator::x_type(duals[j]), region, code);
        } catch (const Uncleanable &e) {
            throw std::logic_error(std::string("y_compatible_x_reps: internal error, ") + e.what());
        }
        basis.x_reps.push_back(w.x());
    }
    return basis;
}

LogicalBasis chosen_basis(const CssCode &code) { return y_compatible_x_reps(echelon_basis(code), code); }

PauliOperator representative_for(const LogicalBasis &basis, size_t index, PauliLetter letter) {
    if (index >= basis.k()) {
        throw std::out_of_range("representative_for: logical index " + std::to_string(index) +
                                " out of range for k = " + std::to_string(basis.k()));
    }
    const GF2Vector &v = basis.z_reps[index];
    switch (letter) {
        case PauliLetter::Z:
            return PauliOperator::z_type(v);
        case PauliLetter::X:
            return PauliOperator::x_type(basis.x_reps.at(index));
        case PauliLetter::Y: {
            const GF2Vector &w = basis.x_reps.at(index);
            // i X(w) Z(v) = i^{1 - |w∧v|} times the letter string
            auto y = static_cast<uint8_t>(w.overlap(v) & 3);
            return PauliOperator(w, v, static_cast<uint8_t>((5 - y) & 3));
        }
        default:
            throw std::invalid_argument("representative_for: identity letter");
    }
}

std::optional<uint64_t> find_contained_logical_violation(const LogicalBasis &basis, const CssCode &code) {
    size_t k = basis.k();
    if (k > 20) {
        throw std::invalid_argument("find_contained_logical_violation: k too large for exhaustive check");
    }
    auto duals = dual_x_reps(basis.z_reps, code);
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); mask++) {
        std::vector<size_t> subset;
        for (size_t i = 0; i < k; i++) {
            if ((mask >> i) & 1) {
                subset.push_back(i);
            }
        }
        auto region = basis.z_union(subset).support();
        GF2Matrix ker = kernel(code.hx.select_columns(region));
        for (size_t j = 0; j < k; j++) {
            if ((mask >> j) & 1) {
                continue;
            }
            GF2Vector wj = duals[j].restrict_to(region);
            for (const auto &kv : ker.row_data()) {
                if (kv.dot(wj)) {
                    return mask;
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<LetterClash> find_letter_clash(const std::vector<PauliOperator> &ops) {
    for (size_t i = 0; i < ops.size(); i++) {
        for (size_t j = i + 1; j < ops.size(); j++) {
            auto common = ops[i].support() & ops[j].support();
            for (size_t q : common.support()) {
                if (ops[i].letter(q) != ops[j].letter(q)) {
                    return LetterClash{q, i, j};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace qsurgery
