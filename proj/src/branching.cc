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

#include "qsurgery/branching.h"

#include <algorithm>
#include <map>

#include "qsurgery/logical_basis.h"

namespace qsurgery {

const char *origin_name(CheckOrigin o) {
    switch (o) {
        case CheckOrigin::Original:
            return "original";
        case CheckOrigin::Deformed:
            return "deformed";
        case CheckOrigin::BranchZ:
            return "branch-z";
        case CheckOrigin::BranchX:
            return "branch-x";
        case CheckOrigin::GaugeVertex:
            return "gauge-vertex";
        case CheckOrigin::GaugeFace:
            return "gauge-face";
    }
    return "?";
}

const char *certification_name(Certification c) {
    switch (c) {
        case Certification::Pass:
            return "pass";
        case Certification::Fail:
            return "fail";
        case Certification::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

DeformedCode::DeformedCode(const StabilizerCode &base)
    : code(base),
      original_n(base.n),
      original_checks(base.checks.size()),
      origin(base.checks.size(), CheckOrigin::Original) {}

size_t DeformedCode::add_qubits(size_t count) {
    size_t first = code.n;
    code.n += count;
    for (auto &c : code.checks) {
        c = c.padded(code.n);
    }
    return first;
}

size_t DeformedCode::add_check(PauliOperator op, CheckOrigin o) {
    if (op.n() != code.n) {
        op = op.padded(code.n);
    }
    code.checks.push_back(std::move(op));
    origin.push_back(o);
    return code.checks.size() - 1;
}

void DeformedCode::extend_check(size_t index, const PauliOperator &extra) {
    code.checks.at(index) *= extra.n() == code.n ? extra : extra.padded(code.n);
    if (origin[index] == CheckOrigin::Original) {
        origin[index] = CheckOrigin::Deformed;
    }
}

std::vector<size_t> DeformedCode::checks_of(std::initializer_list<CheckOrigin> kinds) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < origin.size(); i++) {
        if (std::find(kinds.begin(), kinds.end(), origin[i]) != kinds.end()) {
            out.push_back(i);
        }
    }
    return out;
}

StabilizerCode DeformedCode::original() const {
    std::vector<size_t> qubits(original_n);
    for (size_t q = 0; q < original_n; q++) {
        qubits[q] = q;
    }
    std::vector<PauliOperator> checks;
    for (size_t j = 0; j < original_checks; j++) {
        checks.push_back(code.checks[j].restrict_to(qubits));
    }
    return StabilizerCode(original_n, std::move(checks));
}

size_t BranchTree::ancilla_qubits() const {
    size_t total = 0;
    for (const auto &s : stickers) {
        total += s.qubit_count();
    }
    return total;
}

size_t BranchTree::new_checks() const {
    size_t total = 0;
    for (const auto &s : stickers) {
        total += s.z_checks.size() + s.x_checks.size();
    }
    return total;
}

namespace {

bool letters_anticommute(PauliLetter a, PauliLetter b) {
    auto x = static_cast<uint8_t>(a), y = static_cast<uint8_t>(b);
    // symplectic form on one qubit: x_a z_b + z_a x_b
    return (((x & 1) & (y >> 1)) ^ ((x >> 1) & (y & 1))) != 0;
}

class TreeBuilder {
   public:
    TreeBuilder(DeformedCode &code, BranchTree &tree, const std::vector<PauliOperator> &terms)
        : code_(code), tree_(tree), terms_(terms) {}

    /// Attaches one sticker to `attach` (letters give the local term basis).
    size_t attach(const std::vector<size_t> &attach, const std::vector<PauliLetter> &letters,
                  std::optional<size_t> parent, size_t level, const std::vector<size_t> &terms) {
        Sticker s;
        s.parent = parent;
        s.level = level;
        s.terms = terms;
        s.attach = attach;
        // incidence: check letter anticommutes with the term letter on an attach qubit
        std::vector<std::vector<size_t>> incident_at(attach.size());
        for (size_t j = 0; j < code_.code.checks.size(); j++) {
            const auto &c = code_.code.checks[j];
            bool any = false;
            for (size_t a = 0; a < attach.size(); a++) {
                if (letters_anticommute(c.letter(attach[a]), letters[a])) {
                    incident_at[a].push_back(s.incident_checks.size());
                    any = true;
                }
            }
            if (any) {
                s.incident_checks.push_back(j);
            }
        }
        for (const auto &list : incident_at) {
            tree_.max_fanout = std::max(tree_.max_fanout, list.size());
        }
        size_t first = code_.add_qubits(s.incident_checks.size() + attach.size());
        for (size_t i = 0; i < s.incident_checks.size(); i++) {
            s.layer1.push_back(first + i);
        }
        for (size_t a = 0; a < attach.size(); a++) {
            s.copies.push_back(first + s.incident_checks.size() + a);
        }
        size_t n = code_.n();
        for (size_t i = 0; i < s.incident_checks.size(); i++) {
            code_.extend_check(s.incident_checks[i], PauliOperator::single(n, s.layer1[i], PauliLetter::X));
        }
        std::vector<GF2Vector> b_support(s.incident_checks.size(), GF2Vector(n));
        for (size_t i = 0; i < s.incident_checks.size(); i++) {
            b_support[i].set(s.layer1[i]);
        }
        for (size_t a = 0; a < attach.size(); a++) {
            PauliOperator op(n);
            op.set_letter(attach[a], letters[a]);
            for (size_t i : incident_at[a]) {
                op.set_letter(s.layer1[i], PauliLetter::Z);
                b_support[i].set(s.copies[a]);
            }
            op.set_letter(s.copies[a], PauliLetter::Z);
            s.z_checks.push_back(code_.add_check(std::move(op), CheckOrigin::BranchZ));
        }
        for (const auto &b : b_support) {
            s.x_checks.push_back(code_.add_check(PauliOperator::x_type(b), CheckOrigin::BranchX));
        }
        tree_.depth = std::max(tree_.depth, level);
        tree_.stickers.push_back(std::move(s));
        return tree_.stickers.size() - 1;
    }

    /// Branches a group of terms whose current supports live on `supports`.
    void grow(const std::vector<size_t> &group, std::map<size_t, std::vector<size_t>> supports,
              std::map<size_t, std::vector<size_t>> certs, std::optional<size_t> parent, size_t level,
              bool force_sticker) {
        if (group.size() == 1 && !force_sticker) {
            finish_leaf(group[0], supports[group[0]], certs[group[0]], parent);
            return;
        }
        std::vector<std::vector<size_t>> halves;
        if (group.size() == 1) {
            halves.push_back(group);
        } else {
            size_t cut = (group.size() + 1) / 2;
            halves.emplace_back(group.begin(), group.begin() + cut);
            halves.emplace_back(group.begin() + cut, group.end());
        }
        for (const auto &half : halves) {
            std::vector<size_t> attach_set;
            for (size_t t : half) {
                attach_set.insert(attach_set.end(), supports[t].begin(), supports[t].end());
            }
            std::sort(attach_set.begin(), attach_set.end());
            attach_set.erase(std::unique(attach_set.begin(), attach_set.end()), attach_set.end());
            std::vector<PauliLetter> letters;
            for (size_t q : attach_set) {
                letters.push_back(parent ? PauliLetter::Z : tree_.frame[q]);
            }
            size_t sid = attach(attach_set, letters, parent, level + 1, half);
            const Sticker &s = tree_.stickers[sid];
            std::map<size_t, std::vector<size_t>> next_support, next_cert;
            for (size_t t : half) {
                auto &cert = next_cert[t] = certs[t];
                for (size_t q : supports[t]) {
                    size_t a = std::lower_bound(s.attach.begin(), s.attach.end(), q) - s.attach.begin();
                    next_support[t].push_back(s.copies[a]);
                    cert.push_back(s.z_checks[a]);
                }
                std::sort(next_support[t].begin(), next_support[t].end());
            }
            grow(half, next_support, next_cert, sid, level + 1, false);
        }
    }

   private:
    void finish_leaf(size_t term, const std::vector<size_t> &support, const std::vector<size_t> &cert,
                     std::optional<size_t> sticker) {
        BranchLeaf leaf;
        leaf.term = term;
        leaf.sticker = sticker;
        leaf.cert_checks = cert;
        PauliOperator op = terms_[term].padded(code_.n());
        for (size_t j : cert) {
            op *= code_.code.checks[j];
        }
        if (sticker) {
            GF2Vector expect(code_.n());
            for (size_t q : support) {
                expect.set(q);
            }
            if (!op.is_z_type() || op.z() != expect) {
                throw std::logic_error("build_branch_tree: leaf certificate does not reach the leaf");
            }
        }
        leaf.op = op;
        tree_.leaves.push_back(std::move(leaf));
    }

    DeformedCode &code_;
    BranchTree &tree_;
    const std::vector<PauliOperator> &terms_;
};

}  // namespace

BranchResult build_branch_tree(const DeformedCode &base, const std::vector<PauliOperator> &terms,
                               BranchOptions options) {
    BranchResult result;
    result.deformed = base;
    size_t n = base.n();
    std::vector<PauliOperator> padded;
    for (size_t i = 0; i < terms.size(); i++) {
        if (terms[i].n() > n) {
            throw BranchError("term " + std::to_string(i) + " acts on more qubits than the code");
        }
        if (terms[i].is_identity()) {
            throw BranchError("term " + std::to_string(i) + " is the identity");
        }
        if (!terms[i].is_hermitian()) {
            throw BranchError("term " + std::to_string(i) + " is not Hermitian");
        }
        padded.push_back(terms[i].padded(n));
    }
    if (auto clash = find_letter_clash(padded)) {
        throw BranchError("incompatible representatives: terms " + std::to_string(clash->first) + " and " +
                          std::to_string(clash->second) + " act differently on qubit " +
                          std::to_string(clash->qubit));
    }
    BranchTree &tree = result.tree;
    tree.root = GF2Vector(n);
    tree.frame.assign(n, PauliLetter::I);
    std::map<size_t, std::vector<size_t>> supports, certs;
    std::vector<size_t> group;
    for (size_t i = 0; i < padded.size(); i++) {
        tree.root |= padded[i].support();
        for (size_t q : padded[i].support().support()) {
            tree.frame[q] = padded[i].letter(q);
        }
        supports[i] = padded[i].support().support();
        certs[i] = {};
        group.push_back(i);
    }
    if (group.empty()) {
        return result;
    }
    TreeBuilder builder(result.deformed, tree, padded);
    builder.grow(group, supports, certs, std::nullopt, 0, options.single_sticker);
    std::sort(tree.leaves.begin(), tree.leaves.end(),
              [](const BranchLeaf &a, const BranchLeaf &b) { return a.term < b.term; });
    // terms were built on the pre-branch register; leaf ops are padded to the final one
    for (auto &leaf : tree.leaves) {
        leaf.op = leaf.op.padded(result.deformed.n());
    }
    return result;
}

BranchResult build_branch_tree(const CssCode &code, const std::vector<PauliOperator> &terms, BranchOptions options) {
    return build_branch_tree(DeformedCode::from_css(code), terms, options);
}

bool verify_leaf_certificates(const BranchTree &tree, const DeformedCode &deformed,
                              const std::vector<PauliOperator> &terms) {
    for (const auto &leaf : tree.leaves) {
        PauliOperator op = terms.at(leaf.term).padded(deformed.n());
        for (size_t j : leaf.cert_checks) {
            op *= deformed.code.checks.at(j);
        }
        if (!(op == leaf.op)) {
            return false;
        }
        if (leaf.sticker) {
            if (!op.is_z_type()) {
                return false;
            }
            for (size_t q : op.z().support()) {
                if (q < deformed.original_n) {
                    return false;
                }
            }
        }
        if (!deformed.code.commutes_with_all(op)) {
            return false;
        }
    }
    return true;
}

bool leaves_disjoint(const BranchTree &tree) {
    for (size_t i = 0; i < tree.leaves.size(); i++) {
        for (size_t j = i + 1; j < tree.leaves.size(); j++) {
            if (tree.leaves[i].op.support().overlap(tree.leaves[j].op.support())) {
                return false;
            }
        }
    }
    return true;
}

bool verify_no_new_logicals(const StabilizerCode &original, const DeformedCode &deformed) {
    try {
        deformed.code.check_commuting();
    } catch (const CommutationViolation &) {
        return false;
    }
    return deformed.code.k() == original.k();
}

bool verify_no_new_logicals(const CssCode &original, const DeformedCode &deformed) {
    return verify_no_new_logicals(StabilizerCode::from_css(original), deformed);
}

Certification verify_distance_preserved(const DeformedCode &deformed, size_t d, size_t cap) {
    if (d == 0) {
        return Certification::Pass;
    }
    if (d - 1 > cap || d - 1 > kMaxExhaustiveCap) {
        return Certification::Inconclusive;
    }
    if (d == 1) {
        return Certification::Pass;
    }
    auto r = distance(deformed.code, d - 1);
    return r.d ? Certification::Fail : Certification::Pass;
}

PauliOperator deform_x_through_tree(const PauliOperator &op, const BranchTree &tree, const DeformedCode &deformed) {
    size_t n = deformed.n();
    PauliOperator base = op.padded(n);
    const auto &checks = deformed.code.checks;
    GF2Vector rhs(checks.size());
    for (size_t j = 0; j < checks.size(); j++) {
        rhs.set(j, !checks[j].commutes(base));
    }
    std::vector<size_t> allowed;
    for (size_t level = 1; level <= tree.depth; level++) {
        for (int layer = 0; layer < 2; layer++) {
            for (const auto &s : tree.stickers) {
                if (s.level == level) {
                    const auto &qs = layer == 0 ? s.layer1 : s.copies;
                    allowed.insert(allowed.end(), qs.begin(), qs.end());
                }
            }
            // X on q anticommutes with checks carrying Z or Y there
            GF2Matrix m(checks.size(), allowed.size());
            for (size_t j = 0; j < checks.size(); j++) {
                for (size_t v = 0; v < allowed.size(); v++) {
                    m.set(j, v, checks[j].z().get(allowed[v]));
                }
            }
            if (auto f = solve(m, rhs)) {
                PauliOperator out = base;
                for (size_t v : f->support()) {
                    out *= PauliOperator::single(n, allowed[v], PauliLetter::X);
                }
                return out;
            }
        }
    }
    if (rhs.none()) {
        return base;
    }
    for (size_t j = 0; j < checks.size(); j++) {
        if (rhs.get(j) && j < deformed.original_checks) {
            throw BranchError("deform_x_through_tree: operator anticommutes with original check " +
                              std::to_string(j));
        }
    }
    throw BranchError("deform_x_through_tree: no extension found");
}

}  // namespace qsurgery
