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

#include <gtest/gtest.h>

#include <cmath>

#include "qsurgery/logical_basis.h"
#include "test_util.h"

using namespace qsurgery;

namespace {

CssCode hgp_cycles() { return hypergraph_product(cycle_matrix(3), cycle_matrix(3)); }

// v2 times a Z stabilizer that overlaps v1, so the two terms share qubits
std::vector<PauliOperator> forced_overlap_terms(const CssCode &code) {
    auto b = chosen_basis(code);
    GF2Vector v2 = b.z_reps[1];
    for (const auto &row : code.hz.row_data()) {
        if (row.overlap(b.z_reps[0])) {
            v2 ^= row;
            break;
        }
    }
    return {PauliOperator::z_type(b.z_reps[0]), PauliOperator::z_type(v2)};
}

size_t ceil_log2(size_t t) {
    size_t r = 0;
    while ((size_t{1} << r) < t) {
        r++;
    }
    return r;
}

}  // namespace

TEST(branching, single_term_no_tree) {
    auto code = shor_code();
    auto b = chosen_basis(code);
    std::vector<PauliOperator> terms = {PauliOperator::z_type(b.z_reps[0])};
    auto r = build_branch_tree(code, terms);
    EXPECT_TRUE(r.tree.stickers.empty());
    ASSERT_EQ(r.tree.leaves.size(), 1u);
    EXPECT_EQ(r.tree.leaves[0].op, terms[0]);
    EXPECT_EQ(r.deformed.n(), 9u);
    EXPECT_TRUE(verify_leaf_certificates(r.tree, r.deformed, terms));
}

TEST(branching, two_terms_overlapping) {
    auto code = hgp_cycles();
    auto terms = forced_overlap_terms(code);
    ASSERT_TRUE(terms[0].support().overlap(terms[1].support()));
    auto r = build_branch_tree(code, terms);
    EXPECT_EQ(r.tree.depth, 1u);
    EXPECT_EQ(r.tree.stickers.size(), 2u);
    ASSERT_EQ(r.tree.leaves.size(), 2u);
    EXPECT_TRUE(leaves_disjoint(r.tree));
    EXPECT_TRUE(verify_leaf_certificates(r.tree, r.deformed, terms));
    EXPECT_TRUE(verify_no_new_logicals(code, r.deformed));
    EXPECT_EQ(verify_distance_preserved(r.deformed, 3, 8), Certification::Pass);
    // first checks are the originals in order, restricted back
    auto orig = r.deformed.original();
    auto base = StabilizerCode::from_css(code);
    ASSERT_EQ(orig.checks.size(), base.checks.size());
    for (size_t i = 0; i < orig.checks.size(); i++) {
        EXPECT_EQ(orig.checks[i], base.checks[i]);
    }
}

TEST(branching, leaves_are_nontrivial_logicals) {
    auto code = hgp_cycles();
    auto terms = forced_overlap_terms(code);
    auto r = build_branch_tree(code, terms);
    for (const auto &leaf : r.tree.leaves) {
        EXPECT_TRUE(r.deformed.code.commutes_with_all(leaf.op));
        EXPECT_FALSE(r.deformed.code.in_group_up_to_sign(leaf.op));
        // leaf times the padded term is a stabilizer of the deformed code
        EXPECT_TRUE(r.deformed.code.in_group_up_to_sign(leaf.op * terms[leaf.term].padded(r.deformed.n())));
    }
}

TEST(branching, three_terms_depth_two) {
    auto code = direct_sum(hgp_cycles(), shor_code());
    auto b = chosen_basis(code);
    std::vector<PauliOperator> terms;
    for (size_t i = 0; i < 3; i++) {
        terms.push_back(representative_for(b, i, PauliLetter::Z));
    }
    auto r = build_branch_tree(code, terms);
    EXPECT_EQ(r.tree.depth, 2u);
    EXPECT_EQ(r.tree.stickers.size(), 4u);
    EXPECT_TRUE(leaves_disjoint(r.tree));
    EXPECT_TRUE(verify_leaf_certificates(r.tree, r.deformed, terms));
    EXPECT_TRUE(verify_no_new_logicals(code, r.deformed));
    for (const auto &leaf : r.tree.leaves) {
        ASSERT_TRUE(leaf.sticker);
        EXPECT_EQ(leaf.op.weight(), terms[leaf.term].weight());
    }
}

TEST(branching, corrupted_tree_rejected) {
    auto code = hgp_cycles();
    auto terms = forced_overlap_terms(code);
    auto r = build_branch_tree(code, terms);
    auto bad_tree = r.tree;
    bad_tree.leaves[0].cert_checks.pop_back();
    EXPECT_FALSE(verify_leaf_certificates(bad_tree, r.deformed, terms));
    auto bad_code = r.deformed;
    size_t a = r.tree.stickers[0].z_checks[0];
    bad_code.code.checks[a] *= PauliOperator::single(bad_code.n(), r.tree.stickers[0].copies[0], PauliLetter::Z);
    EXPECT_FALSE(verify_leaf_certificates(r.tree, bad_code, terms));
    auto overlapping = r.tree;
    overlapping.leaves[1].op = overlapping.leaves[0].op;
    EXPECT_FALSE(leaves_disjoint(overlapping));
    // an extra check that kills a logical
    auto fewer = r.deformed;
    fewer.add_check(r.tree.leaves[0].op, CheckOrigin::BranchZ);
    EXPECT_FALSE(verify_no_new_logicals(code, fewer));
}

TEST(branching, shor_single_sticker_distance) {
    auto code = shor_code();
    auto b = chosen_basis(code);
    std::vector<PauliOperator> terms = {PauliOperator::z_type(b.z_reps[0])};
    auto r = build_branch_tree(code, terms, {.single_sticker = true});
    EXPECT_EQ(r.tree.stickers.size(), 1u);
    EXPECT_TRUE(verify_leaf_certificates(r.tree, r.deformed, terms));
    EXPECT_TRUE(verify_no_new_logicals(code, r.deformed));
    EXPECT_EQ(verify_distance_preserved(r.deformed, 3, 8), Certification::Pass);
    EXPECT_EQ(verify_distance_preserved(r.deformed, 4, 2), Certification::Inconclusive);
}

TEST(branching, mixed_letters_commute) {
    auto code = direct_sum(hgp_cycles(), shor_code());
    auto b = chosen_basis(code);
    std::vector<PauliOperator> terms = {representative_for(b, 0, PauliLetter::X),
                                        representative_for(b, 1, PauliLetter::Y),
                                        representative_for(b, 2, PauliLetter::Z)};
    auto r = build_branch_tree(code, terms);
    EXPECT_NO_THROW(r.deformed.code.check_commuting());
    EXPECT_TRUE(verify_leaf_certificates(r.tree, r.deformed, terms));
    EXPECT_TRUE(leaves_disjoint(r.tree));
    EXPECT_TRUE(verify_no_new_logicals(code, r.deformed));
    for (const auto &leaf : r.tree.leaves) {
        EXPECT_TRUE(leaf.op.is_z_type());
    }
}

TEST(branching, mixed_y_overlapping_y) {
    auto code = hgp_cycles();
    auto b = chosen_basis(code);
    std::vector<PauliOperator> terms = {representative_for(b, 0, PauliLetter::Y),
                                        representative_for(b, 1, PauliLetter::Y)};
    auto r = build_branch_tree(code, terms);
    EXPECT_NO_THROW(r.deformed.code.check_commuting());
    EXPECT_TRUE(verify_leaf_certificates(r.tree, r.deformed, terms));
    EXPECT_TRUE(verify_no_new_logicals(code, r.deformed));
}

TEST(branching, incompatible_terms_rejected) {
    auto code = hgp_cycles();
    auto b = chosen_basis(code);
    auto z0 = representative_for(b, 0, PauliLetter::Z);
    auto x0 = representative_for(b, 0, PauliLetter::X);
    try {
        build_branch_tree(code, {z0, x0});
        FAIL();
    } catch (const BranchError &e) {
        EXPECT_NE(std::string(e.what()).find("qubit"), std::string::npos);
    }
}

TEST(branching, cost_bound) {
    auto code = direct_sum(direct_sum(hgp_cycles(), shor_code()), hgp_cycles());
    auto b = chosen_basis(code);
    for (size_t t = 2; t <= b.k(); t++) {
        std::vector<PauliOperator> terms;
        size_t omega = 0;
        for (size_t i = 0; i < t; i++) {
            terms.push_back(representative_for(b, i, PauliLetter::Z));
            omega = std::max(omega, terms.back().weight());
        }
        auto r = build_branch_tree(code, terms);
        EXPECT_EQ(r.tree.stickers.size(), 2 * t - 2);
        EXPECT_LE(r.tree.ancilla_qubits(), r.tree.cost_constant() * t * omega * (ceil_log2(t) + 1));
        EXPECT_TRUE(verify_no_new_logicals(code, r.deformed));
    }
}

TEST(branching, deform_x_unmeasured_logical) {
    auto code = direct_sum(hgp_cycles(), shor_code());
    auto b = echelon_basis(code);
    auto duals = dual_x_reps(b.z_reps, code);
    std::vector<PauliOperator> terms = {PauliOperator::z_type(b.z_reps[0]), PauliOperator::z_type(b.z_reps[1])};
    auto r = build_branch_tree(code, terms);
    // X of the unmeasured Shor logical, uncleaned, may touch the branched support
    auto op = PauliOperator::x_type(duals[2]);
    auto ext = deform_x_through_tree(op, r.tree, r.deformed);
    EXPECT_TRUE(r.deformed.code.commutes_with_all(ext));
    std::vector<size_t> layer1;
    for (const auto &s : r.tree.stickers) {
        if (s.level == 1) {
            layer1.insert(layer1.end(), s.layer1.begin(), s.layer1.end());
        }
    }
    for (size_t q : ext.x().support()) {
        if (q >= code.n) {
            EXPECT_NE(std::find(layer1.begin(), layer1.end(), q), layer1.end());
        }
    }
    EXPECT_THROW(deform_x_through_tree(PauliOperator::single(code.n, 0, PauliLetter::Z), r.tree, r.deformed),
                 BranchError);
}

TEST(branching, random_codes_invariants) {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 12) {
        auto code = random_css_code(rng, 10 + rng() % 5, 3, 3);
        size_t k = code.k();
        if (k < 2 || k > 4) {
            continue;
        }
        done++;
        auto b = chosen_basis(code);
        std::vector<PauliOperator> terms;
        for (size_t i = 0; i < k; i++) {
            terms.push_back(representative_for(b, i, PauliLetter::Z));
        }
        auto r = build_branch_tree(code, terms);
        EXPECT_EQ(r.tree.stickers.size(), 2 * k - 2);
        EXPECT_TRUE(verify_leaf_certificates(r.tree, r.deformed, terms));
        EXPECT_TRUE(leaves_disjoint(r.tree));
        EXPECT_TRUE(verify_no_new_logicals(code, r.deformed));
    }
}
