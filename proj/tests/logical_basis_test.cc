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

#include <gtest/gtest.h>

#include <numeric>

#include "test_util.h"

using namespace qsurgery;

namespace {

/// Enumerates every Z operator supported inside `region`, returning true if one
/// commutes with H_X yet anticommutes with some dual outside the subset.
bool brute_contained_violation(const CssCode &code, const GF2Vector &region_vec,
                               const std::vector<GF2Vector> &duals, uint64_t mask) {
    auto region = region_vec.support();
    for (uint64_t bits = 1; bits < (uint64_t{1} << region.size()); bits++) {
        GF2Vector z(code.n);
        for (size_t i = 0; i < region.size(); i++) {
            z.set(region[i], (bits >> i) & 1);
        }
        if (code.hx.apply(z).any()) {
            continue;
        }
        for (size_t j = 0; j < duals.size(); j++) {
            if (!((mask >> j) & 1) && z.dot(duals[j])) {
                return true;
            }
        }
    }
    return false;
}

CssCode hgp_cycles() { return hypergraph_product(cycle_matrix(3), cycle_matrix(3)); }

}  // namespace

TEST(logical_basis, clean_already_disjoint) {
    auto code = shor_code();
    auto op = PauliOperator::from_string("XXXIIIIII");
    EXPECT_EQ(clean(op, {4, 5}, code), op);
}

TEST(logical_basis, clean_shor_against_enumeration) {
    auto code = shor_code();
    auto xbar = PauliOperator::from_string("XXXIIIIII");
    std::vector<size_t> region = {0, 3};
    auto cleaned = clean(xbar, region, code);
    for (size_t q : region) {
        EXPECT_FALSE(cleaned.x().get(q));
    }
    // oracle: enumerate all 2^2 stabilizer products and collect the disjoint results
    bool found = false;
    for (int bits = 0; bits < 4; bits++) {
        GF2Vector s = xbar.x();
        for (int r = 0; r < 2; r++) {
            if ((bits >> r) & 1) {
                s ^= code.hx.row(r);
            }
        }
        if (!s.get(0) && !s.get(3)) {
            found = true;
            EXPECT_EQ(s, cleaned.x());
        }
    }
    EXPECT_TRUE(found);
    EXPECT_TRUE(row_space_member(code.hx, cleaned.x() ^ xbar.x()));
}

TEST(logical_basis, clean_rejects_anticommuting_region) {
    auto code = shor_code();
    auto zbar = logical_operators(code).z[0];
    auto region = zbar.z().support();
    auto xbar = logical_operators(code).x[0];
    try {
        clean(xbar, region, code);
        FAIL();
    } catch (const Uncleanable &e) {
        EXPECT_TRUE(e.witness.is_z_type());
        EXPECT_FALSE(e.witness.commutes(xbar));
        EXPECT_TRUE(code.hx.apply(e.witness.z()).none());
    }
}

TEST(logical_basis, echelon_shor) {
    auto b = echelon_basis(shor_code());
    ASSERT_EQ(b.k(), 1u);
    EXPECT_EQ(b.m, 6u);
    EXPECT_LE(b.z_reps[0].weight(), 9u - 6 - 1 + 1);
    EXPECT_FALSE(find_contained_logical_violation(b, shor_code()));
}

TEST(logical_basis, echelon_hgp_exhaustive) {
    auto code = hgp_cycles();
    auto b = echelon_basis(code);
    ASSERT_EQ(b.k(), 2u);
    EXPECT_FALSE(find_contained_logical_violation(b, code));
    auto duals = dual_x_reps(b.z_reps, code);
    for (uint64_t mask = 0; mask < 4; mask++) {
        std::vector<size_t> subset;
        for (size_t i = 0; i < 2; i++) {
            if ((mask >> i) & 1) {
                subset.push_back(i);
            }
        }
        EXPECT_FALSE(brute_contained_violation(code, b.z_union(subset), duals, mask));
    }
}

TEST(logical_basis, echelon_structure_random) {
    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 20) {
        auto code = random_css_code(rng, 8 + rng() % 7, 3, 3);
        size_t k = code.k();
        if (k == 0 || k > 4) {
            continue;
        }
        done++;
        auto b = echelon_basis(code);
        ASSERT_EQ(b.k(), k);
        for (size_t i = 0; i < k; i++) {
            EXPECT_LE(b.z_reps[i].weight(), code.n - b.m - k + 1);
            // pivot of v_i is absent from every other representative and every stabilizer pivot
            EXPECT_TRUE(b.z_reps[i].get(b.logical_pivots[i]));
            for (size_t j = 0; j < k; j++) {
                if (j != i) {
                    EXPECT_FALSE(b.z_reps[j].get(b.logical_pivots[i]));
                }
            }
            for (size_t p : b.stabilizer_pivots) {
                EXPECT_FALSE(b.z_reps[i].get(p));
            }
        }
        EXPECT_FALSE(find_contained_logical_violation(b, code));
    }
}

TEST(logical_basis, y_compatible_shor) {
    auto code = shor_code();
    auto b = chosen_basis(code);
    ASSERT_EQ(b.x_reps.size(), 1u);
    EXPECT_EQ(b.x_reps[0].overlap(b.z_reps[0]) % 2, 1u);
}

TEST(logical_basis, y_compatible_hgp) {
    auto code = hgp_cycles();
    auto b = chosen_basis(code);
    auto stab = StabilizerCode::from_css(code);
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 2; j++) {
            EXPECT_EQ(b.x_reps[i].dot(b.z_reps[j]), i == j);
            if (i != j) {
                EXPECT_EQ(b.x_reps[i].overlap(b.z_reps[j]), 0u);
            }
        }
        EXPECT_TRUE(stab.commutes_with_all(PauliOperator::x_type(b.x_reps[i])));
    }
}

TEST(logical_basis, y_compatible_random_unions) {
    std::mt19937_64 rng(41);
    int done = 0;
    while (done < 15) {
        auto code = random_css_code(rng, 8 + rng() % 7, 3, 3);
        if (code.k() < 2 || code.k() > 4) {
            continue;
        }
        done++;
        auto b = chosen_basis(code);
        auto duals = dual_x_reps(b.z_reps, code);
        for (size_t j = 0; j < b.k(); j++) {
            GF2Vector v_all = b.z_union([&] {
                std::vector<size_t> all(b.k());
                std::iota(all.begin(), all.end(), 0);
                return all;
            }());
            // w_j meets the full union only inside v_j
            EXPECT_EQ(b.x_reps[j] & v_all, b.x_reps[j] & b.z_reps[j]);
            EXPECT_TRUE(row_space_member(code.hx, b.x_reps[j] ^ duals[j]));
        }
    }
}

TEST(logical_basis, representatives_shor) {
    auto b = chosen_basis(shor_code());
    EXPECT_EQ(representative_for(b, 0, PauliLetter::Z), PauliOperator::z_type(b.z_reps[0]));
    auto y = representative_for(b, 0, PauliLetter::Y);
    const auto &w = b.x_reps[0], &v = b.z_reps[0];
    for (size_t q = 0; q < 9; q++) {
        PauliLetter expect = w.get(q) && v.get(q)   ? PauliLetter::Y
                             : w.get(q)             ? PauliLetter::X
                             : v.get(q)             ? PauliLetter::Z
                                                    : PauliLetter::I;
        EXPECT_EQ(y.letter(q), expect);
    }
    EXPECT_TRUE(y.is_hermitian());
    // i X(w) Z(v) computed by multiplication
    auto prod = PauliOperator::x_type(w) * PauliOperator::z_type(v);
    prod.set_phase(prod.phase() + 1);
    EXPECT_EQ(prod, y);
    EXPECT_THROW(representative_for(b, 1, PauliLetter::Z), std::out_of_range);
}

TEST(logical_basis, representatives_compatible) {
    auto code = direct_sum(hgp_cycles(), shor_code());
    auto b = chosen_basis(code);
    ASSERT_EQ(b.k(), 3u);
    const PauliLetter letters[] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
    for (PauliLetter a : letters) {
        for (PauliLetter c : letters) {
            for (PauliLetter e : letters) {
                std::vector<PauliOperator> ops = {representative_for(b, 0, a), representative_for(b, 1, c),
                                                  representative_for(b, 2, e)};
                EXPECT_FALSE(find_letter_clash(ops));
            }
        }
    }
}
