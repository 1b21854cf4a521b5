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

#include "qsurgery/css_code.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace qsurgery;

TEST(css_code, shor_validate) {
    auto r = validate(shor_code());
    EXPECT_EQ(r.n, 9u);
    EXPECT_EQ(r.k, 1u);
    EXPECT_EQ(r.audit.max_check_weight, 6u);
    EXPECT_TRUE(r.audit.passes());
}

TEST(css_code, two_shor_blocks) { EXPECT_EQ(validate(direct_sum(shor_code(), shor_code())).k, 2u); }

TEST(css_code, violation_names_pair) {
    CssCode bad(GF2Matrix{{1, 1}, {1, 0}}, GF2Matrix{{1, 1}, {0, 1}});
    try {
        validate(bad);
        FAIL();
    } catch (const CssViolation &e) {
        EXPECT_EQ(e.x_check, 0u);
        EXPECT_EQ(e.z_check, 1u);
    }
    EXPECT_THROW(validate(CssCode(GF2Matrix{{1, 0}}, GF2Matrix{{1, 1}})), CssViolation);
}

TEST(css_code, shor_logicals) {
    auto code = shor_code();
    auto l = logical_operators(code);
    ASSERT_EQ(l.k(), 1u);
    EXPECT_FALSE(l.z[0].commutes(l.x[0]));
    auto stab = StabilizerCode::from_css(code);
    EXPECT_TRUE(stab.commutes_with_all(l.z[0]));
    EXPECT_TRUE(stab.commutes_with_all(l.x[0]));
    EXPECT_FALSE(stab.in_group_up_to_sign(l.z[0]));
    EXPECT_GE(l.z[0].weight(), 3u);
    EXPECT_GE(l.x[0].weight(), 3u);
}

TEST(css_code, full_rank_has_no_logicals) {
    CssCode code(GF2Matrix(0, 2), GF2Matrix::identity(2));
    EXPECT_EQ(logical_operators(code).k(), 0u);
    EXPECT_TRUE(distance(code, 3).no_logicals);
}

TEST(css_code, pairing_is_identity_random) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; trial++) {
        auto code = random_css_code(rng, 10, 3, 3);
        validate(code);
        auto l = logical_operators(code);
        ASSERT_EQ(l.k(), code.k());
        for (size_t i = 0; i < l.k(); i++) {
            for (size_t j = 0; j < l.k(); j++) {
                EXPECT_EQ(l.z[i].commutes(l.x[j]), i != j);
            }
        }
        // symplectic rank of checks + logicals regenerates k
        auto stab = StabilizerCode::from_css(code);
        std::vector<PauliOperator> all = stab.checks;
        all.insert(all.end(), l.z.begin(), l.z.end());
        all.insert(all.end(), l.x.begin(), l.x.end());
        EXPECT_EQ(rank(symplectic_matrix(all, code.n)), stab.rank() + 2 * l.k());
    }
}

TEST(css_code, shor_distance) {
    auto d = distance(shor_code(), 4);
    ASSERT_TRUE(d.d);
    EXPECT_EQ(*d.d, 3u);
    auto sd = distance(StabilizerCode::from_css(shor_code()), 4);
    ASSERT_TRUE(sd.d);
    EXPECT_EQ(*sd.d, 3u);
}

TEST(css_code, repetition_distances) {
    CssCode code(GF2Matrix(0, 3), GF2Matrix{{1, 1, 0}, {0, 1, 1}});
    auto d = distance(code, 4);
    EXPECT_EQ(d.z_distance, std::optional<size_t>(1));
    EXPECT_EQ(d.x_distance, std::optional<size_t>(3));
    EXPECT_EQ(d.d, std::optional<size_t>(1));
}

TEST(css_code, hypergraph_product_cycles) {
    auto code = hypergraph_product(cycle_matrix(3), cycle_matrix(3));
    auto r = validate(code);
    EXPECT_EQ(r.n, 18u);
    EXPECT_EQ(r.k, 2u);
    auto d = distance(code, 4);
    EXPECT_EQ(d.d, std::optional<size_t>(3));
    // exhaustive oracle over all 2^18 supports
    EXPECT_EQ(brute_css_distance(code.hx, code.hz), std::optional<size_t>(3));
    EXPECT_EQ(brute_css_distance(code.hz, code.hx), std::optional<size_t>(3));
}

TEST(css_code, hypergraph_product_small) {
    GF2Matrix a{{1, 1}};
    auto code = hypergraph_product(a, a);
    EXPECT_EQ(code.n, 5u);
    validate(code);
    // a column check matrix gives the 2-layer sticker shape
    GF2Matrix col{{1}, {1}};
    auto sticker = hypergraph_product(repetition_matrix(3), col);
    validate(sticker);
    EXPECT_EQ(sticker.n, 3u * 1 + 2u * 2);
}

TEST(css_code, hypergraph_product_always_valid) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 40; trial++) {
        auto a = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 0.5);
        auto b = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 0.5);
        auto code = hypergraph_product(a, b);
        EXPECT_NO_THROW(validate(code));
        EXPECT_EQ(code.n, a.cols() * b.cols() + a.rows() * b.rows());
    }
}

TEST(css_code, direct_sum_distance_is_min) {
    std::mt19937_64 rng(12);
    int checked = 0;
    while (checked < 10) {
        auto a = random_css_code(rng, 6, 2, 2);
        auto b = random_css_code(rng, 7, 2, 2);
        if (a.k() == 0 || b.k() == 0) {
            continue;
        }
        checked++;
        auto da = distance(a, 7), db = distance(b, 7);
        auto ds = distance(direct_sum(a, b), 7);
        ASSERT_TRUE(da.d && db.d && ds.d);
        EXPECT_EQ(*ds.d, std::min(*da.d, *db.d));
        // exhaustive oracle on component a
        auto bz = brute_css_distance(a.hx, a.hz), bx = brute_css_distance(a.hz, a.hx);
        EXPECT_EQ(*da.d, std::min(*bz, *bx));
    }
}

TEST(css_code, stabilizer_distance_matches_css) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; trial++) {
        auto code = random_css_code(rng, 7, 2, 2);
        if (code.k() == 0) {
            continue;
        }
        EXPECT_EQ(distance(code, 7).d, distance(StabilizerCode::from_css(code), 7).d);
    }
}

TEST(css_code, cap_limits) {
    EXPECT_THROW(distance(shor_code(), kMaxExhaustiveCap + 1), std::invalid_argument);
    auto d = distance(shor_code(), 2);
    EXPECT_TRUE(d.exceeds_cap());
    EXPECT_TRUE(d.at_least(3));
    EXPECT_FALSE(d.at_least(4));
}

TEST(css_code, tanner_graph_shor) {
    auto g = tanner_graph(shor_code());
    EXPECT_EQ(g.qubits, 9u);
    EXPECT_EQ(g.count(CheckType::X), 2u);
    EXPECT_EQ(g.count(CheckType::Z), 6u);
    auto back = css_from_tanner(g);
    EXPECT_EQ(back.hx, shor_code().hx);
    EXPECT_EQ(back.hz, shor_code().hz);
}

TEST(css_code, tanner_graph_empty_and_random) {
    auto g = tanner_graph(CssCode());
    EXPECT_EQ(g.qubits, 0u);
    EXPECT_TRUE(g.checks.empty());
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; trial++) {
        auto code = random_css_code(rng, 12, 4, 4);
        auto back = css_from_tanner(tanner_graph(code));
        EXPECT_EQ(back.hx, code.hx);
        EXPECT_EQ(back.hz, code.hz);
        auto stab = StabilizerCode::from_css(code);
        auto sback = stabilizer_from_tanner(tanner_graph(stab));
        EXPECT_EQ(sback.checks, stab.checks);
    }
    StabilizerCode mixed(2, {PauliOperator::from_string("XZ"), PauliOperator::from_string("ZX")});
    auto mg = tanner_graph(mixed);
    EXPECT_EQ(mg.count(CheckType::Mixed), 2u);
    EXPECT_THROW(css_from_tanner(mg), std::invalid_argument);
}

TEST(css_code, general_logicals) {
    // five-qubit code
    std::vector<PauliOperator> checks;
    for (const char *s : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}) {
        checks.push_back(PauliOperator::from_string(s));
    }
    StabilizerCode code(5, checks);
    code.check_commuting();
    auto l = logical_operators(code);
    ASSERT_EQ(l.k(), 1u);
    EXPECT_FALSE(l.z[0].commutes(l.x[0]));
    EXPECT_EQ(distance(code, 4).d, std::optional<size_t>(3));
}
