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

#include "qsurgery/stabsim.h"

#include <gtest/gtest.h>

#include "dense_oracle.h"
#include "surgery_oracle.h"
#include "test_util.h"

using namespace qsurgery;

namespace {

CssCode hgp_cycles() { return hypergraph_product(cycle_matrix(3), cycle_matrix(3)); }

PauliOperator hermitian(std::mt19937_64 &rng, size_t n) {
    auto p = random_pauli(rng, n);
    p.set_phase((rng() & 1) ? 2 : 0);
    return p;
}

MeasurementRequest request(std::initializer_list<const char *> texts, RequestMode mode) {
    MeasurementRequest r;
    r.mode = mode;
    for (const char *t : texts) {
        r.products.push_back(LogicalPauliProduct::parse(t));
    }
    return r;
}

PauliOperator logical(const SurgeryPlan &p, const char *text) {
    return physical_logical(p.basis, PauliOperator::from_string(text));
}

}  // namespace

TEST(stabsim, zero_state_basics) {
    StabilizerState st(1);
    std::mt19937_64 rng(1);
    auto z = st.measure(PauliOperator::from_string("Z"), rng);
    EXPECT_TRUE(z.deterministic);
    EXPECT_EQ(z.value, 1);
    auto x = st.measure(PauliOperator::from_string("X"), rng);
    EXPECT_FALSE(x.deterministic);
    auto again = st.measure(PauliOperator::from_string("X"), rng);
    EXPECT_TRUE(again.deterministic);
    EXPECT_EQ(again.value, x.value);
    EXPECT_EQ(*st.peek(PauliOperator::from_string("-X")), -x.value);
}

TEST(stabsim, x_outcomes_uniform) {
    size_t minus = 0;
    for (uint64_t seed = 0; seed < 400; seed++) {
        StabilizerState st(1);
        std::mt19937_64 rng(seed);
        minus += st.measure(PauliOperator::from_string("X"), rng).value == -1;
    }
    EXPECT_GT(minus, 150u);
    EXPECT_LT(minus, 250u);
}

TEST(stabsim, dense_oracle_sequences) {
    std::mt19937_64 rng(5);
    for (int seq = 0; seq < 300; seq++) {
        size_t n = 1 + seq % 6;
        StabilizerState st(n);
        DenseState dense(n);
        for (int step = 0; step < 25; step++) {
            size_t kind = rng() % 5;
            size_t q = rng() % n;
            if (kind == 0) {
                st.h(q), dense.h(q);
            } else if (kind == 1) {
                st.s(q), dense.s(q);
            } else if (kind == 2 && n > 1) {
                size_t t = (q + 1 + rng() % (n - 1)) % n;
                st.cx(q, t), dense.cx(q, t);
            } else {
                auto p = hermitian(rng, n);
                if (p.is_identity()) {
                    continue;
                }
                double e = dense.expectation(p);
                auto out = st.measure(p, rng);
                ASSERT_EQ(out.deterministic, std::abs(e) > 0.5) << "seq " << seq << " step " << step;
                if (out.deterministic) {
                    ASSERT_EQ(out.value, e > 0 ? 1 : -1);
                }
                dense.project(p, out.value);
            }
        }
        for (const auto &s : st.stabilizers()) {
            ASSERT_TRUE(dense.stabilized_by(s)) << s.str();
        }
    }
}

TEST(stabsim, apply_pauli_flips) {
    StabilizerState st(2);
    st.apply_pauli(PauliOperator::from_string("XI"));
    EXPECT_EQ(*st.peek(PauliOperator::from_string("ZI")), -1);
    EXPECT_EQ(*st.peek(PauliOperator::from_string("IZ")), 1);
    EXPECT_EQ(*st.peek(PauliOperator::from_string("ZZ")), -1);
}

TEST(stabsim, generators_and_removal) {
    std::mt19937_64 rng(3);
    auto st = random_logical_state(4, rng);
    auto copy = StabilizerState::from_generators(4, st.stabilizers());
    EXPECT_TRUE(copy.same_state(st));
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            EXPECT_EQ(copy.destabilizers()[i].commutes(copy.stabilizers()[j]), i != j);
            EXPECT_TRUE(copy.destabilizers()[i].commutes(copy.destabilizers()[j]));
        }
    }
    copy.add_qubits(2, PauliLetter::X);
    copy.measure(PauliOperator::from_string("IIIIZI"), rng);
    copy.remove_trailing_qubits(4);
    EXPECT_TRUE(copy.same_state(st));
    StabilizerState bell(2);
    bell.h(0);
    bell.cx(0, 1);
    EXPECT_THROW(bell.remove_trailing_qubits(1), SimulationError);
    EXPECT_THROW(StabilizerState::from_generators(2, {PauliOperator::from_string("XI"), PauliOperator::from_string("ZI")}),
                 SimulationError);
}

TEST(stabsim, codespace_preparation) {
    auto shor = StabilizerCode::from_css(shor_code());
    auto lops = logical_operators(shor);
    auto zero = prepare_codespace(shor, {{lops.z[0], 1}});
    EXPECT_EQ(*zero.peek(lops.z[0]), 1);
    EXPECT_FALSE(zero.peek(lops.x[0]).has_value());
    auto plus = prepare_codespace(shor, {{lops.x[0], 1}});
    EXPECT_EQ(*plus.peek(lops.x[0]), 1);
    EXPECT_THROW(prepare_codespace(shor, {}), SimulationError);
    EXPECT_THROW(prepare_codespace(shor, {{lops.z[0], 1}, {lops.z[0], -1}}), SimulationError);
    EXPECT_THROW(prepare_codespace(shor, {{lops.z[0], 1}, {lops.x[0], 1}}), SimulationError);

    auto hgp = StabilizerCode::from_css(hgp_cycles());
    auto hl = logical_operators(hgp);
    auto zz = prepare_codespace(hgp, {{hl.z[0], 1}, {hl.z[1], 1}});
    EXPECT_EQ(zz.stabilizers().size(), 18u);
}

TEST(stabsim, shor_minus_then_x) {
    auto shor = StabilizerCode::from_css(shor_code());
    auto lops = logical_operators(shor);
    auto st = prepare_codespace(shor, {{lops.x[0], -1}});
    std::mt19937_64 rng(9);
    EXPECT_EQ(*st.peek(lops.x[0]), -1);
    auto z = st.measure(lops.z[0], rng);
    EXPECT_FALSE(z.deterministic);
    EXPECT_FALSE(st.peek(lops.x[0]).has_value());
}

TEST(stabsim, gauging_shor_zero) {
    auto p = plan(shor_code(), request({"Z0"}, RequestMode::Disjoint));
    auto zbar = logical(p, "Z");
    auto input = prepare_codespace(p.code, {{zbar, 1}});
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto t = run_surgery(p, input, seed);
        ASSERT_EQ(t.results, std::vector<int>{1});
        EXPECT_TRUE(t.consistent());
        EXPECT_TRUE(t.final_state.same_state(input));
    }
}

TEST(stabsim, zz_on_plus_plus) {
    auto p = plan(hgp_cycles(), request({"Z0 Z1"}, RequestMode::Disjoint));
    auto input = prepare_codespace(p.code, {{logical(p, "XI"), 1}, {logical(p, "IX"), 1}});
    std::set<int> seen;
    for (uint64_t seed = 0; seed < 16; seed++) {
        auto t = run_surgery(p, input, seed);
        ASSERT_TRUE(t.consistent());
        seen.insert(t.results[0]);
        EXPECT_EQ(*t.final_state.peek(logical(p, "ZZ")), t.results[0]);
        EXPECT_EQ(*t.final_state.peek(logical(p, "XX")), 1);
    }
    EXPECT_EQ(seen.size(), 2u);
}

TEST(stabsim, mixed_disjoint_plan_matches_direct) {
    auto p = plan(hgp_cycles(), request({"Y0", "Z1"}, RequestMode::Disjoint));
    auto rep = compare_with_direct(p, 25, 4);
    EXPECT_EQ(rep.mismatches, 0u) << rep.first_problem;
    EXPECT_GT(rep.random, 0u);
}

TEST(stabsim, shared_term_plan_matches_direct) {
    auto p = plan(hgp_cycles(), request({"X0 Z1", "Z1"}, RequestMode::SameOrIdentity));
    auto rep = compare_with_direct(p, 25, 6);
    EXPECT_EQ(rep.mismatches, 0u) << rep.first_problem;
}

TEST(stabsim, spectators_untouched) {
    auto p = plan(hgp_cycles(), request({"Z0"}, RequestMode::Disjoint));
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; trial++) {
        auto input = encode_logical_state(p, random_logical_state(2, rng));
        auto t = run_surgery(p, input, trial);
        for (const char *spec : {"IZ", "IX", "IY", "ZI"}) {
            auto op = logical(p, spec);
            auto before = input.peek(op), after = t.final_state.peek(op);
            if (before) {
                ASSERT_TRUE(after.has_value()) << spec;
                EXPECT_EQ(*before, *after) << spec;
            }
        }
    }
}

TEST(stabsim, twist_free_pair_matches_direct) {
    auto p = plan(hgp_cycles(), request({"X0 Z1", "Z0 X1"}, RequestMode::Commuting));
    // hyperbolic pair: prep, then split, split, readout for each of the two groups
    ASSERT_EQ(p.steps.size(), 7u);
    auto rep = compare_with_direct(p, 20, 8, {.repeat_rounds = false});
    EXPECT_EQ(rep.mismatches, 0u) << rep.first_problem;
}

TEST(stabsim, twist_free_odd_y_catalyst) {
    auto p = plan(shor_code(), request({"Y0"}, RequestMode::Commuting));
    // a single product collapses to a plain plan; force the gadget path through a pair
    EXPECT_TRUE(p.gadgets.empty());
    auto q = plan(hgp_cycles(), request({"Y0 X1", "X0 Y1"}, RequestMode::Commuting));
    ASSERT_FALSE(q.catalysts.empty());
    auto rep = compare_with_direct(q, 12, 10, {.repeat_rounds = false});
    EXPECT_EQ(rep.mismatches, 0u) << rep.first_problem;
    EXPECT_EQ(rep.catalyst_failures, 0u);
}

TEST(stabsim, rejects_uncertified_plan) {
    auto p = plan(shor_code(), request({"Z0"}, RequestMode::Disjoint));
    p.steps[0].certificate.commuting = false;
    EXPECT_THROW(run_surgery(p, StabilizerState(p.code.n), 1), SimulationError);
}
