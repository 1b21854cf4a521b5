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

#include "qsurgery/gauging.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qsurgery/logical_basis.h"
#include "test_util.h"

using namespace qsurgery;

namespace {

CssCode hgp_cycles() { return hypergraph_product(cycle_matrix(3), cycle_matrix(3)); }

// Independent oracle: min cut/size over all subsets holding at most half the data vertices.
double brute_cheeger(const AuxGraph &g) {
    size_t nv = g.vertex_count();
    size_t real = nv - g.dummy_count();
    double best = std::numeric_limits<double>::infinity();
    for (uint64_t mask = 1; mask < (uint64_t{1} << nv); mask++) {
        size_t in_real = 0;
        for (size_t v = 0; v < nv; v++) {
            if (((mask >> v) & 1) && g.vertex_qubit[v]) {
                in_real++;
            }
        }
        if (in_real == 0 || 2 * in_real > real) {
            continue;
        }
        size_t cut = 0;
        for (auto [a, b] : g.edges) {
            cut += ((mask >> a) & 1) != ((mask >> b) & 1);
        }
        best = std::min(best, double(cut) / double(in_real));
    }
    return best;
}

PauliOperator all_z(size_t n) {
    GF2Vector v(n);
    for (size_t i = 0; i < n; i++) {
        v.set(i);
    }
    return PauliOperator::z_type(v);
}

// Lowest-weight representative of the class of `rep` avoiding `avoid`, by enumeration.
GF2Vector disjoint_rep(const CssCode &code, const GF2Vector &rep, const GF2Vector &avoid) {
    std::optional<GF2Vector> best;
    for (uint64_t bits = 0; bits < (uint64_t{1} << code.hz.rows()); bits++) {
        GF2Vector v = rep;
        for (size_t r = 0; r < code.hz.rows(); r++) {
            if ((bits >> r) & 1) {
                v ^= code.hz.row(r);
            }
        }
        if (!v.overlap(avoid) && (!best || v.weight() < best->weight())) {
            best = v;
        }
    }
    return *best;
}

}  // namespace

TEST(gauging, single_vertex) {
    StabilizerCode code(1, {});
    auto target = PauliOperator::from_string("Z");
    auto g = build_aux_graph(code, target);
    EXPECT_EQ(g.vertex_count(), 1u);
    EXPECT_TRUE(g.edges.empty());
    auto rep = check_desiderata(g, code, target);
    EXPECT_TRUE(rep.passes());
    EXPECT_TRUE(std::isinf(rep.cheeger));
}

TEST(gauging, shor_triangle) {
    auto css = shor_code();
    auto code = StabilizerCode::from_css(css);
    auto target = PauliOperator::z_type(chosen_basis(css).z_reps[0]);
    ASSERT_EQ(target.weight(), 3u);
    auto g = build_aux_graph(code, target);
    EXPECT_EQ(g.edges.size(), 3u);
    EXPECT_EQ(g.faces.size(), 1u);
    auto rep = check_desiderata(g, code, target);
    EXPECT_TRUE(rep.passes());
    EXPECT_TRUE(rep.items[4].certified);
    EXPECT_DOUBLE_EQ(rep.cheeger, brute_cheeger(g));
    EXPECT_GE(rep.cheeger, 1.0);
}

TEST(gauging, weight_nine_graph) {
    auto css = shor_code();
    auto code = StabilizerCode::from_css(css);
    GF2Vector all(9);
    for (size_t i = 0; i < 9; i++) {
        all.set(i);
    }
    auto target = PauliOperator::x_type(all);
    ASSERT_TRUE(code.commutes_with_all(target));
    auto g = build_aux_graph(code, target, {}, 7);
    auto rep = check_desiderata(g, code, target);
    EXPECT_TRUE(rep.passes());
    EXPECT_DOUBLE_EQ(rep.cheeger, brute_cheeger(g));
    for (const auto &adj : g.adjacency()) {
        EXPECT_LE(adj.size(), GaugeOptions{}.degree_bound);
    }
}

TEST(gauging, path_graph_cheeger_witness) {
    StabilizerCode code(4, {});
    auto target = all_z(4);
    auto g = graph_from_edges(code, target, {{0, 1}, {1, 2}, {2, 3}});
    auto rep = check_desiderata(g, code, target);
    EXPECT_TRUE(rep.items[0].pass);
    EXPECT_FALSE(rep.items[4].pass);
    EXPECT_DOUBLE_EQ(rep.cheeger, 0.5);
    EXPECT_EQ(rep.items[4].witness, (std::vector<size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(brute_cheeger(g), 0.5);
}

TEST(gauging, complete_graph) {
    StabilizerCode code(4, {});
    auto target = all_z(4);
    auto g = graph_from_edges(code, target, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto rep = check_desiderata(g, code, target);
    EXPECT_TRUE(rep.passes());
    EXPECT_EQ(rep.items[1].detail, "max degree 3");
    EXPECT_EQ(g.faces.size(), 3u);
    for (const auto &f : g.faces) {
        EXPECT_EQ(f.size(), 3u);
    }
}

TEST(gauging, disconnected_graph) {
    StabilizerCode code(4, {});
    auto target = all_z(4);
    auto g = graph_from_edges(code, target, {{0, 1}, {2, 3}});
    auto rep = check_desiderata(g, code, target);
    EXPECT_FALSE(rep.items[0].pass);
    EXPECT_EQ(rep.first_failure(), 0u);
    EXPECT_EQ(rep.items[0].witness, (std::vector<size_t>{2, 3}));
}

TEST(gauging, deform_shor) {
    auto css = shor_code();
    auto base = DeformedCode::from_css(css);
    auto target = PauliOperator::z_type(chosen_basis(css).z_reps[0]);
    auto g = build_aux_graph(base.code, target);
    auto r = deform_with_gauge(base, g, target);
    EXPECT_EQ(r.deformed.code.k(), 0u);
    EXPECT_NO_THROW(r.deformed.code.check_commuting());
    PauliOperator prod(r.deformed.n());
    for (size_t j : r.vertex_checks) {
        prod *= r.deformed.code.checks[j];
    }
    PauliOperator t = target.padded(r.deformed.n());
    EXPECT_TRUE(prod.same_support(t));
    EXPECT_EQ(r.sign, 1);
}

TEST(gauging, deform_hgp_one_logical) {
    auto css = hgp_cycles();
    auto base = DeformedCode::from_css(css);
    auto target = PauliOperator::z_type(chosen_basis(css).z_reps[0]);
    auto g = build_aux_graph(base.code, target);
    auto r = deform_with_gauge(base, g, target);
    EXPECT_EQ(r.deformed.code.k(), 1u);
    EXPECT_EQ(verify_distance_preserved(r.deformed, 3, 4), Certification::Pass);
    auto audit = r.deformed.code.audit();
    EXPECT_LE(audit.max_qubit_degree, 8u);
}

TEST(gauging, rejects_stabilizer_target) {
    auto css = shor_code();
    auto base = DeformedCode::from_css(css);
    auto stab = PauliOperator::z_type(css.hz.row(0));
    auto g = build_aux_graph(base.code, stab);
    EXPECT_THROW(deform_with_gauge(base, g, stab), GaugeError);
}

TEST(gauging, adapter_single_vertices) {
    StabilizerCode code(2, {});
    auto z0 = PauliOperator::from_string("ZI"), z1 = PauliOperator::from_string("IZ");
    auto gl = build_aux_graph(code, z0), gr = build_aux_graph(code, z1);
    auto a = build_adapter(gl, gr);
    EXPECT_EQ(a.adapter.edges.size(), 1u);
    EXPECT_TRUE(a.adapter.faces.empty());
    DeformedCode base(code);
    auto product = z0 * z1;
    auto r = deform_with_gauge(base, a.merged, product);
    auto cert = certify_product_measurement(base, r.deformed, {z0, z1});
    EXPECT_TRUE(cert.k_drops_by_one);
    EXPECT_TRUE(cert.product_in_group);
    EXPECT_TRUE(cert.factors_not_in_group);
}

TEST(gauging, adapter_hgp_product) {
    auto css = hgp_cycles();
    auto b = chosen_basis(css);
    GF2Vector v0 = b.z_reps[0];
    GF2Vector v1 = disjoint_rep(css, b.z_reps[1], v0);
    auto base = DeformedCode::from_css(css);
    std::vector<PauliOperator> factors = {PauliOperator::z_type(v0), PauliOperator::z_type(v1)};
    auto gl = build_aux_graph(base.code, factors[0]);
    auto gr = build_aux_graph(base.code, factors[1]);
    auto a = build_adapter(gl, gr, 3);
    auto product = factors[0] * factors[1];
    auto rep = check_desiderata(a.merged, base.code, product);
    EXPECT_TRUE(rep.passes()) << rep.items[*rep.first_failure()].detail;
    auto r = deform_with_gauge(base, a.merged, product);
    auto cert = certify_product_measurement(base, r.deformed, factors);
    EXPECT_TRUE(cert.passes());
    EXPECT_EQ(r.deformed.code.k(), 1u);
    // each port gains exactly one adapter edge
    auto merged_adj = a.merged.adjacency();
    auto left_adj = gl.adjacency();
    for (size_t v : a.adapter.left_ports) {
        EXPECT_EQ(merged_adj[v].size(), left_adj[v].size() + 1);
    }
}

TEST(gauging, adapter_chain_three) {
    auto css = direct_sum(direct_sum(shor_code(), shor_code()), shor_code());
    auto b = chosen_basis(css);
    ASSERT_EQ(b.k(), 3u);
    auto base = DeformedCode::from_css(css);
    std::vector<PauliOperator> factors;
    PauliOperator product(css.n);
    for (size_t i = 0; i < 3; i++) {
        factors.push_back(PauliOperator::z_type(b.z_reps[i]));
        product *= factors.back();
    }
    auto g = build_product_graph(base.code, factors);
    auto r = deform_with_gauge(base, g, product);
    EXPECT_EQ(r.deformed.code.k(), 2u);
    auto cert = certify_product_measurement(base, r.deformed, factors);
    EXPECT_TRUE(cert.passes());
    // middle graph ports gain at most two adapters
    auto adj = g.adjacency();
    for (size_t v = 3; v < 6; v++) {
        EXPECT_LE(adj[v].size(), 2u + 2u);
    }
}

TEST(gauging, cost_constant_reported) {
    auto css = hgp_cycles();
    auto code = StabilizerCode::from_css(css);
    auto target = PauliOperator::z_type(chosen_basis(css).z_reps[0]);
    auto g = build_aux_graph(code, target);
    double c = gauge_cost_constant(g);
    double w = 3;
    EXPECT_LE(double(g.edges.size()), c * w * std::pow(std::log2(w), 3) + 1e-9);
    EXPECT_LE(c, GaugeOptions{}.degree_bound / 2.0);
}
