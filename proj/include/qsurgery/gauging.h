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

#ifndef QSURGERY_GAUGING_H
#define QSURGERY_GAUGING_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsurgery/branching.h"

namespace qsurgery {

class GaugeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct GaugeOptions {
    size_t degree_bound = 8;
    /// Expander edges per vertex on top of the check-pair edges.
    size_t expander_degree = 3;
    /// Max edges per matching, and max matchings through any one edge.
    size_t matching_length = 8;
    size_t matching_congestion = 4;
    size_t cycle_length = 12;
    size_t cycle_congestion = 8;
    /// Exhaustive Cheeger only up to this many vertices.
    size_t cheeger_limit = 20;
    size_t retries = 32;
};

/// Auxiliary graph: vertices are new Z checks, edges new qubits, faces new X checks.
struct AuxGraph {
    /// Data qubit of each vertex; nullopt marks a dummy vertex.
    std::vector<std::optional<size_t>> vertex_qubit;
    /// Target letter on the vertex's data qubit (I for dummies).
    std::vector<PauliLetter> vertex_letter;
    std::vector<std::pair<size_t, size_t>> edges;
    /// Each face lists edge indices of a closed cycle.
    std::vector<std::vector<size_t>> faces;
    /// Check index (in the code being deformed) -> edges whose boundary is the
    /// check's incident vertex set.
    std::map<size_t, std::vector<size_t>> matchings;
    uint64_t seed = 0;

    size_t vertex_count() const { return vertex_qubit.size(); }
    size_t dummy_count() const;
    std::vector<std::vector<size_t>> adjacency() const;
    /// Vertex incidence parity of an edge set.
    std::vector<bool> boundary(const std::vector<size_t> &edge_set) const;
};

struct DesideratumResult {
    bool pass = true;
    /// False when the check was sampled rather than exhaustive.
    bool certified = true;
    std::string detail;
    std::vector<size_t> witness;
};

struct DesiderataReport {
    /// 0 connected, 1 degree, 2 matchings, 3 cycle basis, 4 Cheeger.
    std::array<DesideratumResult, 5> items;
    double cheeger = 0;

    bool passes() const;
    /// Index of the first failing item, if any.
    std::optional<size_t> first_failure() const;
};

/// Qubits where `check` anticommutes with the letter of `target`.
std::vector<size_t> incident_qubits(const PauliOperator &check, const PauliOperator &target);

AuxGraph build_aux_graph(const StabilizerCode &code, const PauliOperator &target, GaugeOptions options = {},
                         uint64_t seed = 1);

/// Graph from an explicit edge list over the target's support (sorted qubit order).
AuxGraph graph_from_edges(const StabilizerCode &code, const PauliOperator &target,
                          const std::vector<std::pair<size_t, size_t>> &edges);

/// Shortest-first greedy cycle basis over Horton candidates.
std::vector<std::vector<size_t>> cycle_basis(const AuxGraph &g);

/// Relative Cheeger constant: min |δS| / |S ∩ N| over S with 0 < |S ∩ N| ≤ |N|/2, N the
/// non-dummy vertices. Exhaustive when the graph is small, sampled otherwise.
struct CheegerResult {
    double value = 0;
    bool exhaustive = true;
    std::vector<size_t> witness;
};
CheegerResult relative_cheeger(const AuxGraph &g, size_t exhaustive_limit = 20, uint64_t seed = 1);

DesiderataReport check_desiderata(const AuxGraph &g, const StabilizerCode &code, const PauliOperator &target,
                                  GaugeOptions options = {});

struct GaugeResult {
    DeformedCode deformed;
    std::vector<size_t> edge_qubits;
    std::vector<size_t> vertex_checks;
    std::vector<size_t> face_checks;
    /// target = sign · Π A_v.
    int sign = 1;
};

/// Appends the graph's qubits and checks. The target must be a nontrivial logical
/// of `base` and the graph must have been built against `base.code`.
GaugeResult deform_with_gauge(const DeformedCode &base, const AuxGraph &g, const PauliOperator &target);

struct Adapter {
    std::vector<size_t> left_ports;
    std::vector<size_t> right_ports;
    /// Adapter edges as (left vertex, right vertex) in the left/right graphs' own indexing.
    std::vector<std::pair<size_t, size_t>> edges;
    /// Faces of the merged graph introduced by the adapter (merged edge indices).
    std::vector<std::vector<size_t>> faces;
};

struct AdaptedGraph {
    Adapter adapter;
    AuxGraph merged;
};

/// Joins two graphs over disjoint targets; the merged graph measures the product.
AdaptedGraph build_adapter(const AuxGraph &left, const AuxGraph &right, uint64_t seed = 1);

struct ProductCertificate {
    bool k_drops_by_one = false;
    bool product_in_group = false;
    bool factors_not_in_group = false;

    bool passes() const { return k_drops_by_one && product_in_group && factors_not_in_group; }
};

ProductCertificate certify_product_measurement(const DeformedCode &before, const DeformedCode &after,
                                               const std::vector<PauliOperator> &factors);

/// Graph for a product of disjoint targets: one graph per factor, joined by adapters in a
/// balanced binary merge.
AuxGraph build_product_graph(const StabilizerCode &code, const std::vector<PauliOperator> &factors,
                             GaugeOptions options = {}, uint64_t seed = 1);

/// Constant C in edges ≤ C·w·log³(max(w,2)).
double gauge_cost_constant(const AuxGraph &g);

}  // namespace qsurgery

#endif
