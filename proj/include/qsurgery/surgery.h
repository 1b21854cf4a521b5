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

#ifndef QSURGERY_SURGERY_H
#define QSURGERY_SURGERY_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsurgery/branching.h"
#include "qsurgery/gauging.h"
#include "qsurgery/logical_basis.h"

namespace qsurgery {

enum class RequestMode { Disjoint, SameOrIdentity, Commuting };

const char *mode_name(RequestMode m);
RequestMode mode_from_name(const std::string &name);

class RequestError : public std::invalid_argument {
   public:
    RequestError(const std::string &what, size_t first, size_t second);
    size_t first;
    size_t second;
};

struct MeasurementRequest {
    std::vector<LogicalPauliProduct> products;
    RequestMode mode = RequestMode::Disjoint;
};

/// Throws RequestError naming the first violating pair.
void validate_request(const MeasurementRequest &request);

/// A signed logical Pauli on k logical qubits, stored as a PauliOperator.
using LogicalOp = PauliOperator;

struct TwistFreeGadget {
    LogicalOp product;
    /// Integer |u ∧ v|, the number of Y terms.
    size_t y_count = 0;
    size_t ancilla_a = 0;
    std::optional<size_t> ancilla_b;
    /// X[u] X_A (X_B) and Z[v] X_A (Z_B).
    LogicalOp split_x;
    LogicalOp split_z;

    bool odd() const { return y_count % 2 == 1; }
    /// outcome(P) = reconstruction_sign() · m_x · m_z, given the |Y⟩ catalyst at +1.
    int reconstruction_sign() const;
    /// Logical correction applied when the Z_A readout gives −1 (also resets A).
    LogicalOp readout_correction() const;
};

/// Splits a logical product using ancilla logicals a (and b when the Y count is odd).
/// `k` is the total logical count including the ancillas.
TwistFreeGadget twist_free_decompose(const LogicalOp &product, size_t k, size_t ancilla_a,
                                     std::optional<size_t> ancilla_b);

/// u_i·v_j = 0 for all i ≠ j.
bool is_regular(const std::vector<LogicalOp> &ops);

struct RegularSplit {
    std::vector<LogicalOp> first;
    std::vector<LogicalOp> second;
};

/// Generating set for ⟨theta⟩ split into two regular subsets.
RegularSplit regularize(const std::vector<LogicalOp> &theta);

/// True when the signed groups generated by `a` and `b` coincide.
bool same_group(const std::vector<LogicalOp> &a, const std::vector<LogicalOp> &b);

/// One measured product inside a step.
struct ProductMeasurement {
    LogicalPauliProduct product;
    /// Signed logical operator actually measured (sign applies to the outcome).
    int sign = 1;
    /// Physical representative of the product on the pre-branch code.
    PauliOperator representative;
    /// Indices into MeasurementStep::terms.
    std::vector<size_t> terms;
    AuxGraph graph;
    /// Operator measured by the graph (product of leaves).
    PauliOperator gauge_target;
    std::vector<size_t> vertex_checks;
    std::vector<size_t> edge_qubits;
    int gauge_sign = 1;
    /// Branch Z checks whose outcomes enter the product's frame.
    std::vector<size_t> cert_checks;
};

struct StepCertificate {
    bool commuting = false;
    bool branch_k_preserved = false;
    bool measured_k_accounted = false;
    bool leaves_ok = false;
    Certification branch_distance = Certification::Inconclusive;
    Certification measured_distance = Certification::Inconclusive;
    LdpcAudit branch_audit;
    LdpcAudit measured_audit;
    bool products_in_group = false;

    bool passes() const;
};

/// Prepare: catalyst Y and ancilla Z measurements with corrections to +1.
/// Split: X-splits or Z-splits of twist-free gadgets. Readout: Z_A of each gadget.
enum class StepRole { Measure, Prepare, Split, Readout };
const char *role_name(StepRole r);

/// Branch, measure with gauging graphs, unbranch. Every product in a step is
/// same-or-identity compatible with all others.
struct MeasurementStep {
    std::string label;
    StepRole role = StepRole::Measure;
    std::vector<LogicalPauliProduct> products;
    /// One physical representative per (product, term) occurrence.
    std::vector<PauliOperator> terms;
    std::vector<size_t> term_logical;
    std::optional<BranchTree> tree;
    DeformedCode branched;
    DeformedCode measured;
    std::vector<ProductMeasurement> measurements;
    size_t independent_products = 0;
    StepCertificate certificate;
};

enum class WindowKind { Branch, Measure, Unbranch };
const char *window_name(WindowKind k);

struct Window {
    WindowKind kind;
    size_t step = 0;
    size_t rounds = 0;
    size_t qubits = 0;
    size_t checks = 0;
};

struct CostLedger {
    size_t branch_qubits = 0;
    size_t gauge_qubits = 0;
    size_t new_checks = 0;
    size_t rounds = 0;
    /// T and ω of the largest step.
    size_t terms = 0;
    size_t omega = 0;
    double constant = 0;
    double bound = 0;

    size_t ancilla_qubits() const { return branch_qubits + gauge_qubits; }
    bool within_bound() const { return static_cast<double>(ancilla_qubits()) <= bound + 1e-9; }
};

struct PlanOptions {
    GaugeOptions gauge;
    uint64_t seed = 1;
    /// Distance certification cap; d itself is computed up to this cap.
    size_t cap = 8;
    std::optional<size_t> sigma;
    /// Use a single sticker even for one-term steps.
    bool single_sticker = false;
};

struct SurgeryPlan {
    StabilizerCode code;
    /// Present when the code is CSS (always for plans built here).
    CssCode css;
    LogicalBasis basis;
    size_t d = 0;
    MeasurementRequest request;
    /// Logical indices k0.. belong to adjoined ancilla blocks.
    size_t data_logicals = 0;
    size_t adjoined_blocks = 0;
    std::vector<TwistFreeGadget> gadgets;
    /// Gadget groups: theta' then theta''.
    std::vector<std::vector<size_t>> gadget_groups;
    /// Catalyst preparation: ancilla B logicals prepared in +Y, A logicals in +Z.
    std::vector<size_t> catalysts;
    std::vector<size_t> ancilla_zeros;
    /// For a Readout step: the gadget index of each measured product.
    std::vector<std::vector<size_t>> readout_gadgets;
    /// theta_i = sign · Π (regularized generators listed by index).
    struct Reconstruction {
        LogicalPauliProduct product;
        int sign = 1;
        std::vector<size_t> generators;
    };
    std::vector<Reconstruction> reconstructions;
    std::vector<MeasurementStep> steps;
    std::vector<Window> schedule;
    CostLedger cost;
    uint64_t seed = 1;

    bool certified() const;
};

/// Disjoint and same-or-identity requests: one step (branch, measure, unbranch).
/// Commuting requests route through plan_commuting_set.
SurgeryPlan plan(const CssCode &code, const MeasurementRequest &request, PlanOptions options = {});

/// Twist-free pipeline over theta' and theta''.
SurgeryPlan plan_commuting_set(const CssCode &code, const std::vector<LogicalPauliProduct> &theta,
                               PlanOptions options = {});

/// One step over `products`, all same-or-identity compatible, on logical indices of `basis`.
MeasurementStep build_step(const StabilizerCode &code, const LogicalBasis &basis,
                           const std::vector<LogicalPauliProduct> &products, const std::vector<int> &signs,
                           size_t d, const PlanOptions &options, const std::string &label);

/// Physical operator for a signed logical op.
PauliOperator physical_logical(const LogicalBasis &basis, const LogicalOp &op);

/// LogicalPauliProduct with sign from a logical op (phase 0 or 2 only).
std::pair<LogicalPauliProduct, int> to_product(const LogicalOp &op);

}  // namespace qsurgery

#endif
