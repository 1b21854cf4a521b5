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

#ifndef QSURGERY_CSS_CODE_H
#define QSURGERY_CSS_CODE_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsurgery/gf2.h"
#include "qsurgery/pauli.h"

namespace qsurgery {

/// Largest cap accepted by the exhaustive distance searches.
constexpr size_t kMaxExhaustiveCap = 8;
constexpr size_t kDefaultSigma = 16;

class CssViolation : public std::runtime_error {
   public:
    CssViolation(size_t x_check, size_t z_check);
    size_t x_check;
    size_t z_check;
};

struct LdpcAudit {
    size_t max_check_weight = 0;
    size_t max_qubit_degree = 0;
    std::optional<size_t> sigma;

    /// Without a user sigma the audit only reports maxima and is treated as passing.
    bool passes() const { return !sigma || (max_check_weight <= *sigma && max_qubit_degree <= *sigma); }
};

struct CssCode {
    GF2Matrix hx;
    GF2Matrix hz;
    size_t n = 0;

    CssCode() = default;
    CssCode(GF2Matrix hx, GF2Matrix hz);

    size_t k() const;
};

struct ValidationReport {
    size_t n = 0;
    size_t k = 0;
    LdpcAudit audit;
};

/// Throws CssViolation naming the first anticommuting (X check, Z check) pair.
ValidationReport validate(const CssCode &code, std::optional<size_t> sigma = std::nullopt);

class CommutationViolation : public std::runtime_error {
   public:
    CommutationViolation(size_t a, size_t b);
    size_t a;
    size_t b;
};

/// General (possibly non-CSS) stabilizer code given by its check list.
struct StabilizerCode {
    size_t n = 0;
    std::vector<PauliOperator> checks;

    StabilizerCode() = default;
    StabilizerCode(size_t n, std::vector<PauliOperator> checks);
    static StabilizerCode from_css(const CssCode &code);

    size_t rank() const;
    size_t k() const { return n - rank(); }
    /// Throws CommutationViolation on the first anticommuting pair.
    void check_commuting() const;
    LdpcAudit audit(std::optional<size_t> sigma = std::nullopt) const;
    /// Sign-aware membership: the operator (with its phase) is a product of checks.
    bool in_group(const PauliOperator &op) const;
    /// Support-only membership: some product of checks has the same supports.
    bool in_group_up_to_sign(const PauliOperator &op) const;
    bool commutes_with_all(const PauliOperator &op) const;
};

/// Logical basis with z[i] anticommuting exactly with x[i].
struct LogicalOperators {
    std::vector<PauliOperator> z;
    std::vector<PauliOperator> x;
    size_t k() const { return z.size(); }
};

LogicalOperators logical_operators(const CssCode &code);
/// Symplectic basis of the normalizer modulo the check group.
LogicalOperators logical_operators(const StabilizerCode &code);

struct DistanceResult {
    /// nullopt means either no logicals or every logical has weight > cap.
    std::optional<size_t> d;
    size_t cap = 0;
    bool no_logicals = false;
    /// Per-type minima for CSS searches.
    std::optional<size_t> x_distance;
    std::optional<size_t> z_distance;
    std::optional<PauliOperator> witness;

    bool exceeds_cap() const { return !d && !no_logicals; }
    /// Certified lower bound check.
    bool at_least(size_t bound) const;
    std::string str() const;
};

DistanceResult distance(const CssCode &code, size_t cap);
DistanceResult distance(const StabilizerCode &code, size_t cap);

GF2Matrix repetition_matrix(size_t len);
/// Cyclic repetition code check matrix (len × len).
GF2Matrix cycle_matrix(size_t len);
CssCode hypergraph_product(const GF2Matrix &a, const GF2Matrix &b);
CssCode direct_sum(const CssCode &a, const CssCode &b);
CssCode shor_code();

enum class CheckType { X, Z, Mixed };

/// Edge labels follow the symplectic column pair [x|z].
enum class EdgeLabel { X, Z, Y };

struct TannerCheck {
    CheckType type = CheckType::Mixed;
    std::vector<std::pair<size_t, EdgeLabel>> edges;
};

struct TannerGraph {
    size_t qubits = 0;
    std::vector<TannerCheck> checks;

    size_t edge_count() const;
    size_t count(CheckType type) const;
};

TannerGraph tanner_graph(const CssCode &code);
TannerGraph tanner_graph(const StabilizerCode &code);
/// Inverse of tanner_graph on CSS graphs; throws if a mixed check is present.
CssCode css_from_tanner(const TannerGraph &graph);
StabilizerCode stabilizer_from_tanner(const TannerGraph &graph);

struct Manifest {
    std::string name;
    size_t n = 0;
    std::string hx_path;
    std::string hz_path;
    std::optional<size_t> sigma;
};

/// Loads a JSON manifest; relative matrix paths resolve against the manifest directory.
Manifest load_manifest(const std::string &path);
CssCode load_code(const Manifest &manifest);

}  // namespace qsurgery

#endif
