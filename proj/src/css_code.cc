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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qsurgery/weight_search.h"

namespace qsurgery {

CssViolation::CssViolation(size_t x, size_t z)
    : std::runtime_error("CSS violation: X check " + std::to_string(x) + " and Z check " +
                         std::to_string(z) + " overlap on an odd number of qubits"),
      x_check(x),
      z_check(z) {}

CommutationViolation::CommutationViolation(size_t a_, size_t b_)
    : std::runtime_error("checks " + std::to_string(a_) + " and " + std::to_string(b_) + " anticommute"),
      a(a_),
      b(b_) {}

CssCode::CssCode(GF2Matrix hx_, GF2Matrix hz_) : hx(std::move(hx_)), hz(std::move(hz_)) {
    n = std::max(hx.cols(), hz.cols());
    if (hx.rows() == 0) {
        hx = GF2Matrix(0, n);
    }
    if (hz.rows() == 0) {
        hz = GF2Matrix(0, n);
    }
    if (hx.cols() != hz.cols()) {
        throw std::invalid_argument("CssCode: hx has " + std::to_string(hx.cols()) + " columns, hz has " +
                                    std::to_string(hz.cols()));
    }
}

size_t CssCode::k() const { return n - rank(hx) - rank(hz); }

ValidationReport validate(const CssCode &code, std::optional<size_t> sigma) {
    for (size_t i = 0; i < code.hx.rows(); i++) {
        for (size_t j = 0; j < code.hz.rows(); j++) {
            if (code.hx.row(i).dot(code.hz.row(j))) {
                throw CssViolation(i, j);
            }
        }
    }
    ValidationReport r;
    r.n = code.n;
    r.k = code.k();
    r.audit.sigma = sigma;
    r.audit.max_check_weight = std::max(code.hx.max_row_weight(), code.hz.max_row_weight());
    for (size_t q = 0; q < code.n; q++) {
        size_t deg = code.hx.column(q).weight() + code.hz.column(q).weight();
        r.audit.max_qubit_degree = std::max(r.audit.max_qubit_degree, deg);
    }
    return r;
}

StabilizerCode::StabilizerCode(size_t n_, std::vector<PauliOperator> checks_) : n(n_), checks(std::move(checks_)) {
    for (const auto &c : checks) {
        if (c.n() != n) {
            throw std::invalid_argument("StabilizerCode: check size " + std::to_string(c.n()) +
                                        " differs from n = " + std::to_string(n));
        }
    }
}

StabilizerCode StabilizerCode::from_css(const CssCode &code) {
    std::vector<PauliOperator> checks;
    for (const auto &r : code.hx.row_data()) {
        checks.push_back(PauliOperator::x_type(r));
    }
    for (const auto &r : code.hz.row_data()) {
        checks.push_back(PauliOperator::z_type(r));
    }
    return StabilizerCode(code.n, std::move(checks));
}

size_t StabilizerCode::rank() const { return qsurgery::rank(symplectic_matrix(checks, n)); }

void StabilizerCode::check_commuting() const {
    for (size_t i = 0; i < checks.size(); i++) {
        for (size_t j = i + 1; j < checks.size(); j++) {
            if (!checks[i].commutes(checks[j])) {
                throw CommutationViolation(i, j);
            }
        }
    }
}

LdpcAudit StabilizerCode::audit(std::optional<size_t> sigma) const {
    LdpcAudit a;
    a.sigma = sigma;
    std::vector<size_t> degree(n, 0);
    for (const auto &c : checks) {
        a.max_check_weight = std::max(a.max_check_weight, c.weight());
        for (size_t q : c.support().support()) {
            degree[q]++;
        }
    }
    for (size_t d : degree) {
        a.max_qubit_degree = std::max(a.max_qubit_degree, d);
    }
    return a;
}

bool StabilizerCode::in_group_up_to_sign(const PauliOperator &op) const {
    return row_space_member(symplectic_matrix(checks, n), op.symplectic()).has_value();
}

bool StabilizerCode::in_group(const PauliOperator &op) const {
    auto combo = row_space_member(symplectic_matrix(checks, n), op.symplectic());
    if (!combo) {
        return false;
    }
    PauliOperator prod(n);
    for (size_t i : combo->support()) {
        prod *= checks[i];
    }
    return prod == op;
}

bool StabilizerCode::commutes_with_all(const PauliOperator &op) const {
    for (const auto &c : checks) {
        if (!c.commutes(op)) {
            return false;
        }
    }
    return true;
}

namespace {

/// Vectors of `candidates` independent modulo `fixed`, in order.
std::vector<GF2Vector> complement_basis(const GF2Matrix &fixed, const GF2Matrix &candidates) {
    RowSpace space(candidates.cols());
    for (const auto &r : fixed.row_data()) {
        space.insert(r);
    }
    std::vector<GF2Vector> out;
    for (const auto &r : candidates.row_data()) {
        if (space.insert(r)) {
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace

LogicalOperators logical_operators(const CssCode &code) {
    auto zs = complement_basis(code.hz, kernel(code.hx));
    auto xs = complement_basis(code.hx, kernel(code.hz));
    if (zs.size() != xs.size()) {
        throw std::logic_error("logical_operators: X and Z logical counts differ");
    }
    size_t k = zs.size();
    GF2Matrix pairing(k, k);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            pairing.set(i, j, zs[i].dot(xs[j]));
        }
    }
    auto inv = inverse(pairing.transpose());
    if (!inv) {
        throw std::logic_error("logical_operators: singular pairing matrix");
    }
    LogicalOperators out;
    for (size_t i = 0; i < k; i++) {
        out.z.push_back(PauliOperator::z_type(zs[i]));
        GF2Vector w(code.n);
        for (size_t l : inv->row(i).support()) {
            w ^= xs[l];
        }
        out.x.push_back(PauliOperator::x_type(w));
    }
    return out;
}

LogicalOperators logical_operators(const StabilizerCode &code) {
    size_t n = code.n;
    // op commutes with c iff c.z·op.x + c.x·op.z = 0, so swap halves of each check row.
    GF2Matrix swapped(0, 2 * n);
    for (const auto &c : code.checks) {
        swapped.append_row(PauliOperator(c.z(), c.x()).symplectic());
    }
    std::vector<PauliOperator> rest;
    for (const auto &v : complement_basis(symplectic_matrix(code.checks, n), kernel(swapped))) {
        rest.push_back(PauliOperator::from_symplectic(v));
    }
    LogicalOperators out;
    while (!rest.empty()) {
        PauliOperator a = rest.front();
        size_t partner = rest.size();
        for (size_t i = 1; i < rest.size(); i++) {
            if (!a.commutes(rest[i])) {
                partner = i;
                break;
            }
        }
        if (partner == rest.size()) {
            throw std::logic_error("logical_operators: degenerate symplectic complement");
        }
        PauliOperator b = rest[partner];
        std::vector<PauliOperator> next;
        for (size_t i = 1; i < rest.size(); i++) {
            if (i == partner) {
                continue;
            }
            PauliOperator c = rest[i];
            if (!c.commutes(b)) {
                c *= a;
            }
            if (!c.commutes(a)) {
                c *= b;
            }
            c.set_phase(0);
            next.push_back(c);
        }
        a.set_phase(0);
        b.set_phase(0);
        out.z.push_back(a);
        out.x.push_back(b);
        rest = std::move(next);
    }
    return out;
}

bool DistanceResult::at_least(size_t bound) const {
    if (no_logicals) {
        return true;
    }
    return d ? *d >= bound : cap + 1 >= bound;
}

std::string DistanceResult::str() const {
    if (no_logicals) {
        return "no logicals";
    }
    if (d) {
        return std::to_string(*d);
    }
    return "> " + std::to_string(cap);
}

namespace {

void check_cap(size_t cap) {
    if (cap > kMaxExhaustiveCap) {
        throw std::invalid_argument("distance cap " + std::to_string(cap) + " exceeds the exhaustive limit " +
                                    std::to_string(kMaxExhaustiveCap));
    }
}

/// Minimum weight of a type-`letter` logical: syndromes from `checks`, effects from `duals`.
WeightSearchResult css_search(const GF2Matrix &checks, const std::vector<PauliOperator> &duals, bool dual_is_x,
                              size_t n, size_t cap) {
    GF2Matrix ct = checks.transpose();
    std::vector<SearchItem> items;
    for (size_t q = 0; q < n; q++) {
        SearchItem it;
        it.location = q;
        it.syndrome = ct.rows() ? ct.row(q) : GF2Vector(checks.rows());
        it.effect = GF2Vector(duals.size());
        for (size_t j = 0; j < duals.size(); j++) {
            it.effect.set(j, dual_is_x ? duals[j].x().get(q) : duals[j].z().get(q));
        }
        items.push_back(std::move(it));
    }
    return min_weight_logical(items, cap);
}

}  // namespace

DistanceResult distance(const CssCode &code, size_t cap) {
    check_cap(cap);
    DistanceResult r;
    r.cap = cap;
    auto logicals = logical_operators(code);
    if (logicals.k() == 0) {
        r.no_logicals = true;
        return r;
    }
    auto zr = css_search(code.hx, logicals.x, true, code.n, cap);
    auto xr = css_search(code.hz, logicals.z, false, code.n, cap);
    r.z_distance = zr.weight;
    r.x_distance = xr.weight;
    auto make = [&](const WeightSearchResult &w, bool z_type) {
        GF2Vector s(code.n);
        for (size_t i : w.witness) {
            s.set(i);
        }
        return z_type ? PauliOperator::z_type(s) : PauliOperator::x_type(s);
    };
    if (zr.weight && (!xr.weight || *zr.weight <= *xr.weight)) {
        r.d = zr.weight;
        r.witness = make(zr, true);
    } else if (xr.weight) {
        r.d = xr.weight;
        r.witness = make(xr, false);
    }
    return r;
}

DistanceResult distance(const StabilizerCode &code, size_t cap) {
    check_cap(cap);
    DistanceResult r;
    r.cap = cap;
    auto logicals = logical_operators(code);
    if (logicals.k() == 0) {
        r.no_logicals = true;
        return r;
    }
    std::vector<PauliOperator> effects = logicals.z;
    effects.insert(effects.end(), logicals.x.begin(), logicals.x.end());
    static const PauliLetter letters[] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
    std::vector<SearchItem> items;
    for (size_t q = 0; q < code.n; q++) {
        for (PauliLetter letter : letters) {
            bool px = static_cast<uint8_t>(letter) & 1;
            bool pz = static_cast<uint8_t>(letter) & 2;
            auto anti = [&](const PauliOperator &c) { return (c.x().get(q) && pz) != (c.z().get(q) && px); };
            SearchItem it;
            it.location = q;
            it.syndrome = GF2Vector(code.checks.size());
            for (size_t j = 0; j < code.checks.size(); j++) {
                it.syndrome.set(j, anti(code.checks[j]));
            }
            it.effect = GF2Vector(effects.size());
            for (size_t j = 0; j < effects.size(); j++) {
                it.effect.set(j, anti(effects[j]));
            }
            items.push_back(std::move(it));
        }
    }
    auto w = min_weight_logical(items, cap);
    if (w.weight) {
        r.d = w.weight;
        PauliOperator op(code.n);
        for (size_t i : w.witness) {
            op.set_letter(i / 3, letters[i % 3]);
        }
        r.witness = op;
    }
    return r;
}

GF2Matrix repetition_matrix(size_t len) {
    GF2Matrix m(len ? len - 1 : 0, len);
    for (size_t i = 0; i + 1 < len; i++) {
        m.set(i, i);
        m.set(i, i + 1);
    }
    return m;
}

GF2Matrix cycle_matrix(size_t len) {
    GF2Matrix m(len, len);
    for (size_t i = 0; i < len; i++) {
        m.set(i, i);
        m.set(i, (i + 1) % len);
    }
    return m;
}

CssCode hypergraph_product(const GF2Matrix &a, const GF2Matrix &b) {
    size_t m1 = a.rows(), n1 = a.cols(), m2 = b.rows(), n2 = b.cols();
    // Qubits: n1·n2 block first, then m1·m2.
    GF2Matrix left = kron(a, GF2Matrix::identity(n2));
    GF2Matrix right = kron(GF2Matrix::identity(m1), b.transpose());
    GF2Matrix hz_left = kron(GF2Matrix::identity(n1), b);
    GF2Matrix hz_right = kron(a.transpose(), GF2Matrix::identity(m2));
    size_t n = n1 * n2 + m1 * m2;
    auto hstack = [n](const GF2Matrix &l, const GF2Matrix &r, size_t rows) {
        GF2Matrix out(rows, n);
        for (size_t i = 0; i < rows; i++) {
            if (l.cols()) {
                for (size_t c : l.row(i).support()) {
                    out.set(i, c);
                }
            }
            if (r.cols()) {
                for (size_t c : r.row(i).support()) {
                    out.set(i, l.cols() + c);
                }
            }
        }
        return out;
    };
    return CssCode(hstack(left, right, m1 * n2), hstack(hz_left, hz_right, n1 * m2));
}

CssCode direct_sum(const CssCode &a, const CssCode &b) {
    return CssCode(block_diagonal(a.hx, b.hx), block_diagonal(a.hz, b.hz));
}

CssCode shor_code() {
    std::vector<std::vector<size_t>> z_rows, x_rows = {{0, 1, 2, 3, 4, 5}, {3, 4, 5, 6, 7, 8}};
    for (size_t block = 0; block < 3; block++) {
        z_rows.push_back({3 * block, 3 * block + 1});
        z_rows.push_back({3 * block + 1, 3 * block + 2});
    }
    return CssCode(GF2Matrix::from_supports(9, x_rows), GF2Matrix::from_supports(9, z_rows));
}

size_t TannerGraph::edge_count() const {
    size_t e = 0;
    for (const auto &c : checks) {
        e += c.edges.size();
    }
    return e;
}

size_t TannerGraph::count(CheckType type) const {
    size_t c = 0;
    for (const auto &ch : checks) {
        c += ch.type == type;
    }
    return c;
}

namespace {

TannerCheck check_node(const PauliOperator &op, std::optional<CheckType> forced) {
    TannerCheck c;
    bool has_x = false, has_z = false;
    for (size_t q : op.support().support()) {
        PauliLetter l = op.letter(q);
        EdgeLabel lab = l == PauliLetter::X ? EdgeLabel::X : l == PauliLetter::Z ? EdgeLabel::Z : EdgeLabel::Y;
        has_x |= lab != EdgeLabel::Z;
        has_z |= lab != EdgeLabel::X;
        c.edges.emplace_back(q, lab);
    }
    if (forced) {
        c.type = *forced;
    } else if (has_x && has_z) {
        c.type = CheckType::Mixed;
    } else {
        c.type = has_z ? CheckType::Z : CheckType::X;
    }
    return c;
}

}  // namespace

TannerGraph tanner_graph(const CssCode &code) {
    TannerGraph g;
    g.qubits = code.n;
    for (const auto &r : code.hx.row_data()) {
        g.checks.push_back(check_node(PauliOperator::x_type(r), CheckType::X));
    }
    for (const auto &r : code.hz.row_data()) {
        g.checks.push_back(check_node(PauliOperator::z_type(r), CheckType::Z));
    }
    return g;
}

TannerGraph tanner_graph(const StabilizerCode &code) {
    TannerGraph g;
    g.qubits = code.n;
    for (const auto &c : code.checks) {
        g.checks.push_back(check_node(c, std::nullopt));
    }
    return g;
}

CssCode css_from_tanner(const TannerGraph &graph) {
    GF2Matrix hx(0, graph.qubits), hz(0, graph.qubits);
    for (size_t i = 0; i < graph.checks.size(); i++) {
        const auto &c = graph.checks[i];
        if (c.type == CheckType::Mixed) {
            throw std::invalid_argument("css_from_tanner: check " + std::to_string(i) + " is mixed");
        }
        GF2Vector row(graph.qubits);
        for (const auto &[q, lab] : c.edges) {
            if ((c.type == CheckType::X) != (lab == EdgeLabel::X)) {
                throw std::invalid_argument("css_from_tanner: check " + std::to_string(i) +
                                            " has an edge label inconsistent with its type");
            }
            row.set(q);
        }
        (c.type == CheckType::X ? hx : hz).append_row(std::move(row));
    }
    CssCode code(std::move(hx), std::move(hz));
    code.n = graph.qubits;
    return code;
}

StabilizerCode stabilizer_from_tanner(const TannerGraph &graph) {
    std::vector<PauliOperator> checks;
    for (const auto &c : graph.checks) {
        PauliOperator op(graph.qubits);
        for (const auto &[q, lab] : c.edges) {
            op.set_letter(q, lab == EdgeLabel::X ? PauliLetter::X : lab == EdgeLabel::Z ? PauliLetter::Z : PauliLetter::Y);
        }
        checks.push_back(std::move(op));
    }
    return StabilizerCode(graph.qubits, std::move(checks));
}

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Manifest load_manifest(const std::string &path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string &p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? p : (base / fp).string();
    };
    Manifest m;
    try {
        m.name = j.at("name").get<std::string>();
        m.n = j.at("n").get<size_t>();
        m.hx_path = resolve(j.at("hx-path").get<std::string>());
        m.hz_path = resolve(j.at("hz-path").get<std::string>());
        if (j.contains("sigma")) {
            m.sigma = j.at("sigma").get<size_t>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return m;
}

CssCode load_code(const Manifest &manifest) {
    auto load = [](const std::string &p) {
        try {
            return GF2Matrix::from_text(read_file(p));
        } catch (const std::invalid_argument &e) {
            throw std::runtime_error(p + ": " + e.what());
        }
    };
    GF2Matrix hx = load(manifest.hx_path);
    GF2Matrix hz = load(manifest.hz_path);
    if (hx.cols() != manifest.n || hz.cols() != manifest.n) {
        throw std::runtime_error("manifest " + manifest.name + ": matrix width does not match n = " +
                                 std::to_string(manifest.n));
    }
    return CssCode(std::move(hx), std::move(hz));
}

}  // namespace qsurgery
