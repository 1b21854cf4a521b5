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

#include "qsurgery/surgery.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace qsurgery {

const char *mode_name(RequestMode m) {
    switch (m) {
        case RequestMode::Disjoint:
            return "disjoint";
        case RequestMode::SameOrIdentity:
            return "same-or-identity";
        case RequestMode::Commuting:
            return "commuting";
    }
    return "?";
}

RequestMode mode_from_name(const std::string &name) {
    if (name == "disjoint") {
        return RequestMode::Disjoint;
    }
    if (name == "same-or-identity") {
        return RequestMode::SameOrIdentity;
    }
    if (name == "commuting") {
        return RequestMode::Commuting;
    }
    throw std::invalid_argument("unknown request mode '" + name + "'");
}

RequestError::RequestError(const std::string &what, size_t a, size_t b)
    : std::invalid_argument(what), first(a), second(b) {}

const char *window_name(WindowKind k) {
    switch (k) {
        case WindowKind::Branch:
            return "branch";
        case WindowKind::Measure:
            return "measure";
        case WindowKind::Unbranch:
            return "unbranch";
    }
    return "?";
}

const char *role_name(StepRole r) {
    switch (r) {
        case StepRole::Measure:
            return "measure";
        case StepRole::Prepare:
            return "prepare";
        case StepRole::Split:
            return "split";
        case StepRole::Readout:
            return "readout";
    }
    return "?";
}

namespace {

bool products_anticommute(const LogicalPauliProduct &a, const LogicalPauliProduct &b) {
    size_t clashes = 0;
    for (const auto &[idx, letter] : a.terms) {
        auto it = b.terms.find(idx);
        if (it != b.terms.end() && it->second != letter) {
            clashes++;
        }
    }
    return clashes % 2 == 1;
}

std::string pair_text(size_t i, size_t j) { return "products " + std::to_string(i) + " and " + std::to_string(j); }

size_t max_logical_index(const std::vector<LogicalPauliProduct> &products) {
    size_t m = 0;
    for (const auto &p : products) {
        for (const auto &[idx, letter] : p.terms) {
            m = std::max(m, idx + 1);
        }
    }
    return m;
}

bool form(const LogicalOp &a, const LogicalOp &b) { return a.x().overlap(b.z()) % 2 == 1; }

LogicalOp pad_logical(const LogicalOp &op, size_t k) { return op.n() == k ? op : op.padded(k); }

double log3(double w) {
    double l = std::log2(std::max(w, 2.0));
    return l * l * l;
}

size_t ceil_log2(size_t t) {
    size_t r = 0;
    while ((size_t{1} << r) < t) {
        r++;
    }
    return r;
}

}  // namespace

void validate_request(const MeasurementRequest &request) {
    const auto &ps = request.products;
    if (ps.empty()) {
        throw RequestError("request has no products", 0, 0);
    }
    for (size_t i = 0; i < ps.size(); i++) {
        if (ps[i].terms.empty()) {
            throw RequestError("product " + std::to_string(i) + " is empty", i, i);
        }
        for (size_t j = i + 1; j < ps.size(); j++) {
            switch (request.mode) {
                case RequestMode::Disjoint:
                    if (!logically_disjoint({ps[i], ps[j]})) {
                        throw RequestError(pair_text(i, j) + " share a logical qubit", i, j);
                    }
                    break;
                case RequestMode::SameOrIdentity:
                    if (!same_or_identity_compatible({ps[i], ps[j]})) {
                        throw RequestError(pair_text(i, j) + " act differently on a shared logical qubit", i, j);
                    }
                    break;
                case RequestMode::Commuting:
                    if (products_anticommute(ps[i], ps[j])) {
                        throw RequestError(pair_text(i, j) + " anticommute", i, j);
                    }
                    break;
            }
        }
    }
}

int TwistFreeGadget::reconstruction_sign() const {
    size_t power = odd() ? y_count + 1 : y_count;
    int s = (power % 4 == 0) ? 1 : -1;
    return product.phase() == 2 ? -s : s;
}

LogicalOp TwistFreeGadget::readout_correction() const { return split_x; }

TwistFreeGadget twist_free_decompose(const LogicalOp &product, size_t k, size_t ancilla_a,
                                     std::optional<size_t> ancilla_b) {
    if (!product.is_hermitian()) {
        throw std::invalid_argument("twist_free_decompose: product must be Hermitian");
    }
    TwistFreeGadget g;
    g.product = pad_logical(product, k);
    g.y_count = g.product.y_count();
    g.ancilla_a = ancilla_a;
    const GF2Vector &u = g.product.x(), &v = g.product.z();
    if (ancilla_a >= k || u.get(ancilla_a) || v.get(ancilla_a)) {
        throw std::invalid_argument("twist_free_decompose: ancilla A must be a free logical");
    }
    g.split_x = PauliOperator::x_type(u);
    g.split_z = PauliOperator::z_type(v);
    g.split_x.set_letter(ancilla_a, PauliLetter::X);
    g.split_z.set_letter(ancilla_a, PauliLetter::X);
    if (g.odd()) {
        if (!ancilla_b || *ancilla_b >= k || *ancilla_b == ancilla_a || u.get(*ancilla_b) || v.get(*ancilla_b)) {
            throw std::invalid_argument("twist_free_decompose: odd Y count needs a free catalyst logical B");
        }
        g.ancilla_b = ancilla_b;
        g.split_x.set_letter(*ancilla_b, PauliLetter::X);
        g.split_z.set_letter(*ancilla_b, PauliLetter::Z);
    }
    return g;
}

bool is_regular(const std::vector<LogicalOp> &ops) {
    for (size_t i = 0; i < ops.size(); i++) {
        for (size_t j = 0; j < ops.size(); j++) {
            if (i != j && form(ops[i], ops[j])) {
                return false;
            }
        }
    }
    return true;
}

RegularSplit regularize(const std::vector<LogicalOp> &theta) {
    for (size_t i = 0; i < theta.size(); i++) {
        for (size_t j = i + 1; j < theta.size(); j++) {
            if (!theta[i].commutes(theta[j])) {
                throw RequestError(pair_text(i, j) + " anticommute", i, j);
            }
        }
    }
    std::vector<LogicalOp> rest;
    if (!theta.empty()) {
        RowSpace space(2 * theta[0].n());
        for (const auto &t : theta) {
            if (space.insert(t.symplectic())) {
                rest.push_back(t);
            }
        }
    }
    RegularSplit out;
    while (!rest.empty()) {
        auto diag = std::find_if(rest.begin(), rest.end(), [](const LogicalOp &x) { return form(x, x); });
        if (diag != rest.end()) {
            LogicalOp x = *diag;
            rest.erase(diag);
            for (auto &y : rest) {
                if (form(x, y)) {
                    y *= x;
                }
            }
            out.first.push_back(x);
            continue;
        }
        std::optional<std::pair<size_t, size_t>> pair;
        for (size_t i = 0; i < rest.size() && !pair; i++) {
            for (size_t j = i + 1; j < rest.size(); j++) {
                if (form(rest[i], rest[j])) {
                    pair = {i, j};
                    break;
                }
            }
        }
        if (!pair) {
            out.first.insert(out.first.end(), rest.begin(), rest.end());
            break;
        }
        LogicalOp x = rest[pair->first], y = rest[pair->second];
        rest.erase(rest.begin() + pair->second);
        rest.erase(rest.begin() + pair->first);
        // hyperbolic pair: clear B(x, ·) and B(y, ·) from everything left
        for (auto &z : rest) {
            bool bx = form(x, z), by = form(y, z);
            if (by) {
                z *= x;
            }
            if (bx) {
                z *= y;
            }
        }
        out.first.push_back(x);
        out.second.push_back(y);
    }
    return out;
}

bool same_group(const std::vector<LogicalOp> &a, const std::vector<LogicalOp> &b) {
    if (a.empty() || b.empty()) {
        return a.empty() && b.empty();
    }
    size_t k = a[0].n();
    StabilizerCode ga(k, a), gb(k, b);
    return std::all_of(b.begin(), b.end(), [&](const LogicalOp &x) { return ga.in_group(x); }) &&
           std::all_of(a.begin(), a.end(), [&](const LogicalOp &x) { return gb.in_group(x); });
}

PauliOperator physical_logical(const LogicalBasis &basis, const LogicalOp &op) {
    PauliOperator out(basis.n);
    for (size_t q : op.support().support()) {
        out *= representative_for(basis, q, op.letter(q));
    }
    out.set_phase(out.phase() + op.phase());
    return out;
}

std::pair<LogicalPauliProduct, int> to_product(const LogicalOp &op) {
    if (!op.is_hermitian()) {
        throw std::invalid_argument("to_product: non-Hermitian logical operator");
    }
    LogicalPauliProduct p;
    for (size_t q : op.support().support()) {
        p.terms[q] = op.letter(q);
    }
    return {p, op.phase() == 0 ? 1 : -1};
}

bool StepCertificate::passes() const {
    return commuting && branch_k_preserved && measured_k_accounted && leaves_ok && products_in_group &&
           branch_distance != Certification::Fail && measured_distance != Certification::Fail &&
           branch_audit.passes() && measured_audit.passes();
}

bool SurgeryPlan::certified() const {
    return std::all_of(steps.begin(), steps.end(), [](const MeasurementStep &s) { return s.certificate.passes(); });
}

MeasurementStep build_step(const StabilizerCode &code, const LogicalBasis &basis,
                           const std::vector<LogicalPauliProduct> &products, const std::vector<int> &signs,
                           size_t d, const PlanOptions &options, const std::string &label) {
    MeasurementStep step;
    step.label = label;
    step.products = products;
    for (size_t i = 0; i < products.size(); i++) {
        ProductMeasurement m;
        m.product = products[i];
        m.sign = signs.at(i);
        m.representative = PauliOperator(code.n);
        for (const auto &[idx, letter] : products[i].terms) {
            if (idx >= basis.k()) {
                throw RequestError("product " + std::to_string(i) + " uses logical " + std::to_string(idx) +
                                       " but k = " + std::to_string(basis.k()),
                                   i, i);
            }
            m.terms.push_back(step.terms.size());
            step.terms.push_back(representative_for(basis, idx, letter));
            step.term_logical.push_back(idx);
            m.representative *= step.terms.back();
        }
        step.measurements.push_back(std::move(m));
    }
    // independence of the measured products as logical operators
    {
        RowSpace space(2 * basis.k());
        for (size_t i = 0; i < products.size(); i++) {
            if (!space.insert(to_logical_operator(products[i], basis.k()).symplectic())) {
                throw RequestError("product " + std::to_string(i) + " is dependent on earlier products", i, i);
            }
        }
        step.independent_products = products.size();
    }
    DeformedCode base(code);
    std::vector<PauliOperator> factors_of_term = step.terms;
    std::vector<std::vector<size_t>> certs(step.terms.size());
    if (step.terms.size() >= 2 || options.single_sticker) {
        auto br = build_branch_tree(base, step.terms, {.single_sticker = options.single_sticker});
        step.tree = br.tree;
        step.branched = br.deformed;
        for (const auto &leaf : br.tree.leaves) {
            factors_of_term[leaf.term] = leaf.op;
            certs[leaf.term] = leaf.cert_checks;
        }
    } else {
        step.branched = base;
    }
    step.measured = step.branched;
    for (size_t i = 0; i < step.measurements.size(); i++) {
        auto &m = step.measurements[i];
        std::vector<PauliOperator> factors;
        m.gauge_target = PauliOperator(step.branched.n());
        for (size_t t : m.terms) {
            factors.push_back(factors_of_term[t].padded(step.branched.n()));
            m.gauge_target *= factors.back();
            m.cert_checks.insert(m.cert_checks.end(), certs[t].begin(), certs[t].end());
        }
        m.graph = build_product_graph(step.branched.code, factors, options.gauge, options.seed + 101 * i);
        auto r = deform_with_gauge(step.measured, m.graph, m.gauge_target);
        step.measured = std::move(r.deformed);
        m.vertex_checks = r.vertex_checks;
        m.edge_qubits = r.edge_qubits;
        m.gauge_sign = r.sign;
    }
    auto &c = step.certificate;
    try {
        step.branched.code.check_commuting();
        step.measured.code.check_commuting();
        c.commuting = true;
    } catch (const CommutationViolation &) {
        c.commuting = false;
    }
    size_t k0 = code.k();
    c.branch_k_preserved = step.branched.code.k() == k0;
    c.measured_k_accounted = step.measured.code.k() + step.independent_products == k0;
    c.leaves_ok = !step.tree || (verify_leaf_certificates(*step.tree, step.branched, step.terms) &&
                                 leaves_disjoint(*step.tree));
    c.branch_distance = verify_distance_preserved(step.branched, d, options.cap);
    c.measured_distance = verify_distance_preserved(step.measured, d, options.cap);
    c.branch_audit = step.branched.code.audit(options.sigma);
    c.measured_audit = step.measured.code.audit(options.sigma);
    c.products_in_group = std::all_of(step.measurements.begin(), step.measurements.end(), [&](const auto &m) {
        return step.measured.code.in_group_up_to_sign(m.representative.padded(step.measured.n()));
    });
    return step;
}

namespace {

void finish_plan(SurgeryPlan &p, const PlanOptions &options) {
    p.schedule.clear();
    CostLedger &cost = p.cost;
    cost = {};
    double c_branch = 0;
    double c_gauge = static_cast<double>(options.gauge.degree_bound) / 2.0 + 1.0;
    double bound_sum = 0;
    for (size_t s = 0; s < p.steps.size(); s++) {
        const auto &step = p.steps[s];
        if (step.tree) {
            p.schedule.push_back({WindowKind::Branch, s, p.d, step.branched.n(), step.branched.code.checks.size()});
        }
        p.schedule.push_back({WindowKind::Measure, s, p.d, step.measured.n(), step.measured.code.checks.size()});
        if (step.tree) {
            p.schedule.push_back({WindowKind::Unbranch, s, p.d, p.code.n, p.code.checks.size()});
        }
        size_t branch_q = step.tree ? step.tree->ancilla_qubits() : 0;
        cost.branch_qubits += branch_q;
        cost.gauge_qubits += step.measured.n() - step.branched.n();
        cost.new_checks += step.measured.code.checks.size() - p.code.checks.size();
        if (step.tree) {
            c_branch = std::max(c_branch, static_cast<double>(step.tree->cost_constant()));
        }
        size_t t = step.terms.size(), omega = 0;
        for (const auto &term : step.terms) {
            omega = std::max(omega, term.weight());
        }
        if (t > cost.terms) {
            cost.terms = t;
        }
        cost.omega = std::max(cost.omega, omega);
        bound_sum += static_cast<double>(t * omega) *
                     (static_cast<double>(ceil_log2(std::max<size_t>(t, 2))) + log3(static_cast<double>(omega)));
    }
    for (const auto &w : p.schedule) {
        cost.rounds += w.rounds;
    }
    // branch part ≤ C_b·T·ω·(⌈log T⌉ + 1) and gauge part ≤ C_g·T·ω, so 2·max covers both
    cost.constant = 2 * std::max(c_branch, c_gauge);
    cost.bound = cost.constant * bound_sum;
}

size_t certified_distance(const StabilizerCode &code, size_t cap) {
    auto r = distance(code, cap);
    return r.d ? *r.d : cap + 1;
}

}  // namespace

SurgeryPlan plan(const CssCode &code, const MeasurementRequest &request, PlanOptions options) {
    validate_request(request);
    if (request.mode == RequestMode::Commuting) {
        return plan_commuting_set(code, request.products, options);
    }
    SurgeryPlan p;
    p.css = code;
    p.code = StabilizerCode::from_css(code);
    p.basis = chosen_basis(code);
    p.request = request;
    p.seed = options.seed;
    p.data_logicals = p.basis.k();
    if (max_logical_index(request.products) > p.basis.k()) {
        throw RequestError("request uses a logical index beyond k = " + std::to_string(p.basis.k()), 0, 0);
    }
    p.d = certified_distance(p.code, std::min(options.cap, kMaxExhaustiveCap));
    std::vector<int> signs(request.products.size(), 1);
    p.steps.push_back(build_step(p.code, p.basis, request.products, signs, p.d, options, "measure"));
    finish_plan(p, options);
    return p;
}

SurgeryPlan plan_commuting_set(const CssCode &code, const std::vector<LogicalPauliProduct> &theta,
                               PlanOptions options) {
    validate_request({theta, RequestMode::Commuting});
    if (same_or_identity_compatible(theta)) {
        auto p = plan(code, {theta, RequestMode::SameOrIdentity}, options);
        p.request.mode = RequestMode::Commuting;
        return p;
    }
    size_t k0 = code.k();
    if (max_logical_index(theta) > k0) {
        throw RequestError("request uses a logical index beyond k = " + std::to_string(k0), 0, 0);
    }
    std::vector<LogicalOp> ops;
    for (const auto &t : theta) {
        ops.push_back(to_logical_operator(t, k0));
    }
    RegularSplit split = regularize(ops);
    std::vector<std::vector<LogicalOp>> groups;
    for (auto *g : {&split.first, &split.second}) {
        if (!g->empty()) {
            groups.push_back(*g);
        }
    }
    size_t demand = 0;
    for (const auto &g : groups) {
        size_t need = 0;
        for (const auto &op : g) {
            need += 1 + (op.y_count() % 2);
        }
        demand = std::max(demand, need);
    }
    std::set<size_t> used;
    for (const auto &t : theta) {
        for (const auto &[idx, letter] : t.terms) {
            used.insert(idx);
        }
    }
    SurgeryPlan p;
    p.request = {theta, RequestMode::Commuting};
    p.seed = options.seed;
    p.data_logicals = k0;
    std::vector<size_t> ancillas;
    CssCode ext = code;
    if (k0 - used.size() >= demand) {
        for (size_t i = 0; i < k0 && ancillas.size() < demand; i++) {
            if (!used.count(i)) {
                ancillas.push_back(i);
            }
        }
    } else {
        size_t blocks = (demand + k0 - 1) / k0;
        for (size_t b = 0; b < blocks; b++) {
            ext = direct_sum(ext, code);
        }
        p.adjoined_blocks = blocks;
        for (size_t i = 0; i < demand; i++) {
            ancillas.push_back(k0 + i);
        }
    }
    p.css = ext;
    p.code = StabilizerCode::from_css(ext);
    p.basis = chosen_basis(ext);
    size_t kk = p.basis.k();
    p.d = certified_distance(StabilizerCode::from_css(code), std::min(options.cap, kMaxExhaustiveCap));
    std::set<size_t> catalysts, zeros;
    for (const auto &g : groups) {
        std::vector<size_t> idx;
        size_t next = 0;
        for (const auto &op : g) {
            size_t a = ancillas[next++];
            std::optional<size_t> b;
            if (op.y_count() % 2) {
                b = ancillas[next++];
                catalysts.insert(*b);
            }
            zeros.insert(a);
            idx.push_back(p.gadgets.size());
            p.gadgets.push_back(twist_free_decompose(pad_logical(op, kk), kk, a, b));
        }
        p.gadget_groups.push_back(idx);
    }
    p.catalysts.assign(catalysts.begin(), catalysts.end());
    p.ancilla_zeros.assign(zeros.begin(), zeros.end());
    // theta_i as signed products of the regularized generators
    std::vector<LogicalOp> gens;
    for (const auto &g : groups) {
        gens.insert(gens.end(), g.begin(), g.end());
    }
    GF2Matrix gm(0, 2 * k0);
    for (const auto &g : gens) {
        gm.append_row(g.symplectic());
    }
    for (size_t i = 0; i < theta.size(); i++) {
        auto combo = row_space_member(gm, ops[i].symplectic());
        if (!combo) {
            throw std::logic_error("plan_commuting_set: regularized set does not span the request");
        }
        SurgeryPlan::Reconstruction r;
        r.product = theta[i];
        LogicalOp prod(k0);
        for (size_t j : combo->support()) {
            r.generators.push_back(j);
            prod *= gens[j];
        }
        r.sign = prod.phase() == ops[i].phase() ? 1 : -1;
        p.reconstructions.push_back(r);
    }
    auto step_of = [&](const std::vector<LogicalOp> &lops, const std::string &label, StepRole role) {
        std::vector<LogicalPauliProduct> products;
        std::vector<int> signs;
        for (const auto &op : lops) {
            auto [prod, sign] = to_product(op);
            products.push_back(prod);
            signs.push_back(sign);
        }
        p.steps.push_back(build_step(p.code, p.basis, products, signs, p.d, options, label));
        p.steps.back().role = role;
        p.readout_gadgets.emplace_back();
    };
    {
        std::vector<LogicalOp> prep;
        for (size_t b : p.catalysts) {
            prep.push_back(PauliOperator::single(kk, b, PauliLetter::Y));
        }
        for (size_t a : p.ancilla_zeros) {
            prep.push_back(PauliOperator::single(kk, a, PauliLetter::Z));
        }
        step_of(prep, "prep", StepRole::Prepare);
    }
    for (size_t gi = 0; gi < p.gadget_groups.size(); gi++) {
        std::vector<LogicalOp> xs, zs, reads;
        for (size_t g : p.gadget_groups[gi]) {
            xs.push_back(p.gadgets[g].split_x);
            zs.push_back(p.gadgets[g].split_z);
            reads.push_back(PauliOperator::single(kk, p.gadgets[g].ancilla_a, PauliLetter::Z));
        }
        std::string tag = gi == 0 ? "'" : "''";
        step_of(xs, "u" + tag, StepRole::Split);
        step_of(zs, "v" + tag, StepRole::Split);
        step_of(reads, "readout" + tag, StepRole::Readout);
        p.readout_gadgets.back() = p.gadget_groups[gi];
    }
    finish_plan(p, options);
    return p;
}

}  // namespace qsurgery
