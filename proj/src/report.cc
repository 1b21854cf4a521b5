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

#include "qsurgery/report.h"

namespace qsurgery {

using nlohmann::json;

MeasurementRequest parse_request(const json &j) {
    if (!j.is_object()) {
        throw SchemaError("request must be a JSON object");
    }
    MeasurementRequest r;
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) {
            throw SchemaError("request.mode must be a string");
        }
        try {
            r.mode = mode_from_name(j["mode"].get<std::string>());
        } catch (const std::exception &e) {
            throw SchemaError(std::string("request.mode: ") + e.what());
        }
    }
    if (!j.contains("products") || !j["products"].is_array() || j["products"].empty()) {
        throw SchemaError("request.products must be a non-empty array of strings");
    }
    for (size_t i = 0; i < j["products"].size(); i++) {
        const auto &p = j["products"][i];
        if (!p.is_string()) {
            throw SchemaError("request.products[" + std::to_string(i) + "] must be a string");
        }
        try {
            r.products.push_back(LogicalPauliProduct::parse(p.get<std::string>()));
        } catch (const std::invalid_argument &e) {
            throw SchemaError("request.products[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return r;
}

json inputs_to_json(const PlanInputs &in) {
    json products = json::array();
    for (const auto &p : in.request.products) {
        products.push_back(p.str());
    }
    json j = {{"manifest", in.manifest},
              {"request", {{"mode", mode_name(in.request.mode)}, {"products", products}}},
              {"seed", in.options.seed},
              {"cap", in.options.cap},
              {"single_sticker", in.options.single_sticker}};
    if (in.options.sigma) {
        j["sigma"] = *in.options.sigma;
    }
    return j;
}

PlanInputs inputs_from_json(const json &j) {
    PlanInputs in;
    try {
        in.manifest = j.at("manifest").get<std::string>();
        in.request = parse_request(j.at("request"));
        in.options.seed = j.at("seed").get<uint64_t>();
        in.options.cap = j.at("cap").get<size_t>();
        in.options.single_sticker = j.value("single_sticker", false);
        if (j.contains("sigma")) {
            in.options.sigma = j["sigma"].get<size_t>();
        }
    } catch (const json::exception &e) {
        throw SchemaError(std::string("plan inputs: ") + e.what());
    }
    return in;
}

json pauli_json(const PauliOperator &p) { return p.str(); }

json audit_json(const LdpcAudit &a) {
    json j = {{"max_check_weight", a.max_check_weight}, {"max_qubit_degree", a.max_qubit_degree}, {"pass", a.passes()}};
    if (a.sigma) {
        j["sigma"] = *a.sigma;
    }
    return j;
}

json tree_json(const BranchTree &tree) {
    json stickers = json::array();
    for (const auto &s : tree.stickers) {
        json js = {{"level", s.level},  {"terms", s.terms},       {"attach", s.attach},
                   {"copies", s.copies}, {"layer1", s.layer1},    {"z_checks", s.z_checks},
                   {"x_checks", s.x_checks}};
        js["parent"] = s.parent ? json(*s.parent) : json(nullptr);
        stickers.push_back(std::move(js));
    }
    json leaves = json::array();
    for (const auto &l : tree.leaves) {
        leaves.push_back({{"term", l.term},
                          {"sticker", l.sticker ? json(*l.sticker) : json(nullptr)},
                          {"op", l.op.str()},
                          {"cert_checks", l.cert_checks}});
    }
    return {{"depth", tree.depth}, {"ancilla_qubits", tree.ancilla_qubits()}, {"new_checks", tree.new_checks()},
            {"stickers", stickers}, {"leaves", leaves}};
}

json inspect_report(const std::string &name, const CssCode &code, size_t cap, std::optional<size_t> sigma) {
    auto v = validate(code, sigma);
    auto d = distance(code, cap);
    json dist = {{"cap", cap}, {"certified", d.d.has_value()}};
    dist["d"] = d.d ? json(*d.d) : json(nullptr);
    if (d.x_distance) {
        dist["x"] = *d.x_distance;
    }
    if (d.z_distance) {
        dist["z"] = *d.z_distance;
    }
    if (d.no_logicals) {
        dist["no_logicals"] = true;
    }
    return {{"schema", kSchemaVersion}, {"command", "inspect"}, {"name", name}, {"n", v.n},
            {"k", v.k},                 {"audit", audit_json(v.audit)}, {"distance", dist}};
}

namespace {

const char *cert_name(Certification c) { return certification_name(c); }

json step_json(const MeasurementStep &s) {
    json products = json::array();
    for (const auto &p : s.products) {
        products.push_back(p.str());
    }
    json meas = json::array();
    for (const auto &m : s.measurements) {
        meas.push_back({{"product", m.product.str()},
                        {"sign", m.sign},
                        {"representative", m.representative.str()},
                        {"vertices", m.graph.vertex_count()},
                        {"edges", m.graph.edges.size()},
                        {"faces", m.graph.faces.size()},
                        {"cert_checks", m.cert_checks}});
    }
    json j = {{"label", s.label},
              {"role", role_name(s.role)},
              {"products", products},
              {"terms", s.terms.size()},
              {"branch_qubits", s.branched.new_qubit_count()},
              {"measured_qubits", s.measured.n()},
              {"measurements", meas}};
    j["tree"] = s.tree ? tree_json(*s.tree) : json(nullptr);
    return j;
}

json certificate_json(const StepCertificate &c) {
    return {{"commuting", c.commuting},
            {"branch_k_preserved", c.branch_k_preserved},
            {"measured_k_accounted", c.measured_k_accounted},
            {"leaves_ok", c.leaves_ok},
            {"branch_distance", cert_name(c.branch_distance)},
            {"measured_distance", cert_name(c.measured_distance)},
            {"branch_audit", audit_json(c.branch_audit)},
            {"measured_audit", audit_json(c.measured_audit)},
            {"products_in_group", c.products_in_group},
            {"inconclusive", c.branch_distance == Certification::Inconclusive ||
                                 c.measured_distance == Certification::Inconclusive},
            {"pass", c.passes()}};
}

}  // namespace

json plan_report(const SurgeryPlan &plan, const PlanInputs &in) {
    json steps = json::array();
    for (const auto &s : plan.steps) {
        steps.push_back(step_json(s));
    }
    json schedule = json::array();
    for (const auto &w : plan.schedule) {
        schedule.push_back(
            {{"kind", window_name(w.kind)}, {"step", w.step}, {"rounds", w.rounds}, {"qubits", w.qubits}});
    }
    const auto &c = plan.cost;
    json cost = {{"branch_qubits", c.branch_qubits}, {"gauge_qubits", c.gauge_qubits},
                 {"ancilla_qubits", c.ancilla_qubits()}, {"new_checks", c.new_checks},
                 {"rounds", c.rounds},                 {"terms", c.terms},
                 {"omega", c.omega},                   {"constant", c.constant},
                 {"bound", c.bound},                   {"within_bound", c.within_bound()}};
    json groups = plan.gadget_groups;
    return {{"schema", kSchemaVersion},
            {"command", "plan"},
            {"inputs", inputs_to_json(in)},
            {"n", plan.code.n},
            {"k", plan.basis.k()},
            {"d", plan.d},
            {"data_logicals", plan.data_logicals},
            {"ancilla_logicals", plan.basis.k() - plan.data_logicals},
            {"adjoined_blocks", plan.adjoined_blocks},
            {"gadgets", plan.gadgets.size()},
            {"gadget_groups", groups},
            {"catalysts", plan.catalysts},
            {"steps", steps},
            {"schedule", schedule},
            {"cost", cost},
            {"certified", plan.certified()}};
}

json verify_report(const SurgeryPlan &plan) {
    json steps = json::array();
    bool inconclusive = false;
    for (const auto &s : plan.steps) {
        auto c = certificate_json(s.certificate);
        inconclusive |= c["inconclusive"].get<bool>();
        c["label"] = s.label;
        steps.push_back(std::move(c));
    }
    return {{"schema", kSchemaVersion}, {"command", "verify"},         {"steps", steps},
            {"inconclusive", inconclusive}, {"pass", plan.certified()}, {"cost_within_bound", plan.cost.within_bound()}};
}

json transcript_report(const Transcript &t) {
    json steps = json::array();
    for (const auto &s : t.steps) {
        steps.push_back({{"label", s.label},
                         {"role", role_name(s.role)},
                         {"product_outcomes", s.product_outcomes},
                         {"branch_checks", s.branch_checks},
                         {"measure_checks", s.measure_checks},
                         {"edge_outcomes", s.edge_outcomes},
                         {"branch_outcomes", s.branch_outcomes},
                         {"frame", s.frame.str()},
                         {"consistent", s.consistent},
                         {"restored", s.restored}});
    }
    return {{"schema", kSchemaVersion}, {"command", "simulate"}, {"seed", t.seed},
            {"results", t.results},     {"steps", steps},        {"consistent", t.consistent()}};
}

json faultcheck_report(const DetectorModel &model, const FaultDistanceResult &full, const FaultDistanceResult &time_only,
                       const ModelAudit &audit, size_t target, FaultMode gate) {
    auto result = [&](const FaultDistanceResult &r) {
        json w = json::array();
        for (size_t f : r.witness) {
            const auto &x = model.faults[f];
            w.push_back(x.kind == FaultKind::Measurement ? "meas " + model.events[x.event].label() : x.label());
        }
        json j = {{"cap", r.cap}, {"inconclusive", r.inconclusive()}, {"witness", w}};
        j["distance"] = r.distance ? json(*r.distance) : json(nullptr);
        return j;
    };
    bool pass = audit.deterministic && audit.complete && audit.stabilizers_trivial &&
                [&](const FaultDistanceResult &r) { return !r.distance || *r.distance >= target; }(
                    gate == FaultMode::Full ? full : time_only);
    return {{"schema", kSchemaVersion},
            {"command", "faultcheck"},
            {"window", model.kind},
            {"rounds", model.schedule.rounds},
            {"detectors", model.detectors.size()},
            {"faults", model.faults.size()},
            {"target", target},
            {"gate", gate == FaultMode::Full ? "full" : "time"},
            {"audit",
             {{"deterministic", audit.deterministic},
              {"complete", audit.complete},
              {"stabilizers_trivial", audit.stabilizers_trivial},
              {"stabilizers_complete", audit.stabilizers_complete}}},
            {"full", result(full)},
            {"time_only", result(time_only)},
            {"pass", pass}};
}

}  // namespace qsurgery
