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

// qsurgery: inspect codes, synthesize and certify surgery plans, simulate them and
// check fault distances of their branching windows.
//
// Summaries go to stderr; the JSON report goes to --out, or stdout without it.
// Exit status: 0 pass, 1 certification failure, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsurgery/report.h"

using namespace qsurgery;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error &e) {
        throw SchemaError(path + ": " + e.what());
    }
}

void emit(const json &report, const std::string &out) {
    if (out.empty()) {
        std::cout << report.dump(2) << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) {
        throw UsageError("cannot write " + out);
    }
    f << report.dump(2) << '\n';
}

CssCode load(const std::string &manifest_path, Manifest *manifest = nullptr) {
    Manifest m;
    try {
        m = load_manifest(manifest_path);
    } catch (const std::exception &e) {
        throw SchemaError(e.what());
    }
    if (manifest) {
        *manifest = m;
    }
    auto code = load_code(m);
    if (code.n != m.n) {
        throw SchemaError(manifest_path + ": manifest says n=" + std::to_string(m.n) + ", matrices have " +
                          std::to_string(code.n) + " columns");
    }
    return code;
}

SurgeryPlan rebuild(const std::string &plan_path, PlanInputs *inputs = nullptr) {
    auto j = read_json(plan_path);
    if (!j.is_object() || j.value("schema", 0) != kSchemaVersion || !j.contains("inputs")) {
        throw SchemaError(plan_path + ": not a schema 1 plan report");
    }
    auto in = inputs_from_json(j["inputs"]);
    auto p = plan(load(in.manifest), in.request, in.options);
    // plans are deterministic in their inputs; a stale file shows up here
    if (j.contains("n") && (j["n"] != p.code.n || j["k"] != p.basis.k() || j["steps"].size() != p.steps.size())) {
        throw SchemaError(plan_path + ": plan summary does not match its inputs");
    }
    if (inputs) {
        *inputs = in;
    }
    return p;
}

// "Z0=+1,X1 X2=-1" on the data logicals; unnamed logicals take +Z (or +X, +Y) greedily.
StabilizerState logical_input(const std::string &spec, size_t k, uint64_t seed) {
    if (spec == "random") {
        std::mt19937_64 rng(seed);
        return random_logical_state(k, rng);
    }
    std::vector<std::pair<PauliOperator, int>> eigen;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw UsageError("input item needs '=': " + item);
        }
        int v = std::stoi(item.substr(eq + 1));
        if (v != 1 && v != -1) {
            throw UsageError("input value must be +1 or -1: " + item);
        }
        LogicalPauliProduct p;
        try {
            p = LogicalPauliProduct::parse(item.substr(0, eq));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        eigen.push_back({to_logical_operator(p, k), v});
    }
    auto independent = [&](const PauliOperator &op) {
        std::vector<PauliOperator> ops;
        for (const auto &[o, v] : eigen) {
            if (!o.commutes(op)) {
                return false;
            }
            ops.push_back(o);
        }
        size_t r = rank(symplectic_matrix(ops, k));
        ops.push_back(op);
        return rank(symplectic_matrix(ops, k)) > r;
    };
    for (size_t i = 0; i < k && eigen.size() < k; i++) {
        for (PauliLetter l : {PauliLetter::Z, PauliLetter::X, PauliLetter::Y}) {
            auto op = PauliOperator::single(k, i, l);
            if (independent(op)) {
                eigen.push_back({op, 1});
                break;
            }
        }
    }
    try {
        return prepare_codespace(StabilizerCode(k, {}), eigen);
    } catch (const SimulationError &e) {
        throw UsageError(std::string("input spec: ") + e.what());
    }
}

int cmd_inspect(const std::string &manifest, size_t cap, std::optional<size_t> sigma, const std::string &out) {
    Manifest m;
    auto code = load(manifest, &m);
    json report;
    try {
        report = inspect_report(m.name, code, cap, sigma ? sigma : m.sigma);
    } catch (const std::exception &e) {
        std::cerr << manifest << ": " << e.what() << '\n';
        emit({{"schema", kSchemaVersion}, {"command", "inspect"}, {"name", m.name}, {"error", e.what()}}, out);
        return kFail;
    }
    const auto &d = report["distance"];
    std::cerr << m.name << ": n=" << report["n"] << " k=" << report["k"] << " d="
              << (d["d"].is_null() ? "> cap " + std::to_string(cap) : d["d"].dump()) << '\n';
    emit(report, out);
    return report["audit"]["pass"].get<bool>() ? kPass : kFail;
}

int cmd_plan(const std::string &manifest, const std::string &request_path, PlanOptions options,
             const std::string &mode, const std::string &out) {
    PlanInputs in;
    in.manifest = std::filesystem::absolute(manifest).string();
    in.request = parse_request(read_json(request_path));
    if (!mode.empty()) {
        in.request.mode = mode_from_name(mode);
    }
    in.options = options;
    auto p = plan(load(in.manifest), in.request, in.options);
    auto report = plan_report(p, in);
    std::cerr << "plan: " << p.steps.size() << " step(s), " << p.cost.ancilla_qubits() << " ancilla qubits, "
              << (p.basis.k() - p.data_logicals) << " ancilla logicals, certified=" << p.certified() << '\n';
    emit(report, out);
    return p.certified() ? kPass : kFail;
}

int cmd_verify(const std::string &plan_path, const std::string &out) {
    auto p = rebuild(plan_path);
    auto report = verify_report(p);
    std::cerr << "verify: " << (report["pass"].get<bool>() ? "pass" : "FAIL")
              << (report["inconclusive"].get<bool>() ? " (some distances inconclusive)" : "") << '\n';
    emit(report, out);
    return report["pass"].get<bool>() ? kPass : kFail;
}

int cmd_simulate(const std::string &plan_path, const std::string &input, uint64_t seed, const std::string &out) {
    auto p = rebuild(plan_path);
    auto logical = logical_input(input, p.data_logicals, seed);
    auto t = run_surgery(p, encode_logical_state(p, logical), seed);
    auto report = transcript_report(t);
    std::cerr << "simulate: results";
    for (int r : t.results) {
        std::cerr << ' ' << (r > 0 ? "+1" : "-1");
    }
    std::cerr << (t.consistent() ? "" : " (INCONSISTENT)") << '\n';
    emit(report, out);
    return t.consistent() ? kPass : kFail;
}

int cmd_faultcheck(const std::string &plan_path, const std::string &window, size_t step, std::optional<size_t> rounds,
                   size_t cap, const std::string &gate_name, const std::string &out) {
    auto p = rebuild(plan_path);
    if (step >= p.steps.size()) {
        throw UsageError("plan has " + std::to_string(p.steps.size()) + " step(s)");
    }
    Schedule sched{rounds.value_or(p.d)};
    const auto &deformed = p.steps[step].branched;
    DetectorModel model;
    if (window == "branch") {
        model = build_branch_detectors(deformed, sched);
    } else if (window == "unbranch") {
        model = build_unbranch_detectors(deformed, sched);
    } else {
        throw UsageError("--window must be branch or unbranch");
    }
    FaultMode gate = gate_name == "time" ? FaultMode::TimeOnly : FaultMode::Full;
    auto full = fault_distance(model, cap, FaultMode::Full);
    auto time_only = fault_distance(model, cap, FaultMode::TimeOnly);
    auto audit = audit_model(model);
    size_t target = gate == FaultMode::Full ? std::min(p.d, sched.rounds) : sched.rounds;
    auto report = faultcheck_report(model, full, time_only, audit, target, gate);
    auto show = [&](const FaultDistanceResult &r) {
        return r.distance ? std::to_string(*r.distance) : "> cap " + std::to_string(cap);
    };
    std::cerr << "faultcheck: " << window << " window, " << sched.rounds << " round(s): fault distance "
              << show(full) << ", time-only " << show(time_only) << '\n';
    emit(report, out);
    return report["pass"].get<bool>() ? kPass : kFail;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qsurgery: logical measurements on qLDPC codes by branching and gauging"};
    app.require_subcommand(1);

    std::string manifest, request, plan_file, out, mode, input = "random", window = "branch", gate = "full";
    uint64_t seed = 1;
    size_t cap = 8, fault_cap = 4, step = 0;
    std::optional<size_t> sigma, rounds;
    bool single_sticker = false;

    auto *inspect = app.add_subcommand("inspect", "Report n, k, check-weight audit and certified distance");
    inspect->add_option("manifest", manifest, "Code manifest (JSON)")->required();
    inspect->add_option("--cap", cap, "Distance search cap");
    inspect->add_option("--sigma", sigma, "LDPC bound for the audit");
    inspect->add_option("--out", out, "Write the JSON report here");

    auto *planc = app.add_subcommand("plan", "Synthesize and certify a surgery plan");
    planc->add_option("manifest", manifest, "Code manifest (JSON)")->required();
    planc->add_option("request", request, "Request file (JSON)")->required();
    planc->add_option("--seed", seed, "Seed for graph construction");
    planc->add_option("--cap", cap, "Distance certification cap");
    planc->add_option("--sigma", sigma, "LDPC bound for deformed-code audits");
    planc->add_option("--mode", mode, "Override the request mode")
        ->check(CLI::IsMember({"disjoint", "same-or-identity", "commuting"}));
    planc->add_flag("--single-sticker", single_sticker, "Branch even single-term steps");
    planc->add_option("--out", out, "Write the plan here");

    auto *verify = app.add_subcommand("verify", "Re-certify a plan file");
    verify->add_option("plan", plan_file, "Plan file from `plan`")->required();
    verify->add_option("--out", out, "Write the JSON report here");

    auto *simulate = app.add_subcommand("simulate", "Run a plan on the stabilizer simulator");
    simulate->add_option("plan", plan_file, "Plan file from `plan`")->required();
    simulate->add_option("--input", input, "'random' or a list like 'Z0=+1,X1=-1'");
    simulate->add_option("--seed", seed, "Simulation seed");
    simulate->add_option("--out", out, "Write the transcript here");

    auto *faultcheck = app.add_subcommand("faultcheck", "Fault distance of a plan step's branching window");
    faultcheck->add_option("plan", plan_file, "Plan file from `plan`")->required();
    faultcheck->add_option("--window", window, "branch or unbranch")->check(CLI::IsMember({"branch", "unbranch"}));
    faultcheck->add_option("--step", step, "Step index");
    faultcheck->add_option("--rounds", rounds, "t_o - t_i (default: the code distance)");
    faultcheck->add_option("--cap", fault_cap, "Fault-set weight cap");
    faultcheck->add_option("--gate", gate, "Mode that decides pass/fail: full or time")
        ->check(CLI::IsMember({"full", "time"}));
    faultcheck->add_option("--out", out, "Write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*inspect) {
            return cmd_inspect(manifest, cap, sigma, out);
        }
        if (*planc) {
            PlanOptions options;
            options.seed = seed;
            options.cap = cap;
            options.sigma = sigma;
            options.single_sticker = single_sticker;
            return cmd_plan(manifest, request, options, mode, out);
        }
        if (*verify) {
            return cmd_verify(plan_file, out);
        }
        if (*simulate) {
            return cmd_simulate(plan_file, input, seed, out);
        }
        if (*faultcheck) {
            return cmd_faultcheck(plan_file, window, step, rounds, fault_cap, gate, out);
        }
    } catch (const SchemaError &e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const RequestError &e) {
        std::cerr << "request error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}
