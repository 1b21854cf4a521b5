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

#ifndef QSURGERY_REPORT_H
#define QSURGERY_REPORT_H

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qsurgery/spacetime.h"
#include "qsurgery/stabsim.h"

namespace qsurgery {

constexpr int kSchemaVersion = 1;

/// Bad request or plan file: exit status 2 at the command line.
class SchemaError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// {"mode": "...", "products": ["Z0 X1", ...]}; `mode` may be overridden by the caller.
MeasurementRequest parse_request(const nlohmann::json &j);

/// Everything needed to rebuild a plan: plans are stored as their inputs plus a summary.
struct PlanInputs {
    std::string manifest;
    MeasurementRequest request;
    PlanOptions options;
};

nlohmann::json inputs_to_json(const PlanInputs &in);
PlanInputs inputs_from_json(const nlohmann::json &j);

nlohmann::json pauli_json(const PauliOperator &p);
nlohmann::json audit_json(const LdpcAudit &a);
nlohmann::json tree_json(const BranchTree &tree);

nlohmann::json inspect_report(const std::string &name, const CssCode &code, size_t cap, std::optional<size_t> sigma);
nlohmann::json plan_report(const SurgeryPlan &plan, const PlanInputs &in);
/// Pass iff every step certificate passes (inconclusive distances flagged, not failed).
nlohmann::json verify_report(const SurgeryPlan &plan);
nlohmann::json transcript_report(const Transcript &t);
nlohmann::json faultcheck_report(const DetectorModel &model, const FaultDistanceResult &full,
                                 const FaultDistanceResult &time_only, const ModelAudit &audit, size_t target,
                                 FaultMode gate = FaultMode::Full);

}  // namespace qsurgery

#endif
