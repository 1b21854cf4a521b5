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

#ifndef QSURGERY_SPACETIME_H
#define QSURGERY_SPACETIME_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsurgery/branching.h"

namespace qsurgery {

/// Phenomenological window around one deformation. `rounds` = t_o − t_i faulty
/// rounds of the deformed code; `pre_rounds` / `post_rounds` faulty rounds of the
/// original code before entry / after exit. Outer boundary rounds are perfect.
struct Schedule {
    size_t rounds = 1;
    size_t pre_rounds = 0;
    size_t post_rounds = 0;
};

/// One measurement (or initialization) in the model.
struct Event {
    size_t round = 0;
    /// "s", "s~", "A", "B" for checks, "X" for a readout, "init" for a |+⟩ preparation.
    std::string family;
    /// Check index in the round's code, or qubit for readouts and inits.
    size_t index = 0;
    PauliOperator op;
    bool faulty = false;
    std::string label() const;
};

struct Detector {
    std::string family;
    /// Integer time t of s_j^t style labels, counted in rounds.
    size_t time = 0;
    size_t index = 0;
    std::vector<size_t> events;
    std::string label() const;
};

enum class FaultKind { Space, Measurement, Init };

struct Fault {
    FaultKind kind = FaultKind::Space;
    /// Space: the gap before round `time`; Measurement / Init: the event's round.
    size_t time = 0;
    size_t qubit = 0;
    PauliLetter letter = PauliLetter::I;
    /// Event for Measurement and Init faults.
    size_t event = 0;
    std::vector<size_t> detectors;
    std::vector<size_t> observables;
    std::string label() const;
};

struct DetectorModel {
    std::string kind;
    Schedule schedule;
    size_t original_n = 0;
    size_t deformed_n = 0;
    std::vector<Event> events;
    std::vector<Detector> detectors;
    std::vector<Fault> faults;
    std::vector<std::string> observables;
    /// Spacetime stabilizer generators as fault-id sets.
    std::vector<std::vector<size_t>> stabilizers;
    std::vector<std::string> stabilizer_labels;
    /// Gap index (time) of the deformation step t_i, used as the default cleaning target.
    size_t entry_gap = 0;

    std::string export_lines() const;
};

struct ModelAudit {
    /// Every detector has parity +1 in every noiseless replay.
    bool deterministic = true;
    /// Detector rank equals the number of deterministic measurements in a replay.
    bool complete = true;
    size_t detector_rank = 0;
    size_t deterministic_measurements = 0;
    /// Every stabilizer generator has empty syndrome and flips no observable.
    bool stabilizers_trivial = true;
    /// Generators span every syndrome-free fault set that flips no observable.
    bool stabilizers_complete = true;
};

class SpacetimeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Entry into `deformed` at t_i; A checks are handed off after the last round.
DetectorModel build_branch_detectors(const DeformedCode &deformed, Schedule schedule);
/// Exit from `deformed` at t_o by measuring every new qubit in X.
DetectorModel build_unbranch_detectors(const DeformedCode &deformed, Schedule schedule);

/// Noiseless replays through the stabilizer simulator.
ModelAudit audit_model(const DetectorModel &model, size_t replays = 4, uint64_t seed = 1);

/// XOR of generator syndromes; throws SpacetimeError on an unknown id.
std::vector<size_t> syndrome_of(const std::vector<size_t> &faults, const DetectorModel &model);
std::vector<size_t> observables_of(const std::vector<size_t> &faults, const DetectorModel &model);

enum class FaultMode { Full, TimeOnly };

struct FaultDistanceResult {
    /// nullopt: every logical has weight above the cap.
    std::optional<size_t> distance;
    size_t cap = 0;
    std::vector<size_t> witness;
    bool inconclusive() const { return !distance; }
};

/// Minimum weight of a syndrome-free fault set that flips an observable.
FaultDistanceResult fault_distance(const DetectorModel &model, size_t cap = 4, FaultMode mode = FaultMode::Full);

struct Decoupled {
    /// Space faults, all at `time`.
    std::vector<size_t> space;
    /// Measurement faults.
    std::vector<size_t> time_part;
    size_t time = 0;
};

/// Moves every space fault to one gap with stabilizer generators. The result differs
/// from the input by a product of generators.
Decoupled decouple(const std::vector<size_t> &faults, const DetectorModel &model, std::optional<size_t> time = std::nullopt);

/// True when a ⊕ b lies in the span of the model's stabilizer generators.
bool equivalent(const std::vector<size_t> &a, const std::vector<size_t> &b, const DetectorModel &model);

/// Fault id lookup helpers.
std::optional<size_t> find_space_fault(const DetectorModel &model, size_t time, size_t qubit, PauliLetter letter);
std::optional<size_t> find_measurement_fault(const DetectorModel &model, size_t round, const std::string &family,
                                             size_t index);

}  // namespace qsurgery

#endif
