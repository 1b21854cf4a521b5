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

#ifndef QSURGERY_STABSIM_H
#define QSURGERY_STABSIM_H

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsurgery/surgery.h"

namespace qsurgery {

class SimulationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct MeasureOutcome {
    int value = 1;
    bool deterministic = true;
};

/// Pure stabilizer state in tableau form: n stabilizers and n destabilizers with
/// ⟨D_i, S_j⟩ = δ_ij and all destabilizers commuting.
class StabilizerState {
   public:
    StabilizerState() = default;
    /// |0…0⟩.
    explicit StabilizerState(size_t n);
    /// Throws SimulationError unless `stabs` are n commuting, independent, Hermitian operators.
    static StabilizerState from_generators(size_t n, std::vector<PauliOperator> stabs);

    size_t n() const { return n_; }
    const std::vector<PauliOperator> &stabilizers() const { return stabs_; }
    const std::vector<PauliOperator> &destabilizers() const { return destabs_; }

    /// Measures a Hermitian Pauli. `force` picks the outcome of a random measurement
    /// and is an error for a deterministic one.
    MeasureOutcome measure(const PauliOperator &op, std::mt19937_64 &rng, std::optional<int> force = std::nullopt);
    /// Eigenvalue of `op` when determined, nullopt when a measurement would be random.
    std::optional<int> peek(const PauliOperator &op) const;

    void apply_pauli(const PauliOperator &p);
    void h(size_t q);
    void s(size_t q);
    void cx(size_t control, size_t target);

    /// Appends qubits in |0⟩ (Z) or |+⟩ (X).
    void add_qubits(size_t count, PauliLetter basis);
    /// Drops qubits keep.. which must be unentangled from the rest.
    void remove_trailing_qubits(size_t keep);

    /// Same stabilizer group, signs included.
    bool same_state(const StabilizerState &other) const;

   private:
    size_t n_ = 0;
    std::vector<PauliOperator> stabs_;
    std::vector<PauliOperator> destabs_;
};

/// Checks of `code` plus signed operators in `eigen` (operator, ±1); together they
/// must fix a unique state.
StabilizerState prepare_codespace(const StabilizerCode &code, const std::vector<std::pair<PauliOperator, int>> &eigen);

/// Encodes a k-qubit logical stabilizer state into the plan's code; logicals beyond
/// the state's size (adjoined ancilla blocks) start in +Z.
StabilizerState encode_logical_state(const SurgeryPlan &plan, const StabilizerState &logical);

/// Random k-qubit stabilizer state from a seeded Clifford sequence.
StabilizerState random_logical_state(size_t k, std::mt19937_64 &rng, size_t gates = 0);

struct StepTranscript {
    std::string label;
    StepRole role = StepRole::Measure;
    /// First-round outcomes of every check in the window's code.
    std::vector<int> branch_checks;
    std::vector<int> measure_checks;
    /// X outcomes of edge qubits and of branch qubits when they are measured out.
    std::vector<int> edge_outcomes;
    std::vector<int> branch_outcomes;
    /// One per product, sign included.
    std::vector<int> product_outcomes;
    /// Frame applied when the step closes, on the plan code's qubits.
    PauliOperator frame;
    /// Logical corrections from gadget bookkeeping (prep resets, readout), physical form.
    PauliOperator logical_correction;
    /// Later rounds repeated the first and every consistency audit held.
    bool consistent = true;
    /// The plan code's checks stabilize the state with +1 after the step.
    bool restored = true;
};

struct Transcript {
    uint64_t seed = 0;
    std::vector<StepTranscript> steps;
    /// Outcome of each requested product (reconstructed for twist-free plans).
    std::vector<int> results;
    StabilizerState final_state;

    bool consistent() const;
};

struct SimOptions {
    /// Measure every check for the full window length instead of once.
    bool repeat_rounds = true;
};

/// Runs every step of a certified plan on `input`, a state of the plan's code.
Transcript run_surgery(const SurgeryPlan &plan, const StabilizerState &input, uint64_t seed, SimOptions options = {});

}  // namespace qsurgery

#endif
