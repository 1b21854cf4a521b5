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

#ifndef QSURGERY_PAULI_H
#define QSURGERY_PAULI_H

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qsurgery/gf2.h"

namespace qsurgery {

enum class PauliLetter : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char letter_char(PauliLetter p);
PauliLetter letter_from_char(char c);

/// A Pauli operator i^phase · P_0 ⊗ ... ⊗ P_{n-1} with P_q ∈ {I, X, Y, Z}.
///
/// Supports are kept in symplectic form (x | z) with Y = i·X·Z on each qubit, so the
/// letter string for supports (x, z) equals i^{|x∧z|} X(x) Z(z). `phase` is the power
/// of i multiplying the letter string.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t n) : x_(n), z_(n) {}
    PauliOperator(GF2Vector x, GF2Vector z, uint8_t phase = 0);

    static PauliOperator x_type(const GF2Vector &support, uint8_t phase = 0);
    static PauliOperator z_type(const GF2Vector &support, uint8_t phase = 0);
    static PauliOperator single(size_t n, size_t qubit, PauliLetter letter);
    /// Parses `+XIZY`, `-XX`, `iZ`, `-iY`; `_` is accepted for identity.
    static PauliOperator from_string(std::string_view text);

    size_t n() const { return x_.len(); }
    const GF2Vector &x() const { return x_; }
    const GF2Vector &z() const { return z_; }
    uint8_t phase() const { return phase_; }
    void set_phase(uint8_t phase) { phase_ = phase & 3; }

    PauliLetter letter(size_t q) const;
    void set_letter(size_t q, PauliLetter letter);

    size_t weight() const;
    size_t y_count() const { return x_.overlap(z_); }
    GF2Vector support() const { return x_ | z_; }
    bool is_identity() const { return x_.none() && z_.none(); }
    /// Letter string is Hermitian; true exactly when the phase is ±1.
    bool is_hermitian() const { return (phase_ & 1) == 0; }
    bool is_x_type() const { return z_.none(); }
    bool is_z_type() const { return x_.none(); }

    bool commutes(const PauliOperator &other) const;
    /// Same supports, phase ignored.
    bool same_support(const PauliOperator &other) const { return x_ == other.x_ && z_ == other.z_; }

    PauliOperator operator*(const PauliOperator &other) const;
    PauliOperator &operator*=(const PauliOperator &other);
    bool operator==(const PauliOperator &other) const = default;

    /// Copy on a larger register; new qubits act as identity.
    PauliOperator padded(size_t new_n) const;
    /// Letters at `qubits`, in order.
    PauliOperator restrict_to(std::span<const size_t> qubits) const;
    /// (x | z) of length 2n.
    GF2Vector symplectic() const;
    static PauliOperator from_symplectic(const GF2Vector &xz, uint8_t phase = 0);

    std::string str() const;

   private:
    GF2Vector x_;
    GF2Vector z_;
    uint8_t phase_ = 0;
};

/// Symplectic product parity; true when the operators anticommute.
inline bool anticommutes(const PauliOperator &a, const PauliOperator &b) { return !a.commutes(b); }

/// Rows (x | z) of a list of operators.
GF2Matrix symplectic_matrix(const std::vector<PauliOperator> &ops, size_t n);

/// Product of logical single-qubit Paulis, keyed by logical index.
struct LogicalPauliProduct {
    std::map<size_t, PauliLetter> terms;

    static LogicalPauliProduct parse(std::string_view text);
    std::string str() const;
    size_t weight() const { return terms.size(); }
    bool operator==(const LogicalPauliProduct &other) const = default;
};

bool logically_disjoint(const std::vector<LogicalPauliProduct> &products);
bool same_or_identity_compatible(const std::vector<LogicalPauliProduct> &products);

/// Logical Pauli as an operator on k logical qubits.
PauliOperator to_logical_operator(const LogicalPauliProduct &product, size_t k);

}  // namespace qsurgery

#endif
