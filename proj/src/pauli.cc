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

#include "qsurgery/pauli.h"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace qsurgery {

char letter_char(PauliLetter p) {
    switch (p) {
        case PauliLetter::I:
            return 'I';
        case PauliLetter::X:
            return 'X';
        case PauliLetter::Z:
            return 'Z';
        case PauliLetter::Y:
            return 'Y';
    }
    return '?';
}

PauliLetter letter_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return PauliLetter::I;
        case 'X':
            return PauliLetter::X;
        case 'Y':
            return PauliLetter::Y;
        case 'Z':
            return PauliLetter::Z;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
}

PauliOperator::PauliOperator(GF2Vector x, GF2Vector z, uint8_t phase)
    : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3) {
    if (x_.len() != z_.len()) {
        throw std::invalid_argument("PauliOperator: x and z supports differ in length");
    }
}

PauliOperator PauliOperator::x_type(const GF2Vector &support, uint8_t phase) {
    return PauliOperator(support, GF2Vector(support.len()), phase);
}

PauliOperator PauliOperator::z_type(const GF2Vector &support, uint8_t phase) {
    return PauliOperator(GF2Vector(support.len()), support, phase);
}

PauliOperator PauliOperator::single(size_t n, size_t qubit, PauliLetter letter) {
    PauliOperator p(n);
    p.set_letter(qubit, letter);
    return p;
}

PauliOperator PauliOperator::from_string(std::string_view text) {
    uint8_t phase = 0;
    size_t pos = 0;
    if (text.substr(0, 2) == "-i") {
        phase = 3;
        pos = 2;
    } else if (text.substr(0, 2) == "+i") {
        phase = 1;
        pos = 2;
    } else if (!text.empty() && text[0] == 'i') {
        phase = 1;
        pos = 1;
    } else if (!text.empty() && text[0] == '-') {
        phase = 2;
        pos = 1;
    } else if (!text.empty() && text[0] == '+') {
        pos = 1;
    }
    std::string_view body = text.substr(pos);
    PauliOperator p(body.size());
    for (size_t q = 0; q < body.size(); q++) {
        p.set_letter(q, letter_from_char(body[q]));
    }
    p.phase_ = phase;
    return p;
}

PauliLetter PauliOperator::letter(size_t q) const {
    return static_cast<PauliLetter>((x_.get(q) ? 1 : 0) | (z_.get(q) ? 2 : 0));
}

void PauliOperator::set_letter(size_t q, PauliLetter letter) {
    auto bits = static_cast<uint8_t>(letter);
    x_.set(q, bits & 1);
    z_.set(q, bits & 2);
}

size_t PauliOperator::weight() const { return support().weight(); }

bool PauliOperator::commutes(const PauliOperator &other) const {
    if (n() != other.n()) {
        throw std::invalid_argument("PauliOperator::commutes: size mismatch");
    }
    return ((x_.overlap(other.z_) + z_.overlap(other.x_)) & 1) == 0;
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const {
    PauliOperator out = *this;
    out *= other;
    return out;
}

PauliOperator &PauliOperator::operator*=(const PauliOperator &other) {
    if (n() != other.n()) {
        throw std::invalid_argument("PauliOperator::multiply: size mismatch");
    }
    // Work in product form i^q X(x) Z(z); moving Z(z_a) past X(x_b) costs (-1)^{z_a·x_b}.
    size_t q = phase_ + y_count() + other.phase_ + other.y_count() + 2 * z_.overlap(other.x_);
    x_ ^= other.x_;
    z_ ^= other.z_;
    phase_ = static_cast<uint8_t>((q + 4 * n() - y_count()) & 3);
    return *this;
}

PauliOperator PauliOperator::padded(size_t new_n) const {
    return PauliOperator(x_.resized(new_n), z_.resized(new_n), phase_);
}

PauliOperator PauliOperator::restrict_to(std::span<const size_t> qubits) const {
    return PauliOperator(x_.restrict_to(qubits), z_.restrict_to(qubits), phase_);
}

GF2Vector PauliOperator::symplectic() const {
    size_t nq = n();
    GF2Vector out(2 * nq);
    for (size_t q : x_.support()) {
        out.set(q);
    }
    for (size_t q : z_.support()) {
        out.set(nq + q);
    }
    return out;
}

PauliOperator PauliOperator::from_symplectic(const GF2Vector &xz, uint8_t phase) {
    if (xz.len() % 2) {
        throw std::invalid_argument("PauliOperator::from_symplectic: odd length");
    }
    size_t nq = xz.len() / 2;
    PauliOperator p(nq);
    for (size_t i : xz.support()) {
        if (i < nq) {
            p.x_.set(i);
        } else {
            p.z_.set(i - nq);
        }
    }
    p.phase_ = phase & 3;
    return p;
}

std::string PauliOperator::str() const {
    static const char *prefixes[] = {"+", "i", "-", "-i"};
    std::string s = prefixes[phase_];
    for (size_t q = 0; q < n(); q++) {
        s.push_back(letter_char(letter(q)));
    }
    return s;
}

GF2Matrix symplectic_matrix(const std::vector<PauliOperator> &ops, size_t n) {
    GF2Matrix m(0, 2 * n);
    for (const auto &op : ops) {
        if (op.n() != n) {
            throw std::invalid_argument("symplectic_matrix: operator size mismatch");
        }
        m.append_row(op.symplectic());
    }
    return m;
}

LogicalPauliProduct LogicalPauliProduct::parse(std::string_view text) {
    LogicalPauliProduct p;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || !std::isdigit(static_cast<unsigned char>(tok[1]))) {
            throw std::invalid_argument("logical product term must look like X3: '" + tok + "'");
        }
        PauliLetter letter = letter_from_char(tok[0]);
        size_t idx = std::stoul(tok.substr(1));
        if (letter == PauliLetter::I) {
            continue;
        }
        if (!p.terms.emplace(idx, letter).second) {
            throw std::invalid_argument("logical index repeated in product: " + tok);
        }
    }
    if (p.terms.empty()) {
        throw std::invalid_argument("logical product has no terms");
    }
    return p;
}

std::string LogicalPauliProduct::str() const {
    std::string s;
    for (const auto &[idx, letter] : terms) {
        if (!s.empty()) {
            s.push_back(' ');
        }
        s.push_back(letter_char(letter));
        s += std::to_string(idx);
    }
    return s;
}

bool logically_disjoint(const std::vector<LogicalPauliProduct> &products) {
    std::map<size_t, size_t> owner;
    for (size_t i = 0; i < products.size(); i++) {
        for (const auto &[idx, letter] : products[i].terms) {
            if (!owner.emplace(idx, i).second) {
                return false;
            }
        }
    }
    return true;
}

bool same_or_identity_compatible(const std::vector<LogicalPauliProduct> &products) {
    std::map<size_t, PauliLetter> seen;
    for (const auto &p : products) {
        for (const auto &[idx, letter] : p.terms) {
            auto [it, fresh] = seen.emplace(idx, letter);
            if (!fresh && it->second != letter) {
                return false;
            }
        }
    }
    return true;
}

PauliOperator to_logical_operator(const LogicalPauliProduct &product, size_t k) {
    PauliOperator op(k);
    for (const auto &[idx, letter] : product.terms) {
        if (idx >= k) {
            throw std::out_of_range("logical index " + std::to_string(idx) + " out of range for k = " +
                                    std::to_string(k));
        }
        op.set_letter(idx, letter);
    }
    return op;
}

}  // namespace qsurgery
