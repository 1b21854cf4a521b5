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

#ifndef QSURGERY_TESTS_DENSE_ORACLE_H
#define QSURGERY_TESTS_DENSE_ORACLE_H

#include <cmath>
#include <complex>
#include <vector>

#include "qsurgery/pauli.h"

namespace qsurgery {

// State vector over n ≤ 12 qubits; qubit q is bit q of the basis index.
class DenseState {
   public:
    using amp = std::complex<double>;

    explicit DenseState(size_t n) : n_(n), psi_(size_t{1} << n) { psi_[0] = 1; }

    std::vector<amp> apply(const PauliOperator &p) const {
        std::vector<amp> out(psi_.size());
        uint64_t x = mask(p.x()), z = mask(p.z());
        static const amp powers[4] = {1.0, amp(0, 1), -1.0, amp(0, -1)};
        size_t base = (p.phase() + p.y_count()) % 4;
        for (uint64_t b = 0; b < psi_.size(); b++) {
            size_t k = base + 2 * (__builtin_popcountll(z & b) % 2);
            out[b ^ x] += powers[k % 4] * psi_[b];
        }
        return out;
    }

    double expectation(const PauliOperator &p) const {
        auto v = apply(p);
        amp s = 0;
        for (size_t i = 0; i < psi_.size(); i++) {
            s += std::conj(psi_[i]) * v[i];
        }
        return s.real();
    }

    // Projects onto the `value` eigenspace and renormalizes.
    void project(const PauliOperator &p, int value) {
        auto v = apply(p);
        double norm = 0;
        for (size_t i = 0; i < psi_.size(); i++) {
            psi_[i] = 0.5 * (psi_[i] + double(value) * v[i]);
            norm += std::norm(psi_[i]);
        }
        for (auto &a : psi_) {
            a /= std::sqrt(norm);
        }
    }

    void h(size_t q) {
        const double r = 1 / std::sqrt(2.0);
        for (uint64_t b = 0; b < psi_.size(); b++) {
            if (!((b >> q) & 1)) {
                amp a0 = psi_[b], a1 = psi_[b | (uint64_t{1} << q)];
                psi_[b] = r * (a0 + a1);
                psi_[b | (uint64_t{1} << q)] = r * (a0 - a1);
            }
        }
    }

    void s(size_t q) {
        for (uint64_t b = 0; b < psi_.size(); b++) {
            if ((b >> q) & 1) {
                psi_[b] *= amp(0, 1);
            }
        }
    }

    void cx(size_t c, size_t t) {
        for (uint64_t b = 0; b < psi_.size(); b++) {
            if (((b >> c) & 1) && !((b >> t) & 1)) {
                std::swap(psi_[b], psi_[b | (uint64_t{1} << t)]);
            }
        }
    }

    // p|ψ⟩ == |ψ⟩
    bool stabilized_by(const PauliOperator &p) const {
        auto v = apply(p);
        for (size_t i = 0; i < psi_.size(); i++) {
            if (std::abs(v[i] - psi_[i]) > 1e-9) {
                return false;
            }
        }
        return true;
    }

   private:
    static uint64_t mask(const GF2Vector &v) {
        uint64_t m = 0;
        for (size_t q : v.support()) {
            m |= uint64_t{1} << q;
        }
        return m;
    }

    size_t n_;
    std::vector<amp> psi_;
};

}  // namespace qsurgery

#endif
