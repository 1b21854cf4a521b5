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

#ifndef QSURGERY_TESTS_TEST_UTIL_H
#define QSURGERY_TESTS_TEST_UTIL_H

#include <random>
#include <unordered_set>

#include "qsurgery/css_code.h"
#include "qsurgery/gf2.h"
#include "qsurgery/pauli.h"

namespace qsurgery {

inline GF2Vector random_vector(std::mt19937_64 &rng, size_t len, double density) {
    std::bernoulli_distribution bit(density);
    GF2Vector v(len);
    for (size_t i = 0; i < len; i++) {
        v.set(i, bit(rng));
    }
    return v;
}

inline GF2Matrix random_matrix(std::mt19937_64 &rng, size_t rows, size_t cols, double density) {
    GF2Matrix m(0, cols);
    for (size_t r = 0; r < rows; r++) {
        m.append_row(random_vector(rng, cols, density));
    }
    return m;
}

inline PauliOperator random_pauli(std::mt19937_64 &rng, size_t n) {
    PauliOperator p(random_vector(rng, n, 0.5), random_vector(rng, n, 0.5), rng() & 3);
    return p;
}

/// Brute-force minimum weight of a vector in ker(checks) outside rowspace(stabs).
inline std::optional<size_t> brute_css_distance(const GF2Matrix &checks, const GF2Matrix &stabs) {
    size_t n = checks.cols();
    RowSpace space(n);
    for (const auto &r : stabs.row_data()) {
        space.insert(r);
    }
    std::optional<size_t> best;
    for (uint64_t bits = 1; bits < (uint64_t{1} << n); bits++) {
        GF2Vector v(n);
        for (size_t i = 0; i < n; i++) {
            v.set(i, (bits >> i) & 1);
        }
        if (checks.apply(v).any() || space.contains(v)) {
            continue;
        }
        if (!best || v.weight() < *best) {
            best = v.weight();
        }
    }
    return best;
}

/// A random CSS code: hz random, hx drawn from ker(hz) rows.
inline CssCode random_css_code(std::mt19937_64 &rng, size_t n, size_t mz, size_t mx) {
    GF2Matrix hz = random_matrix(rng, mz, n, 0.35);
    GF2Matrix ker = kernel(hz);
    GF2Matrix hx(0, n);
    for (size_t i = 0; i < mx && ker.rows(); i++) {
        GF2Vector row(n);
        for (size_t r = 0; r < ker.rows(); r++) {
            if (rng() & 1) {
                row ^= ker.row(r);
            }
        }
        hx.append_row(row);
    }
    return CssCode(hx, hz);
}

}  // namespace qsurgery

#endif
