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

#ifndef QSURGERY_WEIGHT_SEARCH_H
#define QSURGERY_WEIGHT_SEARCH_H

#include <cstddef>
#include <optional>
#include <vector>

#include "qsurgery/gf2.h"

namespace qsurgery {

/// One elementary generator: a single-qubit Pauli when computing code distance, a single
/// fault when computing spacetime fault distance. Items sharing a `location` are never
/// combined in one candidate set.
struct SearchItem {
    size_t location = 0;
    GF2Vector syndrome;
    GF2Vector effect;
};

struct WeightSearchResult {
    /// Minimum weight when a logical set was found, nullopt when none exists up to `cap`.
    std::optional<size_t> weight;
    size_t cap = 0;
    /// Item indices of a minimum-weight witness.
    std::vector<size_t> witness;

    bool exceeds_cap() const { return !weight.has_value(); }
    /// True when the exhaustive search proved weight >= bound.
    bool at_least(size_t bound) const { return weight ? *weight >= bound : cap + 1 >= bound; }
};

/// Exhaustive meet-in-the-middle search for the smallest set of items with zero total
/// syndrome and nonzero total effect. Certified: either the returned weight is minimal
/// or no qualifying set of weight <= cap exists.
WeightSearchResult min_weight_logical(const std::vector<SearchItem> &items, size_t cap);

}  // namespace qsurgery

#endif
