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

#include "qsurgery/weight_search.h"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace qsurgery {

namespace {

/// All subsets of a fixed size, bucketed by syndrome hash.
struct HalfTable {
    size_t size = 0;
    std::vector<std::vector<uint32_t>> subsets;
    std::unordered_map<size_t, std::vector<uint32_t>> by_hash;
};

class Searcher {
   public:
    Searcher(const std::vector<SearchItem> &items) : items_(items) {
        if (!items.empty()) {
            syn_len_ = items[0].syndrome.len();
            eff_len_ = items[0].effect.len();
        }
        for (const auto &it : items) {
            if (it.syndrome.len() != syn_len_ || it.effect.len() != eff_len_) {
                throw std::invalid_argument("min_weight_logical: inconsistent item widths");
            }
        }
    }

    /// Calls f(subset, syndrome, effect) for every subset of `size` items with distinct
    /// locations.
    void enumerate(size_t size,
                   const std::function<bool(const std::vector<uint32_t> &, const GF2Vector &,
                                            const GF2Vector &)> &f) const {
        std::vector<uint32_t> chosen;
        GF2Vector syn(syn_len_), eff(eff_len_);
        bool stop = false;
        std::function<void(size_t)> rec = [&](size_t start) {
            if (stop) {
                return;
            }
            if (chosen.size() == size) {
                stop = f(chosen, syn, eff);
                return;
            }
            for (size_t i = start; i < items_.size() && !stop; i++) {
                bool clash = false;
                for (uint32_t c : chosen) {
                    if (items_[c].location == items_[i].location) {
                        clash = true;
                        break;
                    }
                }
                if (clash) {
                    continue;
                }
                chosen.push_back(static_cast<uint32_t>(i));
                syn ^= items_[i].syndrome;
                eff ^= items_[i].effect;
                rec(i + 1);
                syn ^= items_[i].syndrome;
                eff ^= items_[i].effect;
                chosen.pop_back();
            }
        };
        rec(0);
    }

    const HalfTable &table(size_t size) {
        auto it = tables_.find(size);
        if (it != tables_.end()) {
            return it->second;
        }
        HalfTable t;
        t.size = size;
        enumerate(size, [&](const std::vector<uint32_t> &s, const GF2Vector &syn, const GF2Vector &) {
            t.by_hash[syn.hash()].push_back(static_cast<uint32_t>(t.subsets.size()));
            t.subsets.push_back(s);
            return false;
        });
        return tables_.emplace(size, std::move(t)).first->second;
    }

    void combine(const std::vector<uint32_t> &s, GF2Vector &syn, GF2Vector &eff) const {
        for (uint32_t i : s) {
            syn ^= items_[i].syndrome;
            eff ^= items_[i].effect;
        }
    }

    bool disjoint_locations(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) const {
        for (uint32_t i : a) {
            for (uint32_t j : b) {
                if (items_[i].location == items_[j].location) {
                    return false;
                }
            }
        }
        return true;
    }

    size_t syn_len() const { return syn_len_; }
    size_t eff_len() const { return eff_len_; }

   private:
    const std::vector<SearchItem> &items_;
    size_t syn_len_ = 0;
    size_t eff_len_ = 0;
    std::unordered_map<size_t, HalfTable> tables_;
};

}  // namespace

WeightSearchResult min_weight_logical(const std::vector<SearchItem> &items, size_t cap) {
    WeightSearchResult res;
    res.cap = cap;
    if (items.empty()) {
        return res;
    }
    Searcher searcher(items);
    for (size_t w = 1; w <= cap; w++) {
        size_t small = w / 2;
        size_t big = w - small;
        const HalfTable &big_table = searcher.table(big);
        std::vector<uint32_t> found;
        auto probe = [&](const std::vector<uint32_t> &s, const GF2Vector &syn, const GF2Vector &eff) {
            auto bucket = big_table.by_hash.find(syn.hash());
            if (bucket == big_table.by_hash.end()) {
                return false;
            }
            for (uint32_t id : bucket->second) {
                const auto &other = big_table.subsets[id];
                GF2Vector tsyn = syn;
                GF2Vector teff = eff;
                searcher.combine(other, tsyn, teff);
                if (tsyn.any() || teff.none()) {
                    continue;
                }
                if (!searcher.disjoint_locations(s, other)) {
                    continue;
                }
                found = s;
                found.insert(found.end(), other.begin(), other.end());
                return true;
            }
            return false;
        };
        if (small == 0) {
            std::vector<uint32_t> empty;
            probe(empty, GF2Vector(searcher.syn_len()), GF2Vector(searcher.eff_len()));
        } else {
            searcher.enumerate(small, probe);
        }
        if (!found.empty()) {
            res.weight = w;
            res.witness.assign(found.begin(), found.end());
            std::sort(res.witness.begin(), res.witness.end());
            return res;
        }
    }
    return res;
}

}  // namespace qsurgery
